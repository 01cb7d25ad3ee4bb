// pamlab command line: experiment drivers over the exact PAM toolkit.
//
// Exit codes: 0 definite result, 2 unknown/undecided, anything else an error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pamlab/pamlab.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_unknown = 2;

struct Options {
    std::string pam_path;
    std::string x_text, y_text;
    std::string beta_text = "5/2";
    std::string variant = "greedy";
    std::string basis_text;
    std::string kmin_text, kmax_text;
    std::string out_path;
    std::string format = "text";
    std::size_t cap = 100000;
    std::size_t depth = 64;
    bool strict_hit = false;

    std::size_t steps = 20;
    std::size_t merge_cap = 100000;

    unsigned long nmax = 2059;
    int trunc_i = 4;

    unsigned long count = 1000;
    unsigned bins_level = 3;

    std::string generator = "multiples";
    std::string theta_text = "1/3";
    std::string left_text = "0/1";
    std::string right_text = "1/2";
    std::string schedule = "n";
    std::string p_text = "2";
};

pamlab::BetaVariant parse_variant(const std::string& v) {
    if (v == "nondet") return pamlab::BetaVariant::nondet;
    if (v == "greedy") return pamlab::BetaVariant::greedy;
    if (v == "lazy") return pamlab::BetaVariant::lazy;
    pamlab::fail(pamlab::errc::invalid_argument, "unknown variant '" + v + "'");
}

std::optional<pamlab::PrimeBasis> parse_basis(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<pamlab::Integer> primes;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) primes.emplace_back(tok);
    return pamlab::make_prime_basis(std::move(primes));
}

pamlab::ShiftSchedule parse_schedule(const std::string& text) {
    if (text == "n") return pamlab::ShiftSchedule::linear();
    if (text == "n-1") return pamlab::ShiftSchedule::n_minus_one();
    if (text.rfind("const:", 0) == 0)
        return pamlab::ShiftSchedule::constant(std::stoul(text.substr(6)));
    pamlab::fail(pamlab::errc::invalid_argument,
                 "schedule must be n, n-1 or const:<k>, got '" + text + "'");
}

void write_artifact(const std::string& path, const std::string& contents) {
    pamlab::write_file(path, contents);
    std::cout << "wrote " << path << "\n";
}

std::string verdict_line(const pamlab::ReachVerdict& v) {
    using pamlab::ReachOutcome;
    switch (v.outcome) {
        case ReachOutcome::reached:
            return "Reached(" + std::to_string(v.step) + ")";
        case ReachOutcome::unreachable_cycle: {
            const auto& c = v.certificate.verdict;
            return "UnreachableCycle(preperiod " + std::to_string(c.preperiod) + ", period " +
                   std::to_string(c.period) + ")";
        }
        case ReachOutcome::unreachable_weight:
            return "UnreachableWeight";
        case ReachOutcome::unknown:
            return v.unknown_reason == pamlab::UnknownReason::cap_below_bound
                       ? "Unknown(CapBelowBound)"
                       : "Unknown(CapExceeded)";
    }
    return "?";
}

int cmd_validate(const Options& opt) {
    std::ifstream in(opt.pam_path);
    if (!in) pamlab::fail(pamlab::errc::invalid_argument, "cannot open " + opt.pam_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    pamlab::json doc = pamlab::json::parse(buf.str());
    const pamlab::PamMap map = pamlab::read_pam_json(doc);
    const pamlab::ValidationReport rep = pamlab::validate(map);
    const pamlab::StructureReport sr = pamlab::structure_report(map);
    if (opt.format == "json") {
        pamlab::json j = pamlab::validation_to_json(rep);
        j["structure"] = pamlab::structure_to_json(sr);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (map.label.empty() ? opt.pam_path : map.label) << ": " << rep.str() << "\n";
        std::cout << "injective=" << sr.injective << " complete=" << sr.complete;
        if (sr.continuous_on_circle)
            std::cout << " continuous=" << *sr.continuous_on_circle;
        if (sr.degree) std::cout << " degree=" << sr.degree->str();
        std::cout << "\n";
    }
    return rep.ok() ? exit_ok : exit_error;
}

int cmd_orbit(const Options& opt) {
    const pamlab::PamMap map = pamlab::load_pam_file(opt.pam_path);
    const pamlab::Rational x = pamlab::parse_rational(opt.x_text);
    std::optional<pamlab::Rational> target;
    if (!opt.y_text.empty()) target = pamlab::parse_rational(opt.y_text);
    const pamlab::OrbitRecord rec =
        pamlab::iterate_orbit(map, x, opt.cap, target, opt.strict_hit);
    switch (rec.verdict.kind) {
        case pamlab::OrbitVerdict::Kind::hit:
            std::cout << "Hit(" << rec.verdict.hit_step << ")\n";
            break;
        case pamlab::OrbitVerdict::Kind::cycle:
            std::cout << "Cycle(preperiod " << rec.verdict.preperiod << ", period "
                      << rec.verdict.period << ")\n";
            break;
        case pamlab::OrbitVerdict::Kind::cap_exceeded:
            std::cout << "CapExceeded(" << opt.cap << ")\n";
            break;
    }
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        pamlab::write_orbit_csv(csv, rec);
        write_artifact(opt.out_path, csv.str());
    }
    return target && rec.capped() ? exit_unknown : exit_ok;
}

int cmd_reach(const Options& opt) {
    const pamlab::PamMap map = pamlab::load_pam_file(opt.pam_path);
    const pamlab::Rational x = pamlab::parse_rational(opt.x_text);
    const pamlab::Rational y = pamlab::parse_rational(opt.y_text);
    const auto basis = parse_basis(opt.basis_text);

    pamlab::ReachVerdict v;
    std::string decider;
    std::string note;
    const pamlab::PrimeBasis wb = basis ? *basis : pamlab::basis_for(std::vector{x, y});
    const pamlab::SignCheck sc = pamlab::coeff_matrix_and_signs(map, wb);
    if (sc.row_sign_ok) {
        decider = "weight";
        v = pamlab::decide_reach_weight(map, x, y, opt.cap, basis);
    } else if (!opt.kmin_text.empty() && !opt.kmax_text.empty()) {
        decider = "bounded";
        note = "conditional on the supplied density bounds";
        v = pamlab::decide_reach_bounded(map, pamlab::parse_rational(opt.kmin_text),
                                         pamlab::parse_rational(opt.kmax_text), x, y, opt.cap,
                                         basis);
    } else {
        decider = "simulate";
        note = "semi-decision only";
        v = pamlab::simulate_reach(map, x, y, opt.cap);
    }

    if (opt.format == "json") {
        pamlab::json j = pamlab::verdict_to_json(v);
        j["decider"] = decider;
        if (!note.empty()) j["note"] = note;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << verdict_line(v) << "\n";
        std::cout << "decider=" << decider << (note.empty() ? "" : " (" + note + ")") << "\n";
    }
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        pamlab::write_orbit_csv(csv, v.certificate);
        write_artifact(opt.out_path, csv.str());
    }
    return v.definite() ? exit_ok : exit_unknown;
}

int cmd_beta_build(const Options& opt) {
    const pamlab::PamMap map =
        pamlab::build_beta_pam(pamlab::parse_rational(opt.beta_text), parse_variant(opt.variant));
    const std::string doc = pamlab::print_pam(map);
    if (opt.out_path.empty())
        std::cout << doc;
    else
        write_artifact(opt.out_path, doc);
    return exit_ok;
}

int cmd_beta_digits(const Options& opt) {
    const pamlab::Rational beta = pamlab::parse_rational(opt.beta_text);
    const pamlab::DigitExpansion ex = pamlab::digit_stream(
        pamlab::make_beta_system(beta), parse_variant(opt.variant),
        pamlab::parse_rational(opt.x_text), opt.depth);
    std::cout << "digits:";
    for (int d : ex.seq.digits) std::cout << " " << d;
    std::cout << "\n";
    if (ex.seq.periodic_suffix)
        std::cout << "periodic from " << ex.seq.periodic_suffix->first << " with period "
                  << ex.seq.periodic_suffix->second << "\n";
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        pamlab::write_digits_csv(csv, ex);
        write_artifact(opt.out_path, csv.str());
    }
    return exit_ok;
}

int cmd_tds(const Options& opt) {
    const pamlab::Rational beta = pamlab::parse_rational(opt.beta_text);
    const pamlab::Rational x = pamlab::parse_rational(opt.x_text);
    const pamlab::Tds01Result res = pamlab::tds01_decide(beta, x, opt.depth);
    switch (res.kind) {
        case pamlab::Tds01Result::Kind::yes: {
            std::cout << "Yes\nwitness digits:";
            for (int d : res.witness->digits) std::cout << " " << d;
            std::cout << "\n";
            if (res.witness->periodic_suffix) {
                std::cout << "periodic from " << res.witness->periodic_suffix->first
                          << " with period " << res.witness->periodic_suffix->second
                          << "; witness value " << pamlab::format_rational(
                                 pamlab::periodic_value(*res.witness, beta))
                          << "\n";
            }
            return exit_ok;
        }
        case pamlab::Tds01Result::Kind::no:
            std::cout << "No\ngreedy digit " << *res.refute_digit << " at step "
                      << *res.refute_step << " rules every 0-1 expansion out\n";
            return exit_ok;
        case pamlab::Tds01Result::Kind::unknown:
            std::cout << "Unknown at depth " << res.depth_used << "\n";
            return exit_unknown;
    }
    return exit_error;
}

int cmd_density(const Options& opt) {
    const pamlab::PamMap map = pamlab::load_pam_file(opt.pam_path);
    const pamlab::TransferRun run =
        pamlab::iterate_transfer(map, pamlab::uniform_density(map.domain), opt.steps,
                                 opt.merge_cap);
    std::cout << "steps=" << run.steps_done << (run.stopped_early ? " (merge cap hit)" : "")
              << "\n";
    std::cout << "l1:";
    for (const pamlab::Rational& d : run.l1_steps) std::cout << " " << pamlab::to_double(d);
    std::cout << "\n";
    const pamlab::DensityExtrema ex = pamlab::density_extrema(run.density);
    std::cout << "kmin=" << pamlab::format_rational(ex.min)
              << " kmax=" << pamlab::format_rational(ex.max)
              << " mass=" << pamlab::format_rational(run.density.mass()) << "\n";
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        pamlab::write_density_csv(csv, run.density);
        write_artifact(opt.out_path, csv.str());
    }
    return exit_ok;
}

int cmd_theorem5(const Options& opt) {
    const std::vector<pamlab::ScanRow> rows = pamlab::theorem5_scan(opt.nmax, opt.trunc_i);
    std::size_t passed = 0;
    for (const pamlab::ScanRow& r : rows) passed += r.passes;
    std::cout << passed << "/" << rows.size() << " values below 1/2\n";
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        pamlab::write_scan_csv(csv, rows);
        write_artifact(opt.out_path, csv.str());
    }
    return exit_ok;
}

int cmd_mahler(const Options& opt) {
    std::vector<pamlab::Rational> values;
    values.reserve(opt.count);
    for (unsigned long n = 1; n <= opt.count; ++n)
        values.push_back(pamlab::mahler_fraction(n, opt.count));
    std::vector<pamlab::Interval> bins;
    const unsigned long nb = 1ul << opt.bins_level;
    for (unsigned long j = 0; j < nb; ++j)
        bins.push_back({pamlab::Rational(j, nb), pamlab::Rational(j + 1, nb)});
    const pamlab::EmpiricalDistribution hist = pamlab::empirical_histogram(values, bins);
    std::cout << "n=" << opt.count << " discrepancy(level " << opt.bins_level
              << ")=" << pamlab::to_double(pamlab::dyadic_star_discrepancy(values, opt.bins_level))
              << "\n";
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        pamlab::write_mahler_csv(csv, values);
        write_artifact(opt.out_path, csv.str());
        std::ostringstream hcsv;
        pamlab::write_histogram_csv(hcsv, hist);
        write_artifact(opt.out_path + ".hist.csv", hcsv.str());
    }
    return exit_ok;
}

int cmd_hitfreq(const Options& opt) {
    pamlab::SequenceGen gen;
    if (opt.generator == "multiples") {
        gen = pamlab::multiples_generator(pamlab::parse_rational(opt.theta_text));
    } else if (opt.generator == "mahler") {
        gen = pamlab::mahler_generator();
    } else if (opt.generator == "orbit") {
        gen = pamlab::orbit_generator(pamlab::load_pam_file(opt.pam_path),
                                      pamlab::parse_rational(opt.x_text));
    } else {
        pamlab::fail(pamlab::errc::invalid_argument,
                     "generator must be multiples, mahler or orbit");
    }
    const pamlab::DynamicInterval di = pamlab::make_dynamic_interval(
        {pamlab::parse_rational(opt.left_text), pamlab::parse_rational(opt.right_text)},
        pamlab::Integer(opt.p_text), parse_schedule(opt.schedule));
    std::vector<pamlab::HitRow> rows;
    const pamlab::HitReport rep =
        pamlab::dynamic_hit_frequency(gen, di, opt.count, opt.out_path.empty() ? nullptr : &rows);
    std::cout << "F_dynamic=" << rep.f_dynamic << " F_static_on_shifted="
              << rep.f_static_on_shifted << " equal=" << rep.equal << "\n";
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        pamlab::write_hitreport_csv(csv, rows);
        write_artifact(opt.out_path, csv.str());
    }
    return rep.equal ? exit_ok : exit_error;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact experiments with one-dimensional piecewise affine maps"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "write the CSV/JSON artifact here");
        cmd->add_option("--format", opt.format, "stdout format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "check a PAM document");
    validate->add_option("--pam", opt.pam_path, "PAM JSON file")->required();
    add_common(validate);

    CLI::App* orbit = app.add_subcommand("orbit", "iterate an exact orbit");
    orbit->add_option("--pam", opt.pam_path)->required();
    orbit->add_option("--x", opt.x_text, "start point p/q")->required();
    orbit->add_option("--y", opt.y_text, "optional target p/q");
    orbit->add_option("--cap", opt.cap, "max applications of the map");
    orbit->add_flag("--strict-hit", opt.strict_hit, "require at least one step for a hit");
    add_common(orbit);

    CLI::App* reach = app.add_subcommand("reach", "decide whether y is reachable from x");
    reach->add_option("--pam", opt.pam_path)->required();
    reach->add_option("--x", opt.x_text)->required();
    reach->add_option("--y", opt.y_text)->required();
    reach->add_option("--cap", opt.cap);
    reach->add_option("--basis", opt.basis_text, "prime basis override p1,p2,...");
    reach->add_option("--kmin", opt.kmin_text, "invariant density lower bound");
    reach->add_option("--kmax", opt.kmax_text, "invariant density upper bound");
    add_common(reach);

    CLI::App* bbuild = app.add_subcommand("beta-build", "emit a beta-expansion PAM");
    bbuild->add_option("--beta", opt.beta_text)->required();
    bbuild->add_option("--variant", opt.variant)->check(CLI::IsMember({"nondet", "greedy", "lazy"}));
    add_common(bbuild);

    CLI::App* bdigits = app.add_subcommand("beta-digits", "expand x in base beta");
    bdigits->add_option("--beta", opt.beta_text)->required();
    bdigits->add_option("--variant", opt.variant)->check(CLI::IsMember({"greedy", "lazy"}));
    bdigits->add_option("--x", opt.x_text)->required();
    bdigits->add_option("--depth", opt.depth);
    add_common(bdigits);

    CLI::App* tds = app.add_subcommand("tds", "target discounted-sum 0-1 decision");
    tds->add_option("--beta", opt.beta_text)->required();
    tds->add_option("--x", opt.x_text)->required();
    tds->add_option("--depth", opt.depth);
    add_common(tds);

    CLI::App* density = app.add_subcommand("density", "iterate the transfer operator");
    density->add_option("--pam", opt.pam_path)->required();
    density->add_option("--steps", opt.steps);
    density->add_option("--merge-cap", opt.merge_cap);
    add_common(density);

    CLI::App* th5 = app.add_subcommand("theorem5", "scan {2^n n alpha} against 1/2");
    th5->add_option("--nmax", opt.nmax);
    th5->add_option("--i", opt.trunc_i, "truncation depth of alpha (1..4)");
    add_common(th5);

    CLI::App* mahler = app.add_subcommand("mahler", "the {(3/2)^n} sequence");
    mahler->add_option("--n", opt.count)->required();
    mahler->add_option("--bins-level", opt.bins_level, "histogram over 2^level dyadic bins");
    add_common(mahler);

    CLI::App* hitfreq = app.add_subcommand("hitfreq", "dynamic-interval hitting counters");
    hitfreq->add_option("--generator", opt.generator, "multiples | mahler | orbit");
    hitfreq->add_option("--theta", opt.theta_text, "theta for the multiples generator");
    hitfreq->add_option("--pam", opt.pam_path, "map for the orbit generator");
    hitfreq->add_option("--x", opt.x_text, "start point for the orbit generator");
    hitfreq->add_option("--left", opt.left_text, "base interval left endpoint");
    hitfreq->add_option("--right", opt.right_text, "base interval right endpoint");
    hitfreq->add_option("--p", opt.p_text, "shift base");
    hitfreq->add_option("--schedule", opt.schedule, "n | n-1 | const:<k>");
    hitfreq->add_option("--n", opt.count);
    add_common(hitfreq);

    try {
        app.parse(argc, argv);
        if (validate->parsed()) return cmd_validate(opt);
        if (orbit->parsed()) return cmd_orbit(opt);
        if (reach->parsed()) return cmd_reach(opt);
        if (bbuild->parsed()) return cmd_beta_build(opt);
        if (bdigits->parsed()) return cmd_beta_digits(opt);
        if (tds->parsed()) return cmd_tds(opt);
        if (density->parsed()) return cmd_density(opt);
        if (th5->parsed()) return cmd_theorem5(opt);
        if (mahler->parsed()) return cmd_mahler(opt);
        if (hitfreq->parsed()) return cmd_hitfreq(opt);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == exit_unknown ? exit_error : rc;
    } catch (const pamlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
