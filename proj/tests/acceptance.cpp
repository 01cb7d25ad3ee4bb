// Acceptance suite: one self-contained check per shipped guarantee, one
// pass/fail line each, nonzero exit when anything fails. Timed criteria
// enforce their budgets.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "test_support.hpp"

using namespace pamlab;
using testsupport::Rng;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds; // 0 = untimed
    std::function<bool(std::string&)> run;
};

bool expect(bool cond, std::string& log, const std::string& what) {
    if (!cond && log.empty()) log = what;
    return cond;
}

// 1. weight algebra on 1e4 random pairs over three bases, under 10 s
bool c1_weight_algebra(std::string& log) {
    Rng rng(1001);
    const std::vector<PrimeBasis> bases{make_prime_basis({2}), make_prime_basis({2, 3}),
                                        make_prime_basis({2, 3, 5})};
    bool ok = true;
    for (int trial = 0; trial < 10000; ++trial) {
        const Rational x = rng.rational(5040);
        const Rational y = rng.rational(5040);
        const long r = rng.pick(1, 4);
        for (const PrimeBasis& basis : bases) {
            for (const Integer& p : basis.primes) {
                const Weight wx = padic_weight(x, p);
                const Weight wy = padic_weight(y, p);
                ok &= expect(padic_weight(x * y, p) == wx + wy, log, "product rule failed");
                if (wx == wy && x + y != 0)
                    ok &= expect(padic_weight(x + y, p) <= wx, log, "equal-weight sum rule failed");
                if (wx < wy)
                    ok &= expect(padic_weight(x + y, p) == wy, log, "dominant sum rule failed");
                ok &= expect(padic_weight(rational_pow(x, r), p) == r * wx, log,
                             "power rule failed");
            }
        }
        if (!ok) break;
    }
    return ok;
}

// 2. enumeration of bounded-weight rationals equals an independent scan
bool c2_enumeration(std::string& log) {
    const PrimeBasis basis = make_prime_basis({2, 3});
    for (const Weight a : {1, 2, 3}) {
        const std::vector<Rational> got = enumerate_bounded_weight(a, basis);
        // independent scan: reduce j / 6^(a-1) by hand and factor the
        // denominator over {2, 3} directly
        std::set<Rational> expected;
        long q = 1;
        for (Weight i = 1; i < a; ++i) q *= 6;
        for (long j = 0; j <= q; ++j) {
            long n = j, d = q;
            const long g = std::gcd(n, d);
            n /= g;
            d /= g;
            long e2 = 0, e3 = 0;
            while (d % 2 == 0) { d /= 2; ++e2; }
            while (d % 3 == 0) { d /= 3; ++e3; }
            if (d == 1 && e2 < a && e3 < a) expected.insert(Rational(j, q));
        }
        if (std::set<Rational>(got.begin(), got.end()) != expected) {
            log = "mismatch at a = " + std::to_string(a);
            return false;
        }
    }
    return true;
}

// 3. row-sign decider verdicts are each independently confirmed
bool c3_decider_soundness(std::string& log) {
    Rng rng(1003);
    const PamMap map = testsupport::threehalves_map();
    int reached = 0, cycles = 0, weights = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Rational x = rng.small_weight_unit();
        Rational y;
        if (trial % 4 == 0) { // plant a reachable target
            const OrbitRecord probe = iterate_orbit(map, x, 25);
            y = probe.points[static_cast<std::size_t>(
                rng.pick(0, static_cast<long>(probe.points.size()) - 1))];
        } else {
            y = rng.small_weight_unit();
        }
        const ReachVerdict v = decide_reach_weight(map, x, y, 1000000);
        switch (v.outcome) {
            case ReachOutcome::reached: {
                ++reached;
                if (!expect(replay_orbit(map, v.certificate), log, "certificate replay failed"))
                    return false;
                if (!expect(v.certificate.points.size() == v.step + 1 &&
                                v.certificate.points.back() == y,
                            log, "certificate does not end at the target"))
                    return false;
                break;
            }
            case ReachOutcome::unreachable_cycle: {
                ++cycles;
                const std::vector<Rational> cyc = v.certificate.cycle_points();
                bool contains = false;
                for (const Rational& c : cyc) contains = contains || c == y;
                if (!expect(!cyc.empty() && !contains, log, "cycle certificate contains the target"))
                    return false;
                break;
            }
            case ReachOutcome::unreachable_weight: {
                ++weights;
                // oracle: a plain 1e4-step simulation never meets y
                Rational cur = x;
                for (int i = 0; i < 10000; ++i) {
                    cur = det_step(map, cur).value;
                    if (cur == y) {
                        log = "simulation reached a point declared unreachable";
                        return false;
                    }
                }
                break;
            }
            case ReachOutcome::unknown:
                log = "decider returned unknown";
                return false;
        }
    }
    std::ostringstream os;
    os << "reached " << reached << ", cycles " << cycles << ", weight stops " << weights;
    log = os.str();
    return reached > 0 && weights > 0;
}

// 4. transfer operator: exact mass conservation and the two fixed desk cases
bool c4_transfer(std::string& log) {
    Rng rng(1004);
    for (int trial = 0; trial < 100; ++trial) {
        const PamMap map = testsupport::random_complete_map(rng);
        const StepDensity phi = testsupport::random_probability_density(rng, map.domain);
        if (!expect(transfer_once(map, phi).mass() == phi.mass(), log,
                    "mass not conserved exactly"))
            return false;
    }
    const PamMap doubling = testsupport::doubling_map();
    const StepDensity uni = uniform_density(doubling.domain);
    if (!expect(same_density(transfer_once(doubling, uni), uni), log,
                "uniform density is not fixed by doubling"))
        return false;
    const PamMap greedy = build_beta_pam(Rational(5, 2), BetaVariant::greedy);
    const StepDensity out = transfer_once(greedy, uniform_density(greedy.domain));
    return expect(out.breakpoints == std::vector<Rational>{0, 1, {4, 3}} &&
                      out.values == std::vector<Rational>{{9, 10}, {3, 10}},
                  log, "greedy 5/2 image of the uniform density is off");
}

// 5. digit systems: interval lemma, conjugacy on 1e3 samples, partial sums
bool c5_beta_structure(std::string& log) {
    Rng rng(1005);
    for (const Rational& beta : {Rational(5, 2), Rational(7, 3), Rational(9, 4)}) {
        const BetaSystem s = make_beta_system(beta);
        for (int d = 0; d + 1 <= s.top_digit; ++d)
            if (!expect(overlaps(s.branch_intervals[d], s.branch_intervals[d + 1]), log,
                        "neighbouring branches must overlap"))
                return false;
        for (int d = 0; d + 2 <= s.top_digit; ++d)
            if (!expect(!overlaps(s.branch_intervals[d], s.branch_intervals[d + 2]), log,
                        "distance-2 branches must be disjoint"))
                return false;

        std::vector<Rational> samples;
        for (int i = 0; i < 1000; ++i) samples.push_back(rng.interior(0, s.vmax));
        if (!expect(check_greedy_lazy_conjugacy(beta, samples), log,
                    "greedy/lazy conjugacy failed"))
            return false;

        for (int i = 0; i < 20; ++i) {
            const Rational x = rng.interior(0, s.vmax);
            const DigitExpansion ex = digit_stream(s, BetaVariant::greedy, x, 40);
            for (std::size_t n = 1; n <= ex.seq.digits.size(); ++n) {
                Rational err = x - partial_value(ex.seq, beta, n).sum;
                if (err < 0) err = -err;
                if (!expect(err < s.vmax / rational_pow(beta, (long)n), log,
                            "partial sum left the stated bracket"))
                    return false;
            }
        }
    }
    return true;
}

// 6. the three 0-1 expansion desk cases, re-verified from their certificates
bool c6_tds(std::string& log) {
    const Rational beta(5, 2);

    const Tds01Result yes = tds01_decide(beta, Rational(2, 3), 64);
    if (!expect(yes.kind == Tds01Result::Kind::yes && yes.witness.has_value(), log,
                "2/3 must be representable"))
        return false;
    for (int d : yes.witness->digits)
        if (!expect(d <= 1, log, "witness uses a digit above 1")) return false;
    if (!expect(yes.witness->periodic_suffix && periodic_value(*yes.witness, beta) == Rational(2, 3),
                log, "witness does not evaluate back to 2/3"))
        return false;

    const Tds01Result no = tds01_decide(beta, Rational(1), 64);
    if (!expect(no.kind == Tds01Result::Kind::no, log, "1 must not be representable")) return false;
    const DigitExpansion greedy1 =
        digit_stream(make_beta_system(beta), BetaVariant::greedy, Rational(1), 8);
    if (!expect(greedy1.seq.digits[*no.refute_step] == *no.refute_digit && *no.refute_digit >= 2,
                log, "refutation digit does not match the greedy stream"))
        return false;

    const Tds01Result zero = tds01_decide(beta, Rational(0), 64);
    return expect(zero.kind == Tds01Result::Kind::yes &&
                      periodic_value(*zero.witness, beta) == 0,
                  log, "0 must be representable by the all-zero expansion");
}

// 7. the full exact scan at the deepest storable truncation, under 60 s
bool c7_scan(std::string& log) {
    const std::vector<ScanRow> rows = theorem5_scan(2059, 4);
    if (!expect(rows.size() == 2060, log, "scan must cover n = 0..2059")) return false;
    for (const ScanRow& r : rows)
        if (!r.passes) {
            log = "fractional part reached 1/2 at n = " + std::to_string(r.n);
            return false;
        }
    return true;
}

// 8. both hitting counters agree across generators, schedules and 1e3 steps
bool c8_hit_counters(std::string& log) {
    const std::vector<std::pair<std::string, SequenceGen>> gens{
        {"multiples of 1281/2048", multiples_generator(Rational(1281, 2048))},
        {"powers of 3/2", mahler_generator()},
        {"orbit of the 3/2-map", orbit_generator(testsupport::threehalves_map(), Rational(1, 2))}};
    const std::vector<std::pair<std::string, ShiftSchedule>> schedules{
        {"constant 2", ShiftSchedule::constant(2)},
        {"n-1", ShiftSchedule::n_minus_one()},
        {"n", ShiftSchedule::linear()}};
    for (const auto& [gname, gen] : gens)
        for (const auto& [sname, sched] : schedules) {
            const DynamicInterval di =
                make_dynamic_interval({Rational(0), Rational(1, 2)}, 2, sched);
            const HitReport rep = dynamic_hit_frequency(gen, di, 1000);
            if (!rep.equal) {
                log = "counter mismatch for " + gname + " with schedule " + sname;
                return false;
            }
        }
    return true;
}

// 9. Mahler fractions to n = 5000: two routes agree, the congruence holds,
// and the histogram artifact is written
bool c9_mahler(std::string& log) {
    std::vector<Rational> values;
    values.reserve(5000);
    for (unsigned long n = 1; n <= 5000; ++n) {
        const Rational f = mahler_fraction(n, 5000);
        const Integer q = Integer(1) << n;
        if (!expect(numerator(f) * (q / denominator(f)) == int_pow(3, n) % q, log,
                    "congruence 2^n {(3/2)^n} = 3^n (mod 2^n) failed"))
            return false;
        if (!expect(f == frac_part(rational_pow(Rational(3, 2), (long)n)), log,
                    "modular and expanded routes disagree"))
            return false;
        values.push_back(f);
    }
    std::vector<Interval> bins;
    for (long j = 0; j < 8; ++j) bins.push_back({Rational(j, 8), Rational(j + 1, 8)});
    const EmpiricalDistribution hist = empirical_histogram(values, bins);
    std::ostringstream csv;
    write_histogram_csv(csv, hist);
    const std::string path = "mahler_hist.csv";
    write_file(path, csv.str());
    std::ifstream back(path);
    if (!expect(back.good(), log, "histogram artifact missing")) return false;
    std::size_t total = 0;
    for (std::size_t c : hist.counts) total += c;
    log = "histogram written to " + path;
    return expect(total == 5000, log, "histogram lost points");
}

// 10. density-bound machinery: rotation answers 50 queries against brute
// force with the constant bound, and the balanced pair reproduces h + 3
bool c10_bounded_decider(std::string& log) {
    Rng rng(1010);
    const PamMap rot = testsupport::rotation_half();
    for (int trial = 0; trial < 50; ++trial) {
        const Rational x(rng.pick(0, 15), 16);
        const Rational y(rng.pick(0, 15), 16);
        const WeightBoundReport rep =
            weight_bound_from_density(rot, Rational(1), Rational(1), x, y);
        if (!expect(rep.m1 == rep.h, log, "rotation must get the constant bound m1 = h"))
            return false;
        const ReachVerdict v = decide_reach_bounded(rot, Rational(1), Rational(1), x, y, 100000);
        const ReachVerdict brute = simulate_reach(rot, x, y, 10);
        const bool brute_reached = brute.outcome == ReachOutcome::reached;
        if (v.outcome == ReachOutcome::reached) {
            if (!expect(brute_reached && brute.step == v.step, log,
                        "bounded decider disagrees with brute force"))
                return false;
        } else {
            if (!expect(!brute_reached && v.definite(), log,
                        "bounded decider missed a brute-force hit"))
                return false;
        }
    }

    const WeightBoundReport rep =
        weight_bound_from_density(testsupport::injective_mixed_map(), Rational(1, 2), Rational(2),
                                  Rational(1, 2), Rational(5, 8));
    for (const PrimeBoundEntry& e : rep.per_prime) {
        if (e.p != 2) continue;
        if (!expect(e.kind == PrimeBoundEntry::Case::balanced && e.r_bound == 3 &&
                        e.bound == rep.h + 3,
                    log, "the balanced 3/2, 2/3 pair must give h + 3 at ratio 4"))
            return false;
    }
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"01 weight algebra (1e4 random pairs, 3 bases)", 10.0, c1_weight_algebra},
        {"02 bounded-weight enumeration equals brute force", 0.0, c2_enumeration},
        {"03 row-sign decider soundness (100 queries)", 30.0, c3_decider_soundness},
        {"04 transfer exactness (100 random pairs + desk cases)", 0.0, c4_transfer},
        {"05 digit-system structure for beta in {5/2, 7/3, 9/4}", 0.0, c5_beta_structure},
        {"06 0-1 expansion desk cases with certificate replay", 0.0, c6_tds},
        {"07 exact scan of {2^n n alpha} for n <= 2059", 60.0, c7_scan},
        {"08 hitting counters agree (3 generators x 3 schedules x 1e3)", 0.0, c8_hit_counters},
        {"09 Mahler fractions to 5000 with histogram artifact", 0.0, c9_mahler},
        {"10 density-bound machinery (rotation + balanced pair)", 0.0, c10_bounded_decider},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string log;
        bool ok = false;
        try {
            ok = c.run(log);
        } catch (const std::exception& e) {
            log = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds) {
            ok = false;
            log = "over budget (" + std::to_string(c.budget_seconds) + " s)";
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.name << "  (" << std::fixed
                  << std::setprecision(2) << secs << " s" << (log.empty() ? "" : "; " + log)
                  << ")\n";
        failures += !ok;
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
