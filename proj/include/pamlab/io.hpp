#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pamlab/beta.hpp"
#include "pamlab/pam.hpp"
#include "pamlab/reach.hpp"
#include "pamlab/seqlab.hpp"
#include "pamlab/transfer.hpp"

namespace pamlab {

using json = nlohmann::json;

// --- PAM documents ---------------------------------------------------------------
//
// {
//   "label": "doubling",
//   "domain": ["0/1", "1/1"],
//   "deterministic": true,
//   "pieces": [
//     {"interval": ["0/1", "1/2"], "a": "2/1", "b": "0/1"},
//     {"interval": ["1/2", "1/1"], "a": "2/1", "b": "-1/1"}
//   ]
// }
//
// All numbers are exact "p/q" strings.

namespace detail {

inline Rational rational_field(const json& j, const std::string& where) {
    if (!j.is_string())
        fail(errc::syntax_error, where + ": rationals must be \"p/q\" strings");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(errc::syntax_error, where + ": " + e.what());
    }
}

inline Interval interval_field(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        fail(errc::syntax_error, where + ": intervals are two-element arrays");
    Interval iv{rational_field(j[0], where + "[0]"), rational_field(j[1], where + "[1]")};
    if (!iv.valid())
        fail(errc::syntax_error, where + ": left endpoint must be below the right one");
    return iv;
}

} // namespace detail

/// Parses a PAM document without validating the map semantics.
inline PamMap read_pam_json(const json& doc) {
    if (!doc.is_object()) fail(errc::syntax_error, "top level must be an object");
    if (!doc.contains("domain") || !doc.contains("pieces"))
        fail(errc::syntax_error, "missing \"domain\" or \"pieces\"");
    PamMap map;
    map.domain = detail::interval_field(doc["domain"], "domain");
    map.deterministic = doc.value("deterministic", true);
    map.label = doc.value("label", std::string{});
    if (!doc["pieces"].is_array() || doc["pieces"].empty())
        fail(errc::syntax_error, "\"pieces\" must be a non-empty array");
    std::size_t i = 0;
    for (const json& pj : doc["pieces"]) {
        const std::string where = "pieces[" + std::to_string(i++) + "]";
        if (!pj.is_object() || !pj.contains("interval") || !pj.contains("a") || !pj.contains("b"))
            fail(errc::syntax_error, where + ": need \"interval\", \"a\", \"b\"");
        map.pieces.push_back({detail::interval_field(pj["interval"], where + ".interval"),
                              detail::rational_field(pj["a"], where + ".a"),
                              detail::rational_field(pj["b"], where + ".b")});
    }
    return map;
}

/// Parses and validates; a map that fails validation is rejected with the
/// full violation report in the message.
inline PamMap parse_pam_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(errc::syntax_error, e.what());
    }
    PamMap map = read_pam_json(doc);
    const ValidationReport rep = validate(map);
    if (!rep.ok()) fail(errc::validation_failed, rep.str());
    return map;
}

inline PamMap load_pam_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::invalid_argument, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pam_file(buf.str());
}

inline json pam_to_json(const PamMap& map) {
    json doc;
    if (!map.label.empty()) doc["label"] = map.label;
    doc["domain"] = {format_rational(map.domain.left), format_rational(map.domain.right)};
    doc["deterministic"] = map.deterministic;
    doc["pieces"] = json::array();
    for (const AffinePiece& p : map.pieces)
        doc["pieces"].push_back(
            {{"interval", {format_rational(p.domain.left), format_rational(p.domain.right)}},
             {"a", format_rational(p.a)},
             {"b", format_rational(p.b)}});
    return doc;
}

inline std::string print_pam(const PamMap& map) { return pam_to_json(map).dump(2) + "\n"; }

// --- verdicts as JSON --------------------------------------------------------------

inline json verdict_to_json(const ReachVerdict& v) {
    json j;
    j["outcome"] = outcome_name(v.outcome);
    if (v.outcome == ReachOutcome::reached) j["step"] = v.step;
    if (v.outcome == ReachOutcome::unknown)
        j["reason"] = v.unknown_reason == UnknownReason::cap_below_bound ? "CapBelowBound"
                                                                         : "CapExceeded";
    if (v.certificate.cycle()) {
        j["cycle"] = {{"preperiod", v.certificate.verdict.preperiod},
                      {"period", v.certificate.verdict.period}};
    }
    if (v.stop_weight) j["stop_weight"] = *v.stop_weight;
    if (v.threshold) j["threshold"] = *v.threshold;
    j["orbit_points"] = v.certificate.points.size();
    return j;
}

inline json validation_to_json(const ValidationReport& rep) {
    json j;
    j["valid"] = rep.ok();
    j["violations"] = json::array();
    for (const Violation& v : rep.violations)
        j["violations"].push_back({{"kind", violation_name(v.kind)}, {"detail", v.detail}});
    return j;
}

inline json structure_to_json(const StructureReport& rep) {
    json j;
    j["injective"] = rep.injective;
    j["complete"] = rep.complete;
    j["continuous_on_circle"] =
        rep.continuous_on_circle ? json(*rep.continuous_on_circle) : json("n/a");
    j["degree"] = rep.degree ? json(rep.degree->str()) : json("n/a");
    j["slopes"] = json::array();
    for (const Rational& a : rep.slopes) j["slopes"].push_back(format_rational(a));
    return j;
}

// --- CSV artifacts -------------------------------------------------------------------
//
// Exact "p/q" cells are authoritative; decimal columns are for plotting only.

inline void write_orbit_csv(std::ostream& os, const OrbitRecord& rec) {
    os << "index,point,point_decimal,piece\n";
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        os << i << "," << format_rational(rec.points[i]) << "," << to_double(rec.points[i]) << ",";
        if (i < rec.piece_trace.size()) os << rec.piece_trace[i];
        os << "\n";
    }
}

inline void write_digits_csv(std::ostream& os, const DigitExpansion& ex) {
    os << "index,digit,point\n";
    for (std::size_t i = 0; i < ex.seq.digits.size(); ++i)
        os << i << "," << ex.seq.digits[i] << "," << format_rational(ex.orbit[i]) << "\n";
}

inline void write_density_csv(std::ostream& os, const StepDensity& phi) {
    os << "breakpoint,breakpoint_decimal,value,value_decimal\n";
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        os << format_rational(phi.breakpoints[i]) << "," << to_double(phi.breakpoints[i]) << ","
           << format_rational(phi.values[i]) << "," << to_double(phi.values[i]) << "\n";
    os << format_rational(phi.breakpoints.back()) << "," << to_double(phi.breakpoints.back())
       << ",,\n";
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "n,value,value_decimal,passes\n";
    for (const ScanRow& r : rows)
        os << r.n << "," << format_rational(r.value) << "," << to_double(r.value) << ","
           << (r.passes ? 1 : 0) << "\n";
}

inline void write_histogram_csv(std::ostream& os, const EmpiricalDistribution& d) {
    os << "bin_left,bin_right,count,frequency,frequency_decimal\n";
    for (std::size_t i = 0; i < d.bins.size(); ++i) {
        const Rational f = d.frequency(i);
        os << format_rational(d.bins[i].left) << "," << format_rational(d.bins[i].right) << ","
           << d.counts[i] << "," << format_rational(f) << "," << to_double(f) << "\n";
    }
}

inline void write_hitreport_csv(std::ostream& os, const std::vector<HitRow>& rows) {
    os << "i,x,x_decimal,k,in_dynamic,in_static\n";
    for (const HitRow& r : rows)
        os << r.i << "," << format_rational(r.x) << "," << to_double(r.x) << "," << r.k << ","
           << (r.in_dynamic ? 1 : 0) << "," << (r.in_static ? 1 : 0) << "\n";
}

inline void write_mahler_csv(std::ostream& os, const std::vector<Rational>& values) {
    os << "n,value,value_decimal\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << i + 1 << "," << format_rational(values[i]) << "," << to_double(values[i]) << "\n";
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) fail(errc::invalid_argument, "cannot write " + path);
    out << contents;
}

} // namespace pamlab
