#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eulerset/conjecture.hpp"
#include "eulerset/numeric.hpp"
#include "eulerset/power_sums.hpp"
#include "eulerset/products.hpp"

namespace eulerset {

using ordered_json = nlohmann::ordered_json;

// Exact values travel as strings: integers in decimal, rationals "num/den".
// Counts and indices stay plain JSON integers. Decimal approximations are
// always labeled with their significant-digit count.

inline std::string approx15(const rational& q) { return real_string(to_real(q), 15); }
inline std::string bracket25(const real50& v) { return real_string(v, 25); }

inline const char* verdict_name(fit_verdict v) {
    return v == fit_verdict::exact_fit ? "exact_fit" : "counterexample";
}

inline ordered_json json_of(const power_sum_record& rec) {
    return {{"method", method_name(rec.method)}, {"value", integer_string(rec.value)}};
}

inline ordered_json json_of(const coefficient_vector& cv) {
    ordered_json c = ordered_json::array();
    for (const rational& ci : cv.c)
        c.push_back(rational_string(ci));
    return {{"k", cv.k}, {"n", integer_string(cv.n)}, {"coefficients", std::move(c)}};
}

inline ordered_json json_of(const fit_witness& w) {
    return {{"n", integer_string(w.n)},
            {"fitted", rational_string(w.fitted)},
            {"actual", rational_string(w.actual)}};
}

inline ordered_json json_of(const ansatz_fit_result& fit) {
    ordered_json basis = ordered_json::array();
    for (const char* name : ansatz_basis_names)
        basis.push_back(name);
    ordered_json weights = ordered_json::array();
    for (const rational& w : fit.weights)
        weights.push_back(rational_string(w));
    ordered_json witnesses = ordered_json::array();
    for (const fit_witness& w : fit.witnesses)
        witnesses.push_back(json_of(w));
    return {{"k", fit.k},
            {"i", fit.i},
            {"basis", std::move(basis)},
            {"weights", std::move(weights)},
            {"verdict", verdict_name(fit.verdict)},
            {"witness_count", fit.witnesses.size()},
            {"witnesses", std::move(witnesses)}};
}

inline ordered_json json_of(const ratio_entry& e) {
    return {{"n", integer_string(e.n)},
            {"ratio", rational_string(e.ratio)},
            {"deviation", rational_string(e.deviation)}};
}

inline ordered_json json_of(const ratio_report_result& report) {
    ordered_json entries = ordered_json::array();
    for (const ratio_entry& e : report.entries)
        entries.push_back(json_of(e));
    return {{"k", report.k},
            {"target", rational_string(rational(1, report.k + 1))},
            {"entries", std::move(entries)}};
}

inline ordered_json json_of(const method_disagreement& m) {
    ordered_json j;
    j["k"] = m.k;
    j["n"] = std::to_string(m.n);
    j["bruteforce"] = integer_string(m.bruteforce);
    if (m.closed)
        j["closed"] = integer_string(*m.closed);
    j["general"] = integer_string(m.general);
    return j;
}

inline ordered_json json_of(const verify_summary& s) {
    ordered_json mismatches = ordered_json::array();
    for (const method_disagreement& m : s.mismatches)
        mismatches.push_back(json_of(m));
    return {{"k_max", s.k_max},
            {"n_max", s.n_max},
            {"checks", s.checks},
            {"mismatch_count", s.mismatches.size()},
            {"mismatches", std::move(mismatches)}};
}

inline ordered_json json_of(const product_estimate& est) {
    return {{"prime_limit", est.prime_limit},
            {"terms_used", est.terms_used},
            {"value_lo", bracket25(est.value_lo)},
            {"value_hi", bracket25(est.value_hi)},
            {"tail_bound_kind", tail_bound_name(est.tail)}};
}

inline ordered_json json_of(const prime_reconstruction& rec) {
    return {{"s3", integer_string(rec.s3)},
            {"sqrt_s3", integer_string(rec.sqrt_s3)},
            {"p", integer_string(rec.p)}};
}

inline ordered_json make_envelope(const std::string& command, ordered_json parameters,
                                  ordered_json results,
                                  const std::vector<std::string>& warnings) {
    ordered_json w = ordered_json::array();
    for (const std::string& s : warnings)
        w.push_back(s);
    return {{"command", command},
            {"parameters", std::move(parameters)},
            {"results", std::move(results)},
            {"warnings", std::move(w)}};
}

inline std::string dump_envelope(const ordered_json& envelope) {
    return envelope.dump(2) + "\n";
}

// Cells emitted here never carry commas, quotes or newlines; enforced so
// the format stays trivially parseable.
inline std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].find_first_of(",\"\n") != std::string::npos)
            throw internal_error("csv_line: cell would need quoting: " + cells[i]);
        if (i)
            line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

} // namespace eulerset
