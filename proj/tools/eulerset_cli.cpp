#include <charconv>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "eulerset/eulerset.hpp"

namespace {

using namespace eulerset;

// In-band notices for formula variants that circulate with misprinted
// constants; attached whenever the affected computation runs.
const char* const cubic_note =
    "cubic identity note: sum_{j<=m} j^3 = m^4/4 + m^3/2 + m^2/4; the m^3 "
    "coefficient is 1/2, not 1/4 as sometimes quoted";
const char* const reconstruction_note =
    "prime reconstruction note: p = 1/2 + sqrt(1 + 8*sqrt(S(3,p)))/2; the "
    "constant under the inner root is 8, not 4 as sometimes quoted (with 4, "
    "even S(3,5) = 100 fails to invert)";

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw input_error("expected an unsigned integer, got: " + text);
    return value;
}

struct range_bounds {
    std::uint64_t from = 0;
    std::uint64_t to = 0;
};

// Inclusive "a..b"
range_bounds parse_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos)
        throw input_error("range must be written a..b, got: " + text);
    range_bounds r;
    r.from = parse_u64(text.substr(0, dots));
    r.to = parse_u64(text.substr(dots + 2));
    if (r.from > r.to)
        throw input_error("empty range: " + text);
    return r;
}

// Comma-separated values
std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        values.push_back(parse_u64(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return values;
}

std::vector<std::uint64_t> range_values(range_bounds r) {
    std::vector<std::uint64_t> values;
    values.reserve(r.to - r.from + 1);
    for (std::uint64_t n = r.from; n <= r.to; ++n)
        values.push_back(n);
    return values;
}

real50 parse_real(const std::string& text) {
    try {
        return real50(text);
    } catch (const std::exception&) {
        throw input_error("expected a decimal number, got: " + text);
    }
}

struct emitted {
    ordered_json parameters;
    ordered_json results;
    std::string csv;
    std::vector<std::string> warnings;
    int exit_code = 0;
};

emitted run_totatives(std::uint64_t n) {
    emitted out;
    out.parameters = {{"n", n}};
    const std::vector<std::uint64_t> values = totatives(n);
    ordered_json list = ordered_json::array();
    std::string csv = csv_line({"totative"});
    for (std::uint64_t a : values) {
        list.push_back(std::to_string(a));
        csv += csv_line({std::to_string(a)});
    }
    out.results = {{"phi", values.size()}, {"totatives", std::move(list)}};
    out.csv = std::move(csv);
    return out;
}

emitted run_sum(unsigned k, std::uint64_t n, const std::string& method) {
    emitted out;
    out.parameters = {{"k", k}, {"n", n}, {"method", method}};
    if (k == 3)
        out.warnings.push_back(cubic_note);
    std::vector<power_sum_record> records;
    if (method == "brute") {
        records.push_back(power_sum_bruteforce(k, n));
    } else if (method == "closed") {
        records.push_back(power_sum_closed(k, n));
    } else if (method == "general") {
        records.push_back(power_sum_general(k, n));
    } else {
        records.push_back(power_sum_bruteforce(k, n));
        if (k <= 3)
            records.push_back(power_sum_closed(k, n));
        records.push_back(power_sum_general(k, n));
        for (const power_sum_record& rec : records)
            if (rec.value != records.front().value)
                throw internal_error(
                    "method mismatch at k=" + std::to_string(k) + " n=" +
                    std::to_string(n) + ": " + method_name(rec.method) + "=" +
                    rec.value.str() + " vs bruteforce=" + records.front().value.str());
    }
    if (method == "all") {
        ordered_json values;
        for (const power_sum_record& rec : records)
            values[method_name(rec.method)] = integer_string(rec.value);
        out.results = std::move(values);
    } else {
        out.results = json_of(records.front());
    }
    std::string csv = csv_line({"method", "value"});
    for (const power_sum_record& rec : records)
        csv += csv_line({method_name(rec.method), integer_string(rec.value)});
    out.csv = std::move(csv);
    return out;
}

emitted run_coeffs(unsigned k, std::uint64_t n) {
    emitted out;
    out.parameters = {{"k", k}, {"n", n}};
    if (k == 3)
        out.warnings.push_back(cubic_note);
    const coefficient_vector cv = compute_coefficients(k, n);
    out.results = json_of(cv);
    std::string csv = csv_line({"i", "coefficient", "coefficient_approx_15sig"});
    for (unsigned i = 1; i <= k; ++i)
        csv += csv_line({std::to_string(i), rational_string(cv.c[i - 1]),
                         approx15(cv.c[i - 1])});
    out.csv = std::move(csv);
    return out;
}

emitted run_fit(unsigned k, unsigned i, const std::vector<std::uint64_t>& train,
                range_bounds validate) {
    emitted out;
    ordered_json train_json = ordered_json::array();
    for (std::uint64_t n : train)
        train_json.push_back(n);
    out.parameters = {{"k", k},
                      {"i", i},
                      {"train", std::move(train_json)},
                      {"validate", ordered_json{{"from", validate.from}, {"to", validate.to}}}};
    if (k == 3)
        out.warnings.push_back(cubic_note);
    const ansatz_fit_result fit = ansatz_fit(k, i, train, range_values(validate));
    out.results = json_of(fit);
    std::string csv = csv_line({"kind", "label", "exact", "approx_15sig"});
    csv += csv_line({"verdict", "", verdict_name(fit.verdict), ""});
    for (std::size_t j = 0; j < 4; ++j)
        csv += csv_line({"weight", ansatz_basis_names[j], rational_string(fit.weights[j]),
                         approx15(fit.weights[j])});
    for (const fit_witness& w : fit.witnesses) {
        csv += csv_line({"witness_fitted", integer_string(w.n), rational_string(w.fitted),
                         approx15(w.fitted)});
        csv += csv_line({"witness_actual", integer_string(w.n), rational_string(w.actual),
                         approx15(w.actual)});
    }
    out.csv = std::move(csv);
    return out;
}

emitted run_ratio(unsigned k, range_bounds nr, unsigned jobs) {
    emitted out;
    out.parameters = {{"k", k},
                      {"n", ordered_json{{"from", nr.from}, {"to", nr.to}}}};
    if (k == 3)
        out.warnings.push_back(cubic_note);
    const ratio_report_result report = ratio_report(k, range_values(nr), jobs);
    out.results = json_of(report);
    std::string csv = csv_line(
        {"n", "ratio", "ratio_approx_15sig", "deviation", "deviation_approx_15sig"});
    for (const ratio_entry& e : report.entries)
        csv += csv_line({integer_string(e.n), rational_string(e.ratio), approx15(e.ratio),
                         rational_string(e.deviation), approx15(e.deviation)});
    out.csv = std::move(csv);
    return out;
}

emitted run_verify(unsigned k_max, std::uint64_t n_max, unsigned jobs) {
    emitted out;
    out.parameters = {{"k_max", k_max}, {"n_max", n_max}};
    if (k_max >= 3)
        out.warnings.push_back(cubic_note);
    const verify_summary summary = verify_range(k_max, n_max, jobs);
    out.results = json_of(summary);
    std::string csv = csv_line({"field", "value"});
    csv += csv_line({"k_max", std::to_string(summary.k_max)});
    csv += csv_line({"n_max", std::to_string(summary.n_max)});
    csv += csv_line({"checks", std::to_string(summary.checks)});
    csv += csv_line({"mismatch_count", std::to_string(summary.mismatches.size())});
    for (const method_disagreement& m : summary.mismatches)
        csv += csv_line({"mismatch", "k=" + std::to_string(m.k) + ";n=" + std::to_string(m.n) +
                                         ";bruteforce=" + integer_string(m.bruteforce) +
                                         (m.closed ? ";closed=" + integer_string(*m.closed) : "") +
                                         ";general=" + integer_string(m.general)});
    out.csv = std::move(csv);
    if (!summary.mismatches.empty()) {
        const method_disagreement& m = summary.mismatches.front();
        std::cerr << "internal error: method mismatch at k=" << m.k << " n=" << m.n
                  << ": bruteforce=" << m.bruteforce.str()
                  << " general=" << m.general.str() << "\n";
        out.exit_code = 1;
    }
    return out;
}

std::string estimate_csv(const product_estimate& est) {
    std::string csv = csv_line({"field", "value"});
    csv += csv_line({"prime_limit", std::to_string(est.prime_limit)});
    csv += csv_line({"terms_used", std::to_string(est.terms_used)});
    csv += csv_line({"value_lo_25sig", bracket25(est.value_lo)});
    csv += csv_line({"value_hi_25sig", bracket25(est.value_hi)});
    csv += csv_line({"tail_bound_kind", tail_bound_name(est.tail)});
    return csv;
}

ordered_json estimate_results(const product_estimate& est) {
    return {{"estimate", json_of(est)}, {"precision", "25 significant digits"}};
}

emitted run_artin(std::uint64_t limit) {
    emitted out;
    out.parameters = {{"prime_limit", limit}};
    const product_estimate est = artin_product(limit);
    out.results = estimate_results(est);
    out.csv = estimate_csv(est);
    return out;
}

emitted run_zeta(const std::string& s_text, std::uint64_t limit, bool via_s3) {
    emitted out;
    out.parameters = {{"s", s_text}, {"prime_limit", limit}, {"via_s3", via_s3}};
    const real50 s = parse_real(s_text);
    const product_estimate est =
        via_s3 ? zeta_product_via_s3(s, limit) : zeta_product(s, limit);
    if (via_s3)
        out.warnings.push_back(reconstruction_note);
    out.results = estimate_results(est);
    out.csv = estimate_csv(est);
    return out;
}

emitted run_primes(std::uint64_t limit) {
    emitted out;
    out.parameters = {{"prime_limit", limit}};
    const std::vector<std::uint64_t> primes = sieve_primes(limit);
    ordered_json list = ordered_json::array();
    std::string csv = csv_line({"prime"});
    for (std::uint64_t p : primes) {
        list.push_back(std::to_string(p));
        csv += csv_line({std::to_string(p)});
    }
    out.results = {{"count", primes.size()}, {"primes", std::move(list)}};
    out.csv = std::move(csv);
    return out;
}

void emit(const std::string& command, const std::string& format,
          const std::string& out_path, const emitted& e) {
    std::string payload;
    if (format == "json") {
        payload = dump_envelope(make_envelope(command, e.parameters, e.results, e.warnings));
    } else {
        payload = e.csv;
        for (const std::string& w : e.warnings)
            std::cerr << "warning: " << w << "\n";
    }
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw resource_error("cannot open output file: " + out_path);
    file << payload;
    file.flush();
    if (!file)
        throw resource_error("failed writing output file: " + out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact power sums over totatives, ansatz fitting and bracketed prime products"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the output to this file instead of stdout");

    auto* cmd_totatives =
        app.add_subcommand("totatives", "list the integers in [1, n] coprime to n");
    std::uint64_t tot_n = 0;
    cmd_totatives->add_option("n", tot_n, "modulus")->required();
    cmd_totatives->fallthrough();

    auto* cmd_sum = app.add_subcommand("sum", "S(k, n), the k-th power sum of the totatives");
    unsigned sum_k = 0;
    std::uint64_t sum_n = 0;
    std::string sum_method = "all";
    cmd_sum->add_option("k", sum_k, "exponent")->required();
    cmd_sum->add_option("n", sum_n, "modulus")->required();
    cmd_sum->add_option("--method", sum_method, "evaluation method (default all)")
        ->check(CLI::IsMember({"brute", "closed", "general", "all"}));
    cmd_sum->fallthrough();

    auto* cmd_coeffs =
        app.add_subcommand("coeffs", "correction coefficients c_1..c_k of S(k, n)");
    unsigned coeffs_k = 0;
    std::uint64_t coeffs_n = 0;
    cmd_coeffs->add_option("k", coeffs_k, "exponent")->required();
    cmd_coeffs->add_option("n", coeffs_n, "modulus")->required();
    cmd_coeffs->fallthrough();

    auto* cmd_fit = app.add_subcommand(
        "fit", "fit c_i against the basis {1, (-1)^w, R(n), (-1)^w*R(n)} and validate");
    unsigned fit_k = 0;
    unsigned fit_i = 0;
    std::string fit_train = "6,10,30,42";
    std::string fit_validate;
    cmd_fit->add_option("k", fit_k, "exponent")->required();
    cmd_fit->add_option("i", fit_i, "coefficient index")->required();
    cmd_fit->add_option("--train", fit_train,
                        "comma-separated training n values (default 6,10,30,42)");
    cmd_fit->add_option("--validate", fit_validate, "validation range a..b")->required();
    cmd_fit->fallthrough();

    auto* cmd_ratio =
        app.add_subcommand("ratio", "S(k, n) / (phi(n) n^k) with deviation from 1/(k+1)");
    unsigned ratio_k = 0;
    std::string ratio_n;
    unsigned ratio_jobs = 1;
    cmd_ratio->add_option("k", ratio_k, "exponent")->required();
    cmd_ratio->add_option("--n", ratio_n, "range of n values, a..b")->required();
    cmd_ratio->add_option("--jobs", ratio_jobs, "worker threads (output is independent of this)");
    cmd_ratio->fallthrough();

    auto* cmd_verify = app.add_subcommand(
        "verify", "cross-check bruteforce, closed and general methods over a grid");
    unsigned verify_kmax = 0;
    std::uint64_t verify_nmax = 0;
    unsigned verify_jobs = 1;
    cmd_verify->add_option("--kmax", verify_kmax, "largest exponent")->required();
    cmd_verify->add_option("--nmax", verify_nmax, "largest modulus")->required();
    cmd_verify->add_option("--jobs", verify_jobs, "worker threads (output is independent of this)");
    cmd_verify->fallthrough();

    auto* cmd_artin = app.add_subcommand(
        "artin", "bracket the density constant prod_p (1 - 1/(p(p-1)))");
    std::uint64_t artin_limit = 0;
    cmd_artin->add_option("--limit", artin_limit, "include primes up to this bound")->required();
    cmd_artin->fallthrough();

    auto* cmd_zeta =
        app.add_subcommand("zeta", "bracket zeta(s) by its Euler product over primes");
    std::string zeta_s;
    std::uint64_t zeta_limit = 0;
    bool zeta_via_s3 = false;
    cmd_zeta->add_option("s", zeta_s, "real exponent, s >= 1.001")->required();
    cmd_zeta->add_option("--limit", zeta_limit, "include primes up to this bound")->required();
    cmd_zeta->add_flag("--via-s3", zeta_via_s3,
                       "round-trip each prime through its cubic power sum first");
    cmd_zeta->fallthrough();

    auto* cmd_primes = app.add_subcommand("primes", "list primes up to a bound");
    std::uint64_t primes_limit = 0;
    cmd_primes->add_option("--limit", primes_limit, "inclusive bound")->required();
    cmd_primes->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        return 2;
    }

    try {
        emitted out;
        std::string command;
        if (cmd_totatives->parsed()) {
            command = "totatives";
            out = run_totatives(tot_n);
        } else if (cmd_sum->parsed()) {
            command = "sum";
            out = run_sum(sum_k, sum_n, sum_method);
        } else if (cmd_coeffs->parsed()) {
            command = "coeffs";
            out = run_coeffs(coeffs_k, coeffs_n);
        } else if (cmd_fit->parsed()) {
            command = "fit";
            out = run_fit(fit_k, fit_i, parse_list(fit_train), parse_range(fit_validate));
        } else if (cmd_ratio->parsed()) {
            command = "ratio";
            out = run_ratio(ratio_k, parse_range(ratio_n), ratio_jobs);
        } else if (cmd_verify->parsed()) {
            command = "verify";
            out = run_verify(verify_kmax, verify_nmax, verify_jobs);
        } else if (cmd_artin->parsed()) {
            command = "artin";
            out = run_artin(artin_limit);
        } else if (cmd_zeta->parsed()) {
            command = "zeta";
            out = run_zeta(zeta_s, zeta_limit, zeta_via_s3);
        } else {
            command = "primes";
            out = run_primes(primes_limit);
        }
        emit(command, format, out_path, out);
        return out.exit_code;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
