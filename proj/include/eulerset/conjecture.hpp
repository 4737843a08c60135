#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eulerset/errors.hpp"
#include "eulerset/parallel.hpp"
#include "eulerset/power_sums.hpp"

namespace eulerset {

// Fixed ansatz for the conjectured coefficient dependence: c_i(n) as an
// exact linear combination of {1, (-1)^w, R(n), (-1)^w R(n)}.
inline constexpr std::array<const char*, 4> ansatz_basis_names = {
    "1", "(-1)^w", "R(n)", "(-1)^w*R(n)"};

inline std::array<rational, 4> ansatz_basis_values(const prime_factorization& f) {
    const integer rad = radical(f);
    const int sign = f.sign_omega();
    return {rational(1), rational(sign), rational(rad), rational(sign * rad)};
}

// Mixed omega parities with two distinct radicals per parity, the minimum
// for a full-rank 4-term system.
inline const std::vector<std::uint64_t> default_training_set = {6, 10, 30, 42};

enum class fit_verdict { exact_fit, counterexample };

struct fit_witness {
    integer n;
    rational fitted;
    rational actual;
};

struct ansatz_fit_result {
    unsigned k = 0;
    unsigned i = 0;
    std::array<rational, 4> weights{};
    fit_verdict verdict = fit_verdict::exact_fit;
    std::vector<fit_witness> witnesses; // ascending; empty iff exact_fit

    const fit_witness& witness() const { return witnesses.front(); } // smallest failing n
};

namespace detail {

// Exact Gaussian elimination on rows of (basis | c_i). Throws input_error
// when the basis directions are not pinned down (rank < 4) or when the
// training rows are mutually inconsistent.
inline std::array<rational, 4> solve_ansatz_system(std::vector<std::array<rational, 5>> rows) {
    const std::size_t m = rows.size();
    std::size_t pivot_row = 0;
    std::array<std::size_t, 4> pivot_of{};
    for (std::size_t col = 0; col < 4 && pivot_row < m; ++col) {
        std::size_t r = pivot_row;
        while (r < m && rows[r][col] == 0)
            ++r;
        if (r == m)
            continue;
        std::swap(rows[pivot_row], rows[r]);
        const rational inv = rows[pivot_row][col];
        for (std::size_t c = col; c < 5; ++c)
            rows[pivot_row][c] /= inv;
        for (std::size_t rr = 0; rr < m; ++rr) {
            if (rr == pivot_row || rows[rr][col] == 0)
                continue;
            const rational factor = rows[rr][col];
            for (std::size_t c = col; c < 5; ++c)
                rows[rr][c] -= factor * rows[pivot_row][c];
        }
        pivot_of[col] = pivot_row;
        ++pivot_row;
    }
    if (pivot_row < 4)
        throw input_error(
            "ansatz_fit: training system has rank " + std::to_string(pivot_row) +
            " of 4; supply n values covering both omega parities with two distinct "
            "radicals per parity");
    for (std::size_t r = pivot_row; r < m; ++r)
        if (rows[r][4] != 0)
            throw input_error("ansatz_fit: overdetermined training rows are inconsistent "
                              "with the 4-term basis");
    std::array<rational, 4> weights;
    for (std::size_t col = 0; col < 4; ++col)
        weights[col] = rows[pivot_of[col]][4];
    return weights;
}

} // namespace detail

// Solves the 4-term basis exactly on the training set, then validates the
// fitted relation on every validation n (training points are skipped). All
// failing n are reported, smallest first.
inline ansatz_fit_result ansatz_fit(unsigned k, unsigned i,
                                    std::vector<std::uint64_t> training,
                                    std::vector<std::uint64_t> validation) {
    if (k < 1)
        throw domain_error("ansatz_fit: k must be >= 1");
    if (i < 1 || i > k)
        throw domain_error("ansatz_fit: coefficient index i must be in [1, k]");
    std::sort(training.begin(), training.end());
    training.erase(std::unique(training.begin(), training.end()), training.end());
    if (training.size() < 4)
        throw input_error("ansatz_fit: need at least 4 training points for the 4-term basis");
    for (std::uint64_t n : training)
        if (n < 2)
            throw domain_error("ansatz_fit: training n must be >= 2");

    const bernoulli_table table = bernoulli(k);
    auto coefficient = [&](std::uint64_t n, const prime_factorization& f) {
        (void)n;
        return compute_coefficients(k, f, &table).c[i - 1];
    };

    std::vector<std::array<rational, 5>> rows;
    rows.reserve(training.size());
    for (std::uint64_t n : training) {
        const prime_factorization f = factorize(n);
        const std::array<rational, 4> basis = ansatz_basis_values(f);
        rows.push_back({basis[0], basis[1], basis[2], basis[3], coefficient(n, f)});
    }
    ansatz_fit_result result;
    result.k = k;
    result.i = i;
    result.weights = detail::solve_ansatz_system(std::move(rows));

    std::sort(validation.begin(), validation.end());
    validation.erase(std::unique(validation.begin(), validation.end()), validation.end());
    const std::set<std::uint64_t> train_set(training.begin(), training.end());

    std::vector<std::optional<fit_witness>> slots(validation.size());
    parallel_for(validation.size(), 1, [&](std::uint64_t idx) {
        const std::uint64_t n = validation[idx];
        if (n < 2 || train_set.count(n))
            return;
        const prime_factorization f = factorize(n);
        const std::array<rational, 4> basis = ansatz_basis_values(f);
        rational fitted = 0;
        for (std::size_t j = 0; j < 4; ++j)
            fitted += result.weights[j] * basis[j];
        const rational actual = coefficient(n, f);
        if (fitted != actual)
            slots[idx] = fit_witness{integer(n), fitted, actual};
    });
    for (std::optional<fit_witness>& w : slots)
        if (w)
            result.witnesses.push_back(std::move(*w));
    result.verdict =
        result.witnesses.empty() ? fit_verdict::exact_fit : fit_verdict::counterexample;
    return result;
}

// Exact ratios S(k,n) / (phi(n) n^k) with deviations from 1/(k+1).
struct ratio_entry {
    integer n;
    rational ratio;
    rational deviation;
};

struct ratio_report_result {
    unsigned k = 0;
    std::vector<ratio_entry> entries; // ascending by n
};

inline ratio_report_result ratio_report(unsigned k, std::vector<std::uint64_t> n_list,
                                        unsigned jobs = 1) {
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
    for (std::uint64_t n : n_list)
        if (n < 2)
            throw domain_error("ratio_report: n must be >= 2");
    ratio_report_result report;
    report.k = k;
    report.entries.resize(n_list.size());
    const rational limit_value(1, k + 1);
    parallel_for(n_list.size(), jobs, [&](std::uint64_t idx) {
        const std::uint64_t n = n_list[idx];
        const prime_factorization f = factorize(n);
        const power_sum_record rec =
            k <= 3 ? power_sum_closed(k, f) : power_sum_general(k, f);
        const rational ratio = rational(rec.value) / (euler_phi(f) * ipow(integer(n), k));
        report.entries[idx] = {integer(n), ratio, boost::multiprecision::abs(ratio - limit_value)};
    });
    return report;
}

// Cross-method regression sweep: for every (k, n) with k <= k_max and
// 2 <= n <= n_max, bruteforce, general and (k <= 3) closed must agree.
// One check per (k, n) cell.
struct method_disagreement {
    unsigned k = 0;
    std::uint64_t n = 0;
    integer bruteforce;
    std::optional<integer> closed; // absent for k > 3
    integer general;
};

struct verify_summary {
    unsigned k_max = 0;
    std::uint64_t n_max = 0;
    std::uint64_t checks = 0;
    std::vector<method_disagreement> mismatches; // sorted by (n, k)
};

inline verify_summary verify_range(unsigned k_max, std::uint64_t n_max, unsigned jobs = 1) {
    if (n_max < 2)
        throw domain_error("verify_range: n_max must be >= 2");
    verify_summary summary;
    summary.k_max = k_max;
    summary.n_max = n_max;
    summary.checks = std::uint64_t(k_max + 1) * (n_max - 1);

    const bernoulli_table table = bernoulli(k_max);
    std::vector<std::vector<method_disagreement>> slots(n_max - 1);
    parallel_for(n_max - 1, jobs, [&](std::uint64_t idx) {
        const std::uint64_t n = idx + 2;
        const prime_factorization f = factorize(n);
        for (unsigned k = 0; k <= k_max; ++k) {
            const integer brute = power_sum_bruteforce(k, n).value;
            const integer general = power_sum_general(k, f, &table).value;
            std::optional<integer> closed;
            if (k <= 3)
                closed = power_sum_closed(k, f).value;
            if (general != brute || (closed && *closed != brute))
                slots[idx].push_back({k, n, brute, closed, general});
        }
    });
    for (std::vector<method_disagreement>& per_n : slots)
        for (method_disagreement& m : per_n)
            summary.mismatches.push_back(std::move(m));
    return summary;
}

} // namespace eulerset
