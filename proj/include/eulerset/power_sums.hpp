#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "eulerset/errors.hpp"
#include "eulerset/factorization.hpp"
#include "eulerset/faulhaber.hpp"
#include "eulerset/numeric.hpp"

namespace eulerset {

// S(k,n) = sum of the k-th powers of the integers in [1, n-1] coprime to n.
enum class power_sum_method { bruteforce, closed, general };

inline const char* method_name(power_sum_method m) {
    switch (m) {
    case power_sum_method::bruteforce: return "bruteforce";
    case power_sum_method::closed: return "closed";
    case power_sum_method::general: return "general";
    }
    return "?";
}

struct power_sum_record {
    unsigned k = 0;
    integer n;
    integer value;
    power_sum_method method = power_sum_method::bruteforce;
};

inline constexpr std::uint64_t default_totative_budget = 10'000'000;
inline constexpr unsigned default_bernoulli_cap = 64;
inline constexpr std::uint64_t default_crosscheck_threshold = 5000;

// The Euler set of n, ascending. totatives(1) = {1} by the standard
// convention that 1 is coprime to 1.
inline std::vector<std::uint64_t> totatives(std::uint64_t n,
                                            std::uint64_t budget = default_totative_budget) {
    if (n == 0)
        throw domain_error("totatives: n must be >= 1");
    if (n > budget)
        throw resource_error("totatives: n = " + std::to_string(n) +
                             " exceeds enumeration budget " + std::to_string(budget));
    if (n == 1)
        return {1};
    std::vector<std::uint64_t> result;
    for (std::uint64_t a = 1; a < n; ++a)
        if (std::gcd(a, n) == 1)
            result.push_back(a);
    return result;
}

// Direct enumeration; the oracle every other method is judged against.
inline power_sum_record power_sum_bruteforce(unsigned k, std::uint64_t n,
                                             std::uint64_t budget = default_totative_budget) {
    integer sum = 0;
    for (std::uint64_t a : totatives(n, budget))
        sum += ipow(integer(a), k);
    return {k, integer(n), sum, power_sum_method::bruteforce};
}

// The closed forms for k <= 3:
//   S(0,n) = phi(n)
//   S(1,n) = 1/2 phi(n) n
//   S(2,n) = 1/3 phi(n) (n^2 + (-1)^w 1/2 R(n))
//   S(3,n) = 1/4 phi(n) (n^3 + (-1)^w R(n) n)
// All assume omega >= 1, hence n >= 2.
inline power_sum_record power_sum_closed(unsigned k, const prime_factorization& f) {
    const integer& n = f.n();
    if (n < 2)
        throw domain_error("closed form requires n >= 2");
    if (k > 3)
        throw domain_error("closed form covers k <= 3 only; use the general method");
    const integer phi = euler_phi(f);
    const integer rad = radical(f);
    const int sign = f.sign_omega();
    rational value;
    switch (k) {
    case 0: value = phi; break;
    case 1: value = rational(phi) * n / 2; break;
    case 2: value = rational(phi) * (rational(n * n) + rational(sign * rad) / 2) / 3; break;
    default: value = rational(phi) * (rational(n * n * n) + rational(sign * rad * n)) / 4; break;
    }
    return {k, n, to_integer(value, "power_sum_closed"), power_sum_method::closed};
}

inline power_sum_record power_sum_closed(unsigned k, std::uint64_t n) {
    if (n < 2)
        throw domain_error("closed form requires n >= 2");
    return power_sum_closed(k, factorize(n));
}

// Inclusion-exclusion over the squarefree divisors of R(n):
//   S(k,n) = sum_{d | R(n)} mu(d) d^k F_k(n/d).
// Cost 2^omega * poly(k), independent of the size of n.
inline power_sum_record power_sum_general(unsigned k, const prime_factorization& f,
                                          const bernoulli_table* table = nullptr,
                                          unsigned k_cap = default_bernoulli_cap) {
    if (f.n() < 2)
        throw domain_error("general method requires n >= 2");
    if (k > k_cap)
        throw resource_error("power_sum_general: k = " + std::to_string(k) +
                             " exceeds Bernoulli cap " + std::to_string(k_cap));
    std::optional<bernoulli_table> local;
    if (!table)
        local.emplace(bernoulli(k));
    const bernoulli_table& bt = table ? *table : *local;
    const faulhaber_polynomial fk = faulhaber(k, bt);
    rational sum = 0;
    for (const mobius_divisor& sd : squarefree_divisors(f))
        sum += rational(sd.mu) * ipow(sd.d, k) * fk.eval_rational(f.n() / sd.d);
    return {k, f.n(), to_integer(sum, "power_sum_general"), power_sum_method::general};
}

inline power_sum_record power_sum_general(unsigned k, std::uint64_t n) {
    if (n < 2)
        throw domain_error("general method requires n >= 2");
    return power_sum_general(k, factorize(n));
}

// Convenience dispatch: closed for k <= 3, general above, cross-checked
// against the brute-force oracle while n is small enough to enumerate.
inline power_sum_record power_sum(unsigned k, std::uint64_t n,
                                  std::uint64_t crosscheck = default_crosscheck_threshold) {
    power_sum_record rec =
        k <= 3 ? power_sum_closed(k, n) : power_sum_general(k, n);
    if (n <= crosscheck) {
        power_sum_record oracle = power_sum_bruteforce(k, n);
        if (oracle.value != rec.value)
            throw internal_error("power_sum mismatch at k=" + std::to_string(k) +
                                 " n=" + std::to_string(n) + ": " +
                                 std::string(method_name(rec.method)) + "=" +
                                 rec.value.str() + " bruteforce=" + oracle.value.str());
    }
    return rec;
}

// The exact c_1..c_k of S(k,n) = phi(n)/(k+1) (n^k + c_1 n^(k-1) + ... + c_k),
// collected symbolically from the inclusion-exclusion expansion:
//   c_i = C(k+1, i) B_i (n/phi(n)) prod_{p|n} (1 - p^(i-1)).
struct coefficient_vector {
    unsigned k = 0;
    integer n;
    std::vector<rational> c; // c[0] is c_1

    // phi(n)/(k+1) * (n^k + sum c_i n^(k-i)), which must equal S(k,n).
    integer reconstruct(const integer& phi) const {
        rational poly = ipow(n, k);
        for (unsigned i = 1; i <= k; ++i)
            poly += c[i - 1] * ipow(n, k - i);
        return to_integer(rational(phi) * poly / (k + 1), "coefficient_vector::reconstruct");
    }
};

inline coefficient_vector compute_coefficients(unsigned k, const prime_factorization& f,
                                               const bernoulli_table* table = nullptr,
                                               unsigned k_cap = default_bernoulli_cap) {
    if (k < 1)
        throw domain_error("compute_coefficients: k must be >= 1");
    if (f.n() < 2)
        throw domain_error("compute_coefficients: n must be >= 2");
    if (k > k_cap)
        throw resource_error("compute_coefficients: k = " + std::to_string(k) +
                             " exceeds Bernoulli cap " + std::to_string(k_cap));
    std::optional<bernoulli_table> local;
    if (!table)
        local.emplace(bernoulli(k));
    const bernoulli_table& bt = table ? *table : *local;
    const rational n_over_phi = rational(f.n()) / euler_phi(f);
    coefficient_vector cv{k, f.n(), {}};
    cv.c.reserve(k);
    for (unsigned i = 1; i <= k; ++i) {
        rational prod = 1;
        for (const prime_power& pp : f.factors())
            prod *= rational(1) - ipow(pp.p, i - 1);
        cv.c.push_back(rational(binomial(k + 1, i)) * bt.at(i) * n_over_phi * prod);
    }
    return cv;
}

inline coefficient_vector compute_coefficients(unsigned k, std::uint64_t n) {
    if (n < 2)
        throw domain_error("compute_coefficients: n must be >= 2");
    return compute_coefficients(k, factorize(n));
}

} // namespace eulerset
