#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eulerset/errors.hpp"
#include "eulerset/factorization.hpp"
#include "eulerset/numeric.hpp"
#include "eulerset/power_sums.hpp"
#include "eulerset/primes.hpp"

namespace eulerset {

enum class tail_bound_kind { artin_tail, zeta_tail };

inline const char* tail_bound_name(tail_bound_kind kind) {
    return kind == tail_bound_kind::artin_tail ? "artin_tail" : "zeta_tail";
}

// Two-sided enclosure of an infinite product over primes, derived from the
// finite prefix up to prime_limit plus a proven tail bound and a coarse
// rounding allowance.
struct product_estimate {
    std::uint64_t prime_limit = 0;
    std::uint64_t terms_used = 0;
    real50 value_lo;
    real50 value_hi;
    tail_bound_kind tail = tail_bound_kind::artin_tail;

    real50 width() const { return value_hi - value_lo; }
    bool contains(const real50& x) const { return value_lo <= x && x <= value_hi; }
};

namespace detail {

// Accumulated relative rounding slack: far above the true per-operation
// error of 50-digit floats, cheap to reason about.
inline real50 rounding_allowance(std::uint64_t terms) {
    return real50(terms) * real50("1e-24");
}

} // namespace detail

// Factor at p of the density constant: 1 - 1/(p(p-1)).
inline rational artin_term(std::uint64_t p) {
    if (p < 2 || !is_prime(p))
        throw domain_error("artin_term: " + std::to_string(p) + " is not prime");
    const integer pp = integer(p) * (integer(p) - 1);
    return rational(pp - 1, pp);
}

// Same factor recovered from the cubic power sum: with t = sqrt(S(3, p))
// the factor is 1 - 1/(2t), since 2t = p(p-1) at a prime. Agreement with
// artin_term is exact, not approximate.
inline rational artin_term_via_s3(std::uint64_t p) {
    if (p < 2 || !is_prime(p))
        throw domain_error("artin_term_via_s3: " + std::to_string(p) + " is not prime");
    const integer s3 = power_sum_closed(3, factorize(p)).value;
    integer t;
    if (!is_perfect_square(s3, t))
        throw internal_error(
            "artin_term_via_s3: cubic power sum at a prime must be a perfect square");
    return rational(2 * t - 1, 2 * t);
}

// prod_{p <= P} (1 - 1/(p(p-1))), bracketed. Every dropped factor lies in
// (0, 1), so the prefix overshoots; the tail product is at least
// exp(-2/P) because -log(1-x) <= 2x for x <= 1/2 and
// sum_{n > P} 1/(n(n-1)) telescopes to 1/P.
inline product_estimate artin_product(std::uint64_t prime_limit,
                                      std::uint64_t hard_cap = default_sieve_cap) {
    if (prime_limit < 2)
        throw domain_error("artin_product: prime limit must be >= 2");
    const std::vector<std::uint64_t> primes = sieve_primes(prime_limit, hard_cap);
    real50 partial = 1;
    for (std::uint64_t p : primes)
        partial *= real50(1) - real50(1) / (real50(p) * real50(p - 1));
    const real50 rho = detail::rounding_allowance(primes.size());
    product_estimate est;
    est.prime_limit = prime_limit;
    est.terms_used = primes.size();
    est.tail = tail_bound_kind::artin_tail;
    est.value_hi = partial * (real50(1) + rho);
    est.value_lo = partial * exp(real50(-2) / real50(prime_limit)) * (real50(1) - rho);
    return est;
}

// Outcome of inverting s3 = (p(p-1)/2)^2 back to p.
struct prime_reconstruction {
    integer s3;
    integer sqrt_s3; // p(p-1)/2
    integer p;
};

enum class s3_rejection { not_a_perfect_square, discriminant_not_square, not_prime };

inline const char* s3_rejection_name(s3_rejection reason) {
    switch (reason) {
    case s3_rejection::not_a_perfect_square:
        return "not_a_perfect_square";
    case s3_rejection::discriminant_not_square:
        return "discriminant_not_square";
    default:
        return "not_prime";
    }
}

// p = (1 + sqrt(1 + 8 sqrt(s3))) / 2, accepted only when both square roots
// are exact and the recovered value is prime. The discriminant is odd, so
// an exact root is odd and the division by 2 is always clean.
inline std::optional<prime_reconstruction> try_prime_from_s3(const integer& s3,
                                                             s3_rejection& reason) {
    if (s3 < 1)
        throw domain_error("prime_from_s3: value must be >= 1");
    integer t;
    if (!is_perfect_square(s3, t)) {
        reason = s3_rejection::not_a_perfect_square;
        return std::nullopt;
    }
    integer d;
    if (!is_perfect_square(1 + 8 * t, d)) {
        reason = s3_rejection::discriminant_not_square;
        return std::nullopt;
    }
    const integer p = (1 + d) / 2;
    if (p > integer(std::numeric_limits<std::uint64_t>::max()))
        throw resource_error("prime_from_s3: recovered candidate " + integer_string(p) +
                             " exceeds the 64-bit primality test range");
    if (!is_prime(static_cast<std::uint64_t>(p))) {
        reason = s3_rejection::not_prime;
        return std::nullopt;
    }
    return prime_reconstruction{s3, t, p};
}

inline prime_reconstruction prime_from_s3(const integer& s3) {
    s3_rejection reason = s3_rejection::not_a_perfect_square;
    if (std::optional<prime_reconstruction> rec = try_prime_from_s3(s3, reason))
        return *rec;
    switch (reason) {
    case s3_rejection::not_a_perfect_square:
        throw domain_error("prime_from_s3: " + integer_string(s3) +
                           " is not a perfect square");
    case s3_rejection::discriminant_not_square:
        throw domain_error("prime_from_s3: 1 + 8*sqrt(" + integer_string(s3) +
                           ") is not a perfect square");
    default:
        throw domain_error("prime_from_s3: value " + integer_string(s3) +
                           " leads to a composite, not a prime");
    }
}

inline const real50& min_zeta_exponent() {
    static const real50 value("1.001");
    return value;
}

namespace detail {

// Shared accumulation for both zeta entry points. The via_s3 path first
// round-trips each prime through its cubic power sum, then feeds the same
// p into the same expression, so both paths give bit-identical estimates.
inline product_estimate zeta_accumulate(const real50& s, std::uint64_t prime_limit,
                                        bool via_s3, std::uint64_t hard_cap) {
    if (s < min_zeta_exponent())
        throw domain_error("zeta_product: exponent must be >= 1.001");
    if (prime_limit < 2)
        throw domain_error("zeta_product: prime limit must be >= 2");
    const std::vector<std::uint64_t> primes = sieve_primes(prime_limit, hard_cap);
    real50 partial = 1;
    for (std::uint64_t p : primes) {
        if (via_s3) {
            const integer s3 = power_sum_closed(3, factorize(p)).value;
            const prime_reconstruction rec = prime_from_s3(s3);
            if (rec.p != p)
                throw internal_error(
                    "zeta_product: cubic power sum round trip failed at prime " +
                    std::to_string(p));
        }
        partial *= real50(1) / (real50(1) - pow(real50(p), -s));
    }
    const real50 rho = rounding_allowance(primes.size());
    const real50 big_p(prime_limit);
    // log of the dropped factors is at most sum_{p > P} (p^-s + p^-2s),
    // bounded by the integrals P^(1-s)/(s-1) + P^(1-2s)/(2s-1).
    const real50 tail = pow(big_p, real50(1) - s) / (s - real50(1)) +
                        pow(big_p, real50(1) - 2 * s) / (2 * s - real50(1));
    product_estimate est;
    est.prime_limit = prime_limit;
    est.terms_used = primes.size();
    est.tail = tail_bound_kind::zeta_tail;
    est.value_lo = partial * (real50(1) - rho);
    est.value_hi = partial * exp(tail) * (real50(1) + rho);
    return est;
}

} // namespace detail

inline product_estimate zeta_product(const real50& s, std::uint64_t prime_limit,
                                     std::uint64_t hard_cap = default_sieve_cap) {
    return detail::zeta_accumulate(s, prime_limit, false, hard_cap);
}

inline product_estimate zeta_product_via_s3(const real50& s, std::uint64_t prime_limit,
                                            std::uint64_t hard_cap = default_sieve_cap) {
    return detail::zeta_accumulate(s, prime_limit, true, hard_cap);
}

} // namespace eulerset
