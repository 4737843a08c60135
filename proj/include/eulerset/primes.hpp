#pragma once

#include <cstdint>
#include <vector>

#include "eulerset/errors.hpp"

namespace eulerset {

// Plain sieve up to this bound, segmented above it.
inline constexpr std::uint64_t plain_sieve_threshold = 10'000'000;

// Default hard cap on sieve_primes; callers may raise it explicitly.
inline constexpr std::uint64_t default_sieve_cap = 1'000'000'000;

namespace detail {

inline std::vector<std::uint64_t> plain_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

// Appends primes in [lo, hi] given base primes covering sqrt(hi).
inline void sieve_segment(std::uint64_t lo, std::uint64_t hi,
                          const std::vector<std::uint64_t>& base,
                          std::vector<std::uint64_t>& out) {
    std::vector<bool> composite(hi - lo + 1, false);
    for (std::uint64_t p : base) {
        if (p * p > hi)
            break;
        std::uint64_t start = ((lo + p - 1) / p) * p;
        if (start < p * p)
            start = p * p;
        for (std::uint64_t j = start; j <= hi; j += p)
            composite[j - lo] = true;
    }
    for (std::uint64_t i = lo; i <= hi; ++i)
        if (!composite[i - lo])
            out.push_back(i);
}

} // namespace detail

// All primes in [2, limit], strictly ascending.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit,
                                               std::uint64_t hard_cap = default_sieve_cap) {
    if (limit < 2)
        throw domain_error("sieve_primes: limit must be >= 2");
    if (limit > hard_cap)
        throw resource_error("sieve_primes: limit " + std::to_string(limit) +
                             " exceeds hard cap " + std::to_string(hard_cap));
    if (limit <= plain_sieve_threshold)
        return detail::plain_sieve(limit);

    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit)
        ++root;
    std::vector<std::uint64_t> base = detail::plain_sieve(root);
    std::vector<std::uint64_t> primes = base;
    constexpr std::uint64_t segment = 1u << 21;
    for (std::uint64_t lo = root + 1; lo <= limit; lo += segment) {
        std::uint64_t hi = std::min(limit, lo + segment - 1);
        detail::sieve_segment(lo, hi, base, primes);
    }
    return primes;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((__uint128_t)a * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

} // namespace detail

// Deterministic Miller-Rabin for 64-bit inputs; the 7-witness set below is
// known to be complete for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                            1795265022ull}) {
        std::uint64_t x = detail::powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

} // namespace eulerset
