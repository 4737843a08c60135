#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "eulerset/errors.hpp"
#include "eulerset/numeric.hpp"
#include "eulerset/primes.hpp"

namespace eulerset {

struct prime_power {
    integer p;
    unsigned e = 0;
};

// Subset cap for squarefree_divisors: at most 2^30 subsets.
inline constexpr unsigned max_distinct_primes = 30;

// n = p1^e1 * ... * pw^ew with the pi strictly increasing primes.
// n = 1 is the empty factor list.
class prime_factorization {
public:
    prime_factorization() : n_(1) {}

    // Builds from an explicit factor list. Every pi must be a prime that
    // fits in 64 bits (the primality check is deterministic Miller-Rabin);
    // the product n itself may be arbitrarily large.
    static prime_factorization from_factors(std::vector<prime_power> factors) {
        prime_factorization f;
        integer n = 1;
        const integer u64_max = integer(~0ull);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const prime_power& pp = factors[i];
            if (pp.e == 0)
                throw input_error("prime_factorization: exponent must be >= 1");
            if (pp.p > u64_max)
                throw resource_error(
                    "prime_factorization: primality check limited to factors < 2^64");
            if (!is_prime(static_cast<std::uint64_t>(pp.p)))
                throw input_error("prime_factorization: " + pp.p.str() + " is not prime");
            if (i > 0 && factors[i - 1].p >= pp.p)
                throw input_error("prime_factorization: primes must be strictly increasing");
            n *= ipow(pp.p, pp.e);
        }
        f.n_ = n;
        f.factors_ = std::move(factors);
        return f;
    }

    const integer& n() const { return n_; }
    const std::vector<prime_power>& factors() const { return factors_; }
    std::size_t omega() const { return factors_.size(); }
    int sign_omega() const { return factors_.size() % 2 == 0 ? 1 : -1; } // (-1)^w

    friend prime_factorization factorize(const integer& n);

private:
    integer n_;
    std::vector<prime_power> factors_;
};

namespace detail {

inline const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> primes = plain_sieve(65536);
    return primes;
}

} // namespace detail

// Trial division by sieved primes, with a Miller-Rabin shortcut once the
// remaining cofactor is prime. Arbitrary inputs are capped at 2^64 - 1;
// larger n enter only via from_factors.
inline prime_factorization factorize(const integer& n) {
    if (n <= 0)
        throw domain_error("factorize: n must be >= 1");
    if (n > integer(~0ull))
        throw resource_error("factorize: arbitrary inputs capped at 2^64 - 1; "
                             "use from_factors for larger n");

    prime_factorization f;
    f.n_ = n;
    std::uint64_t rem = static_cast<std::uint64_t>(n);

    auto push = [&f](std::uint64_t p, unsigned e) { f.factors_.push_back({integer(p), e}); };
    auto strip = [&rem, &push](std::uint64_t p) {
        unsigned e = 0;
        while (rem % p == 0) {
            rem /= p;
            ++e;
        }
        if (e > 0)
            push(p, e);
    };

    for (std::uint64_t p : detail::small_primes()) {
        if (p * p > rem)
            break;
        strip(p);
    }
    if (rem > 1 && !is_prime(rem)) {
        // Composite cofactor with no factor <= 65536: continue trial
        // division over segmented prime blocks.
        std::uint64_t lo = 65537;
        while (rem > 1 && !is_prime(rem)) {
            std::uint64_t root = static_cast<std::uint64_t>(isqrt(integer(rem)));
            std::uint64_t hi = std::min<std::uint64_t>(root, lo + (1u << 22) - 1);
            std::vector<std::uint64_t> block;
            detail::sieve_segment(lo, hi, detail::small_primes(), block);
            for (std::uint64_t p : block) {
                if (p * p > rem)
                    break;
                strip(p);
            }
            lo = hi + 1;
        }
    }
    if (rem > 1)
        push(rem, 1);
    return f;
}

inline prime_factorization factorize(std::uint64_t n) { return factorize(integer(n)); }

// phi(n) = n * prod (1 - 1/pi) = prod pi^(ei-1) * (pi - 1); phi(1) = 1.
inline integer euler_phi(const prime_factorization& f) {
    integer phi = 1;
    for (const prime_power& pp : f.factors())
        phi *= ipow(pp.p, pp.e - 1) * (pp.p - 1);
    return phi;
}

// R(n) = product of the distinct primes dividing n; R(1) = 1.
inline integer radical(const prime_factorization& f) {
    integer r = 1;
    for (const prime_power& pp : f.factors())
        r *= pp.p;
    return r;
}

inline std::size_t omega(const prime_factorization& f) { return f.omega(); }

struct mobius_divisor {
    integer d;
    int mu = 1; // (-1)^(number of primes in the subset)
};

// The 2^w squarefree divisors of R(n) with their Mobius values, ascending.
inline std::vector<mobius_divisor> squarefree_divisors(const prime_factorization& f,
                                                       unsigned cap = max_distinct_primes) {
    if (f.omega() > cap)
        throw resource_error("squarefree_divisors: omega = " + std::to_string(f.omega()) +
                             " exceeds cap " + std::to_string(cap));
    std::vector<mobius_divisor> divisors{{integer(1), 1}};
    divisors.reserve(std::size_t(1) << f.omega());
    for (const prime_power& pp : f.factors()) {
        std::size_t count = divisors.size();
        for (std::size_t i = 0; i < count; ++i)
            divisors.push_back({divisors[i].d * pp.p, -divisors[i].mu});
    }
    std::sort(divisors.begin(), divisors.end(),
              [](const mobius_divisor& a, const mobius_divisor& b) { return a.d < b.d; });
    return divisors;
}

} // namespace eulerset
