#include <cstdint>
#include <iostream>

#include "eulerset/eulerset.hpp"

// Nested brackets for the density constant prod_p (1 - 1/(p(p-1))): each
// larger prime limit tightens the interval left by the previous one.
int main() {
    using namespace eulerset;
    for (std::uint64_t limit : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        const product_estimate est = artin_product(limit);
        std::cout << "P = " << est.prime_limit << " (" << est.terms_used << " primes): ["
                  << real_string(est.value_lo, 15) << ", " << real_string(est.value_hi, 15)
                  << "]  width " << real_string(est.width(), 3) << "\n";
    }
    return 0;
}
