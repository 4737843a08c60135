#include <cstdint>
#include <iomanip>
#include <iostream>

#include "eulerset/eulerset.hpp"

// S(k, n) for small n, plus the cubic ratio S(3,n)/(phi(n) n^3) whose
// distance from 1/4 is exactly R(n)/(4 n^2).
int main() {
    using namespace eulerset;
    std::cout << std::setw(4) << "n" << std::setw(6) << "phi" << std::setw(10) << "S(1,n)"
              << std::setw(12) << "S(2,n)" << std::setw(14) << "S(3,n)" << std::setw(16)
              << "S(4,n)" << "   S(3,n)/(phi n^3)\n";
    for (std::uint64_t n = 2; n <= 24; ++n) {
        const prime_factorization f = factorize(n);
        const integer phi = euler_phi(f);
        std::cout << std::setw(4) << n << std::setw(6) << phi;
        std::cout << std::setw(10) << power_sum_closed(1, f).value;
        std::cout << std::setw(12) << power_sum_closed(2, f).value;
        std::cout << std::setw(14) << power_sum_closed(3, f).value;
        std::cout << std::setw(16) << power_sum_general(4, f).value;
        const rational ratio =
            rational(power_sum_closed(3, f).value) / (phi * ipow(integer(n), 3));
        std::cout << "   " << rational_string(ratio) << "\n";
    }
    return 0;
}
