#pragma once

#include <vector>

#include "eulerset/bernoulli.hpp"
#include "eulerset/errors.hpp"
#include "eulerset/numeric.hpp"

namespace eulerset {

// F_k(m) = sum_{j=1}^{m} j^k as a degree-(k+1) polynomial in m.
// coeffs holds the k+2 coefficients, highest degree first; the leading
// coefficient is 1/(k+1) and the constant term is 0.
class faulhaber_polynomial {
public:
    faulhaber_polynomial(unsigned k, std::vector<rational> coeffs)
        : k_(k), coeffs_(std::move(coeffs)) {}

    unsigned k() const { return k_; }
    const std::vector<rational>& coeffs() const { return coeffs_; }

    rational eval_rational(const integer& m) const {
        rational acc = 0;
        for (const rational& c : coeffs_)
            acc = acc * m + c;
        return acc;
    }

    // F_k(m) is an integer for every integer m >= 0.
    integer eval(const integer& m) const {
        return to_integer(eval_rational(m), "faulhaber_polynomial::eval");
    }

private:
    unsigned k_;
    std::vector<rational> coeffs_;
};

// Coefficient of m^(k+1-i) is C(k+1, i) * B_i / (k+1), i = 0..k.
inline faulhaber_polynomial faulhaber(unsigned k, const bernoulli_table& table) {
    if (table.max_index() < k)
        throw domain_error("faulhaber: Bernoulli table covers only index " +
                           std::to_string(table.max_index()));
    std::vector<rational> coeffs(k + 2);
    for (unsigned i = 0; i <= k; ++i)
        coeffs[i] = rational(binomial(k + 1, i)) * table.at(i) / (k + 1);
    coeffs[k + 1] = 0;
    return faulhaber_polynomial(k, std::move(coeffs));
}

inline faulhaber_polynomial faulhaber(unsigned k) { return faulhaber(k, bernoulli(k)); }

} // namespace eulerset
