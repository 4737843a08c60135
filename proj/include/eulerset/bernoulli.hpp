#pragma once

#include <vector>

#include "eulerset/errors.hpp"
#include "eulerset/numeric.hpp"

namespace eulerset {

// Bernoulli numbers under the B1 = +1/2 convention, so that Faulhaber sums
// run over 1..m inclusive.
class bernoulli_table {
public:
    explicit bernoulli_table(std::vector<rational> values) : values_(std::move(values)) {}

    unsigned max_index() const { return static_cast<unsigned>(values_.size()) - 1; }

    const rational& at(unsigned i) const {
        if (i >= values_.size())
            throw domain_error("bernoulli_table: index " + std::to_string(i) +
                               " beyond max " + std::to_string(max_index()));
        return values_[i];
    }

    const std::vector<rational>& values() const { return values_; }

private:
    std::vector<rational> values_;
};

// Generates B0..B_max by the minus-convention recurrence
//   sum_{j=0}^{m} C(m+1, j) * Bj = 0   (solved for B_m),
// then flips the sign of B1.
inline bernoulli_table bernoulli(unsigned max_index) {
    std::vector<rational> values(max_index + 1);
    values[0] = 1;
    for (unsigned m = 1; m <= max_index; ++m) {
        rational acc = 0;
        for (unsigned j = 0; j < m; ++j)
            acc += rational(binomial(m + 1, j)) * values[j];
        values[m] = -acc / (m + 1);
    }
    if (max_index >= 1)
        values[1] = -values[1];
    return bernoulli_table(std::move(values));
}

} // namespace eulerset
