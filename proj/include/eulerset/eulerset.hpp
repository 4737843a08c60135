#pragma once

#include "eulerset/errors.hpp"
#include "eulerset/numeric.hpp"
#include "eulerset/primes.hpp"
#include "eulerset/factorization.hpp"
#include "eulerset/bernoulli.hpp"
#include "eulerset/faulhaber.hpp"
#include "eulerset/power_sums.hpp"
#include "eulerset/parallel.hpp"
#include "eulerset/conjecture.hpp"
#include "eulerset/products.hpp"
#include "eulerset/serialize.hpp"
