#pragma once

#include <stdexcept>
#include <string>

namespace eulerset {

// Argument outside an operation's mathematical domain (e.g. factorize(0),
// closed form at n = 1, composite p where a prime is required).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or unusable caller input that is not a domain violation
// (unparsable ranges, rank-deficient training systems, ...).
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A configured budget or cap was exceeded (sieve hard cap, totative
// enumeration budget, 2^omega subset cap, Bernoulli index cap).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// An identity that must hold by theorem failed at runtime. Always a bug;
// the message carries the witness.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace eulerset
