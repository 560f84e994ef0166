#pragma once

#include <stdexcept>
#include <string>

namespace dynmix {

// A mathematical hypothesis required by an operation does not hold
// (non-unique peak, empty spectral gap, non-hyperbolic instance, ...).
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

// A spectral question (equality of root moduli, dominance) could not be
// decided at the working certification tolerance.  Never guessed.
class undecidable_error : public hypothesis_error {
public:
    explicit undecidable_error(const std::string& what) : hypothesis_error(what) {}
};

// Malformed input files, bad schema, broken invariants of serialized data.
class schema_error : public std::runtime_error {
public:
    explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dynmix
