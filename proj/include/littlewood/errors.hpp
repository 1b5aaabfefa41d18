#pragma once

#include <stdexcept>
#include <string>

namespace littlewood {

/// Enumeration or exact-mode budget exceeded. Callers may retry with a
/// larger budget or switch to a heuristic / Monte Carlo path.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller-supplied analytic bound was contradicted by a computed witness.
class InvalidBoundError : public std::logic_error {
public:
    explicit InvalidBoundError(const std::string& what) : std::logic_error(what) {}
};

/// Malformed or invariant-violating serialized document.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace littlewood
