#pragma once

#include <stdexcept>
#include <string>

namespace bnfsi {

// A state violated an admissibility requirement (alpha out of range,
// non-positive mass/density, non-finite component).
class InvalidStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument fell outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Interfacial weights d1*m1 + d2*m2 degenerated to zero.
class DegenerateWeightsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A rational interface-solver expression was evaluated at a pole.
class SingularDenominatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Root selection produced a volume fraction outside (0,1).
class UnphysicalRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Leading cubic coefficient vanished.
class DegenerateCubicError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadratic has no real solution (negative discriminant) or b2 = 0.
class NoRealSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bnfsi
