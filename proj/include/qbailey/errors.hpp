#pragma once

#include <stdexcept>
#include <string>

namespace qbailey {

/// Base class for every error this library raises deliberately.
/// Plain std::domain_error / std::invalid_argument are reserved for
/// programmer mistakes (zero denominators, bad enum values).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Inversion (or division) of a series whose leading stored coefficient
/// vanishes identically, e.g. invert(zero) or div by a constant-1 linear
/// factor at exponent zero.
class ZeroLeadingTerm : public Error {
public:
  explicit ZeroLeadingTerm(const std::string& detail)
      : Error("zero leading term: " + detail) {}
};

/// Coefficient requested at or beyond a series' truncation order.
class BeyondTruncation : public Error {
public:
  BeyondTruncation(long exponent, long order)
      : Error("coefficient at q^" + std::to_string(exponent) +
              " requested but series is only known below q^" +
              std::to_string(order)) {}
};

/// An infinite construction whose factors or terms fail to move toward
/// higher exponents, so no truncation could ever be complete.
class NonConvergent : public Error {
public:
  explicit NonConvergent(const std::string& detail)
      : Error("non-convergent construction: " + detail) {}
};

/// A parameter choice that collapses a required denominator or otherwise
/// leaves the requested object undefined.
class DegenerateParameter : public Error {
public:
  explicit DegenerateParameter(const std::string& detail)
      : Error("degenerate parameter: " + detail) {}
};

/// A summation driver gave up: successive terms stopped gaining valuation,
/// so the sum would never stabilize below the requested order.
class NonTerminating : public Error {
public:
  explicit NonTerminating(const std::string& detail)
      : Error("non-terminating summation: " + detail) {}
};

/// Lookup of a series, identity, or pair by a name the registry lacks.
class UnknownName : public Error {
public:
  explicit UnknownName(const std::string& name)
      : Error("unknown name: \"" + name + "\"") {}
};

/// An integer argument that must be odd (or otherwise of fixed parity).
class EvenInput : public Error {
public:
  explicit EvenInput(const std::string& detail)
      : Error("even input: " + detail) {}
};

}  // namespace qbailey
