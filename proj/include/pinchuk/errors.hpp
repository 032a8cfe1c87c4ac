#ifndef PINCHUK_ERRORS_HPP
#define PINCHUK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pinchuk {

/// Exact division requested for a non-divisible pair. Signals that the
/// numerator is not in the ideal generated by the divisor, e.g. a q
/// candidate that is not a polynomial.
class NotDivisible : public std::runtime_error {
  public:
    explicit NotDivisible(const std::string& what) : std::runtime_error(what) {}
};

/// An exact identity that must hold by construction failed to hold.
/// The message carries the offending difference polynomial.
class IdentityViolation : public std::runtime_error {
  public:
    explicit IdentityViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed serialized input (JSON schema or rational syntax).
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Grid search produced no candidate pairs (box/grid/bucket mistuning,
/// not a proof of injectivity).
class NoCandidates : public std::runtime_error {
  public:
    explicit NoCandidates(const std::string& what) : std::runtime_error(what) {}
};

/// Newton refinement ran out of iterations.
class NoConvergence : public std::runtime_error {
  public:
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Newton refinement converged onto the frozen point.
class Collapsed : public std::runtime_error {
  public:
    explicit Collapsed(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pinchuk

#endif
