#pragma once

#include <stdexcept>
#include <string>

namespace superquant {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: syntax errors, unknown identifiers,
/// chart mismatches, parity or symmetry violations.
class InputError : public Error {
  public:
    using Error::Error;
};

/// A mathematical precondition of the requested construction does not hold.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// The superdimension n-m takes a value excluded by the construction.
class SuperdimensionError : public PreconditionError {
  public:
    SuperdimensionError(int superdim, const std::string& what)
        : PreconditionError(what + " (n-m = " + std::to_string(superdim) + ")"), superdim_(superdim) {}
    int superdim() const noexcept { return superdim_; }

  private:
    int superdim_;
};

/// A gamma denominator of the lift recursion vanishes.
class CriticalityError : public PreconditionError {
  public:
    CriticalityError(int k, int l, const std::string& what)
        : PreconditionError(what), k_(k), l_(l) {}
    int k() const noexcept { return k_; }
    int l() const noexcept { return l_; }

  private:
    int k_;
    int l_;
};

/// A configured resource guard was exceeded.
class ResourceError : public Error {
  public:
    using Error::Error;
};

} // namespace superquant
