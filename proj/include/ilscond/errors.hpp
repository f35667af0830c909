#pragma once

#include <stdexcept>
#include <string>

namespace ilscond {

// Base class for all library errors.
class IlsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public IlsError {
 public:
  using IlsError::IlsError;
};

// A^t J A (or a factorable matrix handed to the SPD solver) is not
// numerically positive definite.
class NotPositiveDefinite : public IlsError {
 public:
  using IlsError::IlsError;
};

// A relative quantity was requested against a zero normalizer.
class ZeroNormalizer : public IlsError {
 public:
  using IlsError::IlsError;
};

// ||x||_2 = 0: relative condition numbers are undefined.
class ZeroSolution : public IlsError {
 public:
  using IlsError::IlsError;
};

// A quantity the overestimation diagnostics assume positive is zero.
class VanishingTerm : public IlsError {
 public:
  explicit VanishingTerm(const std::string& quantity)
      : IlsError("vanishing term: " + quantity), quantity_(quantity) {}
  const std::string& quantity() const { return quantity_; }

 private:
  std::string quantity_;
};

class AngleOutOfRange : public IlsError {
 public:
  using IlsError::IlsError;
};

class SingularX : public IlsError {
 public:
  using IlsError::IlsError;
};

class AlphaOutOfRange : public IlsError {
 public:
  using IlsError::IlsError;
};

class NonPositiveInput : public IlsError {
 public:
  using IlsError::IlsError;
};

class PreconditionViolated : public IlsError {
 public:
  using IlsError::IlsError;
};

// A perturbation pushed the problem outside the positive definite region.
class PerturbationLeftDomain : public IlsError {
 public:
  using IlsError::IlsError;
};

class InvalidEpsilon : public IlsError {
 public:
  using IlsError::IlsError;
};

}  // namespace ilscond
