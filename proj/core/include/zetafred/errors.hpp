#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zetafred {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Input failed validation (model files, expansions, grids).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The declared expansion cutoff is too small for the request.
class InsufficientExpansionError : public Error {
 public:
  using Error::Error;
};

/// A numeric procedure did not reach its target accuracy.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double estimate = 0.0)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Two independent evaluation routes disagree beyond tolerance.
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& what, double discrepancy)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

/// Evaluation requested exactly at a pole.  Carries the residue and the
/// finite part of a simple pole so callers can recover.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, std::complex<double> residue,
            std::complex<double> finite_part)
      : Error(what), residue_(residue), finite_part_(finite_part) {}
  std::complex<double> residue() const noexcept { return residue_; }
  std::complex<double> finite_part() const noexcept { return finite_part_; }

 private:
  std::complex<double> residue_;
  std::complex<double> finite_part_;
};

}  // namespace zetafred
