#ifndef MMP_ERRORS_HPP
#define MMP_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace mmp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (documents, arguments, shapes).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain: a determinate-only routine on
/// an indeterminate problem, a real point where a non-real one is needed, a
/// parameter outside the admissible class, and so on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical data contradicts an identity that holds in exact arithmetic.
/// Usually a rank decision came out differently in two places.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// The linear-fractional pivot matrix is singular at the evaluation point.
class SingularPivotError : public DomainError {
 public:
  SingularPivotError(std::complex<double> z, double sigma_min);

  std::complex<double> z() const { return z_; }
  double sigma_min() const { return sigma_min_; }

 private:
  std::complex<double> z_;
  double sigma_min_;
};

/// The unitary extension built from a parameter has the eigenvalue 1.
class FixedPointError : public DomainError {
 public:
  explicit FixedPointError(double distance);

  double distance() const { return distance_; }

 private:
  double distance_;
};

}  // namespace mmp

#endif  // MMP_ERRORS_HPP
