#ifndef GKCS_SERIES_HPP
#define GKCS_SERIES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace gkcs {

using Complex = std::complex<double>;

/// Result of an infinite-series evaluation. `tail_bound` is the estimated
/// magnitude of the neglected tail; `converged` guarantees
/// tail_bound <= tol * max(1, |value|).
struct SeriesEval {
  Complex value{0.0, 0.0};
  int terms_used = 0;
  double tail_bound = 0.0;
  bool converged = false;
};

struct SeriesOptions {
  double tolerance = 1e-12;
  int max_terms = 10000;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SeriesEval partial)
      : std::runtime_error(what), partial_(partial) {}
  const SeriesEval& partial() const { return partial_; }

 private:
  SeriesEval partial_;
};

/// A closed-form value violated a structural property it must satisfy
/// (e.g. a mathematically real quantity came out with a large imaginary
/// residue). Raised instead of silently discarding the residue.
class IdentityViolation : public std::runtime_error {
 public:
  IdentityViolation(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

}  // namespace gkcs

#endif
