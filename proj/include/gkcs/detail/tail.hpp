#ifndef GKCS_DETAIL_TAIL_HPP
#define GKCS_DETAIL_TAIL_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace gkcs::detail {

/// Geometric-tail estimator for series whose terms oscillate through
/// zeros (orthogonal-polynomial factors): consecutive-term ratios spike at
/// the zeros, so the decay rate is measured envelope-to-envelope over
/// blocks of ten terms instead.
class TailEstimator {
 public:
  void push(double magnitude) {
    block_max_ = std::max(block_max_, magnitude);
    if (++fill_ == 10) {
      prev_ = last_;
      last_ = block_max_;
      block_max_ = 0.0;
      fill_ = 0;
      ++blocks_;
    }
  }

  bool ready() const { return blocks_ >= 2; }

  /// Per-term decay ratio of the envelope; >= 1 when not decaying yet.
  double ratio() const {
    if (last_ == 0.0) return 0.0;
    if (prev_ <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(last_ / prev_, 0.1);
  }

  /// Bound on the neglected remainder, starting the geometric decay at the
  /// latest envelope. Infinite while no decay is established.
  double tail(double current_magnitude) const {
    if (!ready()) return std::numeric_limits<double>::infinity();
    const double r = ratio();
    if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
    const double top = std::max({current_magnitude, last_, block_max_});
    return top * r / (1.0 - r);
  }

 private:
  double block_max_ = 0.0;
  double last_ = 0.0;
  double prev_ = 0.0;
  int fill_ = 0;
  int blocks_ = 0;
};

}  // namespace gkcs::detail

#endif
