#ifndef GKCS_DETAIL_DD_HPP
#define GKCS_DETAIL_DD_HPP

#include <cmath>
#include <complex>

// Double-double arithmetic (Dekker/Knuth error-free transforms). Used to
// accumulate badly cancelling hypergeometric sums where the largest term
// exceeds the result by up to ~1e18; the ~32-digit working precision keeps
// the final rounding at double level.

namespace gkcs::detail {

struct Dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline Dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline Dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline Dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Dd dd_add(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Dd dd_add(Dd a, double b) {
  Dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Dd dd_mul(Dd a, double b) {
  Dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline Dd dd_mul(Dd a, Dd b) {
  Dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Dd dd_div(Dd a, double b) {
  double q1 = a.hi / b;
  Dd r = two_prod(q1, b);
  double q2 = ((a.hi - r.hi) - r.lo + a.lo) / b;
  return quick_two_sum(q1, q2);
}

inline Dd dd_neg(Dd a) { return {-a.hi, -a.lo}; }

inline Dd dd_sub(Dd a, Dd b) { return dd_add(a, dd_neg(b)); }

inline Dd dd_div(Dd a, Dd b) {
  double q1 = a.hi / b.hi;
  Dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  return dd_add(quick_two_sum(q1, q2), {q3, 0.0});
}

/// Complex double-double.
struct Cdd {
  Dd re, im;

  static Cdd from(std::complex<double> z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }
  std::complex<double> to_complex() const { return {re.hi + re.lo, im.hi + im.lo}; }
  double abs_estimate() const { return std::hypot(re.hi, im.hi); }
};

inline Cdd cdd_add(Cdd a, Cdd b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline Cdd cdd_mul(Cdd a, std::complex<double> b) {
  Dd re = dd_add(dd_mul(a.re, b.real()), dd_neg(dd_mul(a.im, b.imag())));
  Dd im = dd_add(dd_mul(a.re, b.imag()), dd_mul(a.im, b.real()));
  return {re, im};
}

inline Cdd cdd_mul(Cdd a, double b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

inline Cdd cdd_div(Cdd a, double b) { return {dd_div(a.re, b), dd_div(a.im, b)}; }

/// a * (b_re + i b_im) where b_re is a double-double (e.g. the error-free
/// sum of a parameter and the series index, which a plain double addition
/// would round and thereby leak double-level noise into every term).
inline Cdd cdd_mul(Cdd a, Dd b_re, double b_im) {
  Dd re = dd_sub(dd_mul(a.re, b_re), dd_mul(a.im, b_im));
  Dd im = dd_add(dd_mul(a.re, b_im), dd_mul(a.im, b_re));
  return {re, im};
}

inline Cdd cdd_div(Cdd a, Dd b) { return {dd_div(a.re, b), dd_div(a.im, b)}; }

}  // namespace gkcs::detail

#endif
