#ifndef PARAWEIGHT_QUADRATURE_HPP
#define PARAWEIGHT_QUADRATURE_HPP

#include <cmath>
#include <utility>

namespace paraweight {

namespace detail {

template <class F>
double adaptive_simpson_step(const F& f, double a, double b, double fa,
                             double fm, double fb, double whole, double tol,
                             double tol_floor, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  // the tolerance never drops below the roundoff floor, otherwise the
  // refinement tree degenerates into a full binary tree
  const double child_tol = std::max(0.5 * tol, tol_floor);
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, child_tol,
                               tol_floor, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, child_tol,
                               tol_floor, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a,b]; tol is treated relative to
/// the first whole-interval estimate (with an absolute floor for values
/// near zero).
template <class F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double scale = std::max(std::fabs(whole), 1e-30);
  const double tol = rel_tol * scale;
  const double tol_floor = 1e-17 * scale;
  return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole,
                                       std::max(tol, tol_floor), tol_floor,
                                       40);
}

/// One Simpson step over [a,b] with one Richardson refinement. The five
/// samples are supplied by the caller so they can be shared between
/// integrands on the same panel.
inline double simpson_refined(double h, double f0, double f1, double f2,
                              double f3, double f4) {
  const double coarse = h / 6.0 * (f0 + 4.0 * f2 + f4);
  const double fine =
      h / 12.0 * (f0 + 4.0 * f1 + 2.0 * f2 + 4.0 * f3 + f4);
  return fine + (fine - coarse) / 15.0;
}

}  // namespace paraweight

#endif
