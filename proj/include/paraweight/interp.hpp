#ifndef PARAWEIGHT_INTERP_HPP
#define PARAWEIGHT_INTERP_HPP

#include <cstddef>
#include <vector>

namespace paraweight {

/**
 * Monotone cubic interpolant (Fritsch-Carlson limited Hermite) over a
 * strictly increasing knot table. Bisection locates the segment, so a
 * monotone table yields a monotone interpolant with no overshoot.
 */
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_, y_, slope_;
};

/// Cubic Hermite value on [x0,x1] from endpoint values and derivatives.
double hermite(double x, double x0, double x1, double y0, double y1,
               double d0, double d1);

}  // namespace paraweight

#endif
