#include "paraweight/grid.hpp"

#include <cmath>
#include <string>

#include "paraweight/errors.hpp"

namespace paraweight {

namespace {

double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double chi(double s) {
  const double a = std::fabs(s);
  if (a <= 1.1) return 1.0;
  if (a >= 1.9) return 0.0;
  const double q = (1.9 - a) / 0.8;
  const double gq = glue(q);
  return gq / (gq + glue(1.0 - q));
}

double chi_k(int k, double abs_xi) {
  if (k < 0) return 0.0;
  return chi(std::ldexp(abs_xi, -k));
}

double delta_window(int k, double abs_xi) {
  if (k == 0) return chi(abs_xi);
  return chi_k(k, abs_xi) - chi_k(k - 1, abs_xi);
}

double smooth_plateau(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  if (q < 0.25) {
    const double g = glue(4.0 * q);
    return g / (g + glue(1.0 - 4.0 * q));
  }
  if (q > 0.75) {
    const double g = glue(4.0 * (1.0 - q));
    return g / (g + glue(1.0 - 4.0 * (1.0 - q)));
  }
  return 1.0;
}

TorusGrid::TorusGrid(int dim_, int n_) : dim(dim_), n(n_) {
  if (dim != 1 && dim != 2)
    throw ConfigError("TorusGrid: dim must be 1 or 2, got " +
                      std::to_string(dim));
  if (n < 4 || (n & (n - 1)) != 0)
    throw ConfigError("TorusGrid: N must be a power of two >= 4, got " +
                      std::to_string(n));
  k_max = static_cast<int>(
              std::ceil(std::log2(static_cast<double>(n) * std::sqrt(dim)))) +
          1;
  // S_{k_max} must be the identity on the lattice
  const double far = std::sqrt(static_cast<double>(dim)) * n / 2.0;
  if (chi_k(k_max, far) != 1.0)
    throw ConfigError("TorusGrid: k_max does not cover the lattice");
}

double TorusGrid::cell_volume() const {
  double v = spacing();
  return dim == 1 ? v : v * v;
}

}  // namespace paraweight
