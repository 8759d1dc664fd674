#ifndef PARAWEIGHT_GRID_HPP
#define PARAWEIGHT_GRID_HPP

#include <cstddef>

namespace paraweight {

inline constexpr double kPi = 3.14159265358979323846;

/**
 * Radial Littlewood-Paley cutoff: chi(s) = 1 for |s| <= 11/10, 0 for
 * |s| >= 19/10, even, smooth and nonincreasing on the bridge. The bridge
 * is the exponential glue G(q) = g(q)/(g(q)+g(1-q)) with g(x) = e^{-1/x},
 * q = (19/10 - |s|)/(8/10), which attains both plateaus exactly.
 */
double chi(double s);

/// chi(2^{-k} |xi|) for k >= 0; k = -1 is the zero multiplier.
double chi_k(int k, double abs_xi);

/// Multiplier of the dyadic block Delta_k (chi_k - chi_{k-1}; chi_0 at k=0).
double delta_window(int k, double abs_xi);

/// Smooth plateau profile on [0,1] (0 at the ends, 1 on the middle half);
/// the same glue as the chi bridge, reused for time bumps.
double smooth_plateau(double q);

/**
 * Periodic grid on [0, 2pi)^dim, N points per axis (power of two). The
 * integer frequency lattice is [-N/2, N/2)^dim and k_max is the first
 * dyadic index whose low-pass covers the whole lattice.
 */
struct TorusGrid {
  int dim = 1;
  int n = 0;
  int k_max = 0;

  TorusGrid(int dim_, int n_);

  double spacing() const { return 2.0 * kPi / n; }
  std::size_t nodes() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * n;
  }
  double cell_volume() const;
  bool operator==(const TorusGrid& o) const {
    return dim == o.dim && n == o.n;
  }
  bool operator!=(const TorusGrid& o) const { return !(*this == o); }
};

}  // namespace paraweight

#endif
