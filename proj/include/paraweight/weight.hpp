#ifndef PARAWEIGHT_WEIGHT_HPP
#define PARAWEIGHT_WEIGHT_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "paraweight/interp.hpp"
#include "paraweight/modulus.hpp"

namespace paraweight {

struct WeightBuildOptions {
  /// Spacing of the knot grid in w = log(phi^{-1}). Uniform spacing here
  /// makes the relative error of the centered-difference Phi'' uniform
  /// (~ knot_step^2 / 2) across the whole table.
  double knot_step = 2.5e-3;
  double quadrature_tol = 1e-10;
  /// Hard cap on table size; tau_max values that need more knots raise
  /// WeightRangeError.
  std::size_t max_knots = 6'000'000;
};

/**
 * Tabulated Carleman weight built from an Osgood modulus:
 *
 *   phi(t)   = integral_{1/t}^1 ds/mu(s),      t >= 1
 *   Phi'     = phi^{-1},  Phi(tau) = integral_0^tau phi^{-1}
 *
 * so that Phi'' = (Phi')^2 mu(1/Phi'). Knots are geometric in
 * t = phi^{-1}: knot j sits at w_j = j * knot_step with t = e^{w_j}. For
 * slowly vanishing moduli Phi' and Phi overflow double range quickly
 * (mu = s(1-log s) exceeds it past tau ~ 6.5), so log accessors are the
 * authoritative interface and the raw ones may return inf.
 */
class CarlemanWeight {
 public:
  static CarlemanWeight build(const Modulus& mu, double tau_max,
                              double quadrature_tol = 1e-10);
  static CarlemanWeight build(const Modulus& mu, double tau_max,
                              const WeightBuildOptions& options);

  const Modulus& modulus() const { return mu_; }
  double tau_max() const { return tau_max_; }
  double knot_step() const { return h_; }
  std::size_t knots() const { return tau_.size(); }
  double tau_knot(std::size_t j) const { return tau_[j]; }

  /// phi(t) for t in [1, e^{w_last}].
  double phi(double t) const;

  double log_phi_inv(double tau) const;  // w(tau)
  double phi_inv(double tau) const;      // may overflow to +inf
  double Phi_prime(double tau) const { return phi_inv(tau); }
  double log_Phi(double tau) const;
  double Phi(double tau) const;  // may overflow to +inf

  /// Second derivative at the interior knot nearest tau, centered
  /// differences of Phi' with the local table spacing.
  double log_Phi_second_fd(double tau) const;
  double Phi_second_fd(double tau) const;

  /// Knot-level access used by the ODE residual check.
  std::size_t nearest_interior_knot(double tau) const;
  double log_phi_inv_at_knot(std::size_t j) const { return j * h_; }
  double log_Phi_second_fd_at_knot(std::size_t j) const;

  /// Columns tau, phi_inv, Phi, Phi_prime, Phi_second (at most ~4096 rows).
  void write_csv(std::ostream& os) const;

 private:
  CarlemanWeight() = default;
  double partial_log_segment(std::size_t j, double w) const;

  Modulus mu_;
  double tau_max_ = 0.0;
  double h_ = 0.0;
  std::vector<double> tau_;      // tau_j = phi(e^{j h})
  std::vector<double> seg_;      // tau_{j+1} - tau_j as computed
  std::vector<double> log_phi_;  // log Phi(tau_j); -inf at j = 0
  MonotoneCubic w_of_tau_;
};

struct OdeCheckResult {
  double max_rel_residual = 0.0;
  bool second_derivative_nondecreasing = false;
  bool pass = false;
};

/**
 * Residual of Phi'' = (Phi')^2 mu(1/Phi') at the interior knots nearest
 * the given (increasing) tau grid, with Phi'' from centered finite
 * differences of Phi'. Also verifies that Phi'' is nondecreasing along
 * the grid.
 */
OdeCheckResult check_weight_ode(const CarlemanWeight& w,
                                const std::vector<double>& tau_grid,
                                double tol);

}  // namespace paraweight

#endif
