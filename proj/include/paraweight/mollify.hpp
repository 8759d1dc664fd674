#ifndef PARAWEIGHT_MOLLIFY_HPP
#define PARAWEIGHT_MOLLIFY_HPP

#include <vector>

#include "paraweight/modulus.hpp"
#include "paraweight/probes.hpp"
#include "paraweight/timegrid.hpp"

namespace paraweight {

/**
 * Even bump rho(s) = c0 exp(-1/(1 - 4 s^2)) on |s| < 1/2, normalized to
 * unit mass, dilated to width epsilon in time.
 */
class MollifierKernel {
 public:
  explicit MollifierKernel(double epsilon);
  double epsilon() const { return epsilon_; }
  /// Normalized profile at kernel coordinate s (support |s| < 1/2).
  double rho(double s) const;

 private:
  double epsilon_;
};

/**
 * Per-node convolution in time against the dilated kernel, trapezoid
 * weights on the sample grid with constant continuation outside [0, T].
 * The discrete kernel mass is renormalized per offset so that constants
 * mollify to themselves exactly.
 */
SpaceTimeField mollify_time(const SpaceTimeField& a,
                            const MollifierKernel& kernel);

/// Same smoothing for a plain scalar time profile.
std::vector<double> mollify_profile(const std::vector<double>& a, double dt,
                                    const MollifierKernel& kernel);

struct MollificationConstants {
  double epsilon;
  double c_sup;    // sup |a_eps - a| / mu(eps)
  double c_deriv;  // sup |d_t a_eps| * eps / mu(eps)
};

/// Measures both constants for a sampled profile a(t) on [0, T].
MollificationConstants mollification_constants(
    const std::vector<double>& profile, double T, const Modulus& mu,
    double epsilon);

/**
 * Sweep over eps = 2^{-2 nu}: both constants must stay within a factor
 * two across the sweep for the probe to pass.
 */
ProbeReport probe_mollification(const Modulus& mu, double T, int M,
                                int nu_min, int nu_max);

}  // namespace paraweight

#endif
