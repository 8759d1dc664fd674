#ifndef PARAWEIGHT_SPECTRAL_OPS_HPP
#define PARAWEIGHT_SPECTRAL_OPS_HPP

#include <iosfwd>
#include <vector>

#include "paraweight/field.hpp"

namespace paraweight {

/// Low-pass S_k u = chi(2^{-k}|xi|) uhat; S_{-1} u = 0.
SpectralField apply_S(const SpectralField& u, int k);

/// Dyadic block Delta_k u (Delta_0 = S_0, Delta_k = S_k - S_{k-1}).
SpectralField apply_delta(const SpectralField& u, int k);

/**
 * The family {Delta_k u} for k = 0..k_max together with the block
 * energies delta_k = 2^{ks} |Delta_k u|_{L2}. Since grid functions are
 * band limited the family reconstructs u exactly by telescoping.
 */
struct DyadicDecomposition {
  std::vector<SpectralField> blocks;
  double s_exponent = 0.0;
  std::vector<double> block_energies;

  SpectralField reconstruct() const;
  void write_energy_csv(std::ostream& os) const;  // columns k, delta_k
};

DyadicDecomposition decompose(const SpectralField& u, double s);

enum class NormMethod { direct, lp };

/// H^s norm, either from the coefficients or as the l2 norm of the
/// dyadic block energies.
double h_norm(const SpectralField& u, double s, NormMethod method);

struct LipNormResult {
  double value = 0.0;
  /// 2^k |Delta_k a|_{L_inf} for k = 0..k_max, for decay inspection.
  std::vector<double> dyadic_decay;
};

/// Lipschitz norm max|a| + max|grad a|; the lp method replaces the
/// gradient term by sup_k |grad S_k a|_{L_inf}.
LipNormResult lip_norm(const SpectralField& a, NormMethod method);

/// |d_j block|_{L2} / |block|_{L2}; requires Fourier support inside
/// |xi| < (19/10) 2^nu and is bounded by 2^{nu+1}.
double bernstein_check(const SpectralField& block, int nu, int axis);

/// Largest |xi| carrying a coefficient above rel_tol * max |coeff|.
double support_radius(const SpectralField& u, double rel_tol = 1e-14);

/// Smallest such |xi| (+inf for the zero field).
double support_min_radius(const SpectralField& u, double rel_tol = 1e-14);

}  // namespace paraweight

#endif
