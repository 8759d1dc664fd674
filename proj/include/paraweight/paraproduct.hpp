#ifndef PARAWEIGHT_PARAPRODUCT_HPP
#define PARAWEIGHT_PARAPRODUCT_HPP

#include <vector>

#include "paraweight/coefficients.hpp"
#include "paraweight/field.hpp"

namespace paraweight {

/**
 * Parameters of the modified paraproduct
 *
 *   T^m_a u = S_{m-1} a S_{m+1} u + sum_{k=m+2} S_{k-3} a Delta_k u
 *
 * on a fixed grid. The head term must sit below the dyadic ceiling
 * (m + 4 <= k_max) and the Sobolev index below one.
 */
struct ParaproductConfig {
  int m;
  double s;
  TorusGrid grid;

  ParaproductConfig(int m_, double s_, const TorusGrid& grid_);
};

/// Bony's paraproduct T_a u = sum_{k>=3} S_{k-3} a Delta_k u (= T^0_a u).
SpectralField bony_T(const SpectralField& a, const SpectralField& u);

SpectralField modified_T(const ParaproductConfig& cfg, const SpectralField& a,
                         const SpectralField& u);

/// Adjoint via the transpose identity
/// (T^m_a)* v = S_{m+1}(S_{m-1} a v) + sum_k Delta_k(S_{k-3} a v).
SpectralField modified_T_adjoint(const ParaproductConfig& cfg,
                                 const SpectralField& a,
                                 const SpectralField& v);

/// a u - T^m_a u (the paraproduct defect, one derivative smoother).
SpectralField remainder(const ParaproductConfig& cfg, const SpectralField& a,
                        const SpectralField& u);

/**
 * d_j([Delta_nu, T^m_a] d_h u). The head part vanishes identically for
 * nu >= m + 4 and the annulus parts for |k - nu| >= 4; both facts are
 * certified numerically (<= 1e-12 relative to |a|_inf |d_h u|_{L2}) on
 * every call.
 */
SpectralField commutator_term(const ParaproductConfig& cfg,
                              const SpectralField& a, const SpectralField& u,
                              int nu, int j_axis, int h_axis);

/// (T^m_a - (T^m_a)*) d_j u.
SpectralField adjoint_defect(const ParaproductConfig& cfg,
                             const SpectralField& a, const SpectralField& u,
                             int j_axis);

/// Re sum_jk <T^m_{a_jk} u_k, u_j> / sum_j |u_j|^2 for a vector field u.
double positivity_ratio(const CoefficientMatrix& A, int m,
                        const std::vector<SpectralField>& u);

struct PositivitySearch {
  int m_star = -1;
  std::vector<double> margin_profile;  // min ratio per scanned m
};

/**
 * Smallest m <= m_max with min over the ensemble of
 * Re sum <T^m_{a_jk} u_k, u_j> >= (lambda0/2) |u|^2. Scans upward from
 * m = 0; throws ThresholdNotFound (with the margin profile) if no m
 * qualifies.
 */
PositivitySearch find_positive_m(
    const CoefficientMatrix& A,
    const std::vector<std::vector<SpectralField>>& ensemble, int m_max);

}  // namespace paraweight

#endif
