#ifndef PARAWEIGHT_COEFFICIENTS_HPP
#define PARAWEIGHT_COEFFICIENTS_HPP

#include <memory>
#include <string>
#include <vector>

#include "paraweight/field.hpp"
#include "paraweight/modulus.hpp"

namespace paraweight {

/**
 * Real symmetric dim x dim coefficient matrix of grid functions with a
 * certified ellipticity floor: min over nodes of the smallest eigenvalue
 * is at least lambda0. Entries are stored upper-triangular, so symmetry
 * holds by construction.
 */
class CoefficientMatrix {
 public:
  /// a * Id for a real scalar field.
  static CoefficientMatrix scalar(const SpectralField& a, double lambda0);
  static CoefficientMatrix identity(const TorusGrid& grid);
  /// Full symmetric data: entries in row-major upper-triangular order
  /// (dim 1: {a00}; dim 2: {a00, a01, a11}).
  CoefficientMatrix(const TorusGrid& grid, std::vector<SpectralField> upper,
                    double lambda0);

  const TorusGrid& grid() const { return grid_; }
  int dim() const { return grid_.dim; }
  const SpectralField& entry(int j, int k) const;
  double lambda0() const { return lambda0_; }
  double min_eigenvalue() const;
  /// max over entries of the Lipschitz norm (direct method).
  double max_lip_norm() const;

 private:
  TorusGrid grid_;
  std::vector<SpectralField> upper_;
  double lambda0_;
};

/**
 * Named coefficient recipes for runs and reports:
 *   "identity"                 a_jk = delta_jk
 *   "scalar:2+sin"             (2 + sin x) Id, lambda0 = 1
 *   "rough-in-time:<modulus>"  (2 + lacunary C^mu time profile) Id
 * The rough profile is sum_j mu(4^{-j}) cos(4^j 2 pi t / T + phase_j),
 * normalized to amplitude 1/2, so lambda0 = 3/2.
 */
struct CoefficientRecipe {
  std::string name;
  double lambda0 = 1.0;
  bool time_dependent = false;

  static CoefficientRecipe parse(const std::string& name);
  std::shared_ptr<const CoefficientMatrix> slice(const TorusGrid& grid,
                                                 double t, double T) const;
};

}  // namespace paraweight

#endif
