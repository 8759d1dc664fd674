#ifndef PARAWEIGHT_CARLEMAN_HPP
#define PARAWEIGHT_CARLEMAN_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "paraweight/coefficients.hpp"
#include "paraweight/paraproduct.hpp"
#include "paraweight/timegrid.hpp"
#include "paraweight/weight.hpp"

namespace paraweight {

/// Coefficient matrices aligned with a time grid; time-constant recipes
/// share one slice.
struct CoefficientSlices {
  std::vector<std::shared_ptr<const CoefficientMatrix>> per_time;

  static CoefficientSlices from_recipe(const CoefficientRecipe& recipe,
                                       const TorusGrid& grid,
                                       const TimeGrid& tg);
  const CoefficientMatrix& at(int i) const { return *per_time[i]; }
  int slices() const { return static_cast<int>(per_time.size()); }
  double lambda0() const { return per_time.front()->lambda0(); }
};

/**
 * Backward parabolic operator
 *   L u = d_t u + sum_jk d_j (a_jk d_k u) + sum_j b_j d_j u + c u
 * with spectral space derivatives, dealiased coefficient products and
 * second-order finite differences in time.
 */
SpaceTimeField apply_L(const SpaceTimeField& u, const CoefficientSlices& A,
                       const std::vector<SpaceTimeField>* b = nullptr,
                       const SpaceTimeField* c = nullptr);

/// Paraproduct principal part d_t u + sum_jk d_j (T^m_{a_jk} d_k u);
/// weight terms are added by the probes, not here.
SpaceTimeField apply_P_para(const SpaceTimeField& u,
                            const CoefficientSlices& A,
                            const ParaproductConfig& cfg);

struct CarlemanProbeConfig {
  double s = 0.5;
  std::vector<double> gamma_list;
  const CarlemanWeight* weight = nullptr;
  int m = 1;
};

/**
 * Both sides of the weighted estimate for one test function and one
 * gamma. The weight e^{(2/gamma) Phi(gamma(T-t))} spans thousands of
 * orders of magnitude across slices, so the integrals are assembled by
 * log-sum-exp; the raw accessors may overflow to inf but the ratio
 *
 *   c(gamma) = lhs / (gamma^{1/2} rhs_grad + gamma rhs_l2)
 *
 * is always finite for a nonzero test function.
 */
struct CarlemanSides {
  double log_lhs = 0.0;
  double log_rhs_grad = 0.0;
  double log_rhs_l2 = 0.0;
  double c = 0.0;

  double lhs() const;
  double rhs_grad() const;
  double rhs_l2() const;
};

CarlemanSides carleman_sides(const SpaceTimeField& u, double gamma,
                             const CarlemanProbeConfig& cfg,
                             const CoefficientSlices& A);

struct GammaSweepRow {
  double gamma;
  double min_c;
  int argmin_member;
};

struct GammaSweepResult {
  std::vector<GammaSweepRow> rows;
  double gamma0 = 0.0;
  bool pass = false;

  void write_csv(std::ostream& os) const;  // gamma, min_c, argmin_member
};

/**
 * min-over-ensemble c(gamma) for every gamma in the config list. gamma0
 * is the smallest swept gamma with Phi''(gamma(T-t)) >= 1 on [0, T/2];
 * the verdict requires min c(gamma) >= 1e-6 for every gamma >= gamma0.
 */
GammaSweepResult gamma_sweep(
    const std::function<SpaceTimeField(int)>& member_at, int ensemble_size,
    const CarlemanProbeConfig& cfg, const CoefficientSlices& A);

/// The standard test-function time profile: a plateau bump supported on
/// [T/8, 3T/8], well inside the [0, T/2] constraint.
double carleman_bump(double t, double T);

struct LedgerRow {
  std::string inequality;
  int time_index;  // -1 for aggregate rows
  double time;
  double lhs;
  double rhs;
  bool holds;
};

struct ProofLedger {
  int nu = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  std::vector<LedgerRow> rows;
  std::map<std::string, double> measured;
  bool all_hold = false;

  void write_csv(std::ostream& os) const;
};

/**
 * Evaluates the per-block inequality ledger of the Carleman proof on
 * v(t,x) = bump(t) v_block(x) with eps = 2^{-2 nu} (eps = 1/2 at nu = 0):
 * the positivity chain with the lambda0/8 factor, the mollification
 * constants, the energy identity, the branch condition per time sample,
 * and the final block bound.
 */
ProofLedger proof_ledger_probe(const SpectralField& v_block, int nu,
                               double gamma, const CarlemanProbeConfig& cfg,
                               const CoefficientSlices& A,
                               const TimeGrid& tg);

}  // namespace paraweight

#endif
