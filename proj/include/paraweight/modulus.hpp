#ifndef PARAWEIGHT_MODULUS_HPP
#define PARAWEIGHT_MODULUS_HPP

#include <functional>
#include <string>
#include <vector>

namespace paraweight {

/**
 * A modulus of continuity: concave, strictly increasing on [0,1] with
 * mu(0) = 0 and mu(1) = 1. `analytic_tail`, when present, is the closed
 * form of the Osgood tail integral_delta^1 ds/mu(s) and exists for oracle
 * use only; no computation path depends on it.
 */
struct Modulus {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> analytic_tail;  // optional, may be empty

  /// Checked evaluation; throws EvaluationError on a non-finite sample and
  /// DomainError outside [0,1].
  double operator()(double s) const;
};

struct ModulusViolation {
  std::string property;  // which invariant failed
  double where;          // witnessing sample point
  std::string detail;
};

struct ValidationReport {
  bool pass = false;
  std::vector<ModulusViolation> violations;
  std::string summary() const;
};

/// Checks the four modulus invariants on a 2048-point validation grid
/// (concavity on all pairs of a 64-point subgrid).
ValidationReport validate_modulus(const Modulus& candidate);

/// Osgood tail integral_delta^1 ds/mu(s), adaptive quadrature.
double osgood_tail(const Modulus& mu, double delta, double rel_tol = 1e-10);

enum class OsgoodVerdict { diverges, converges, inconclusive };

struct OsgoodResult {
  OsgoodVerdict verdict;
  std::vector<double> tails;   // tail(delta_j)
  std::vector<double> ratios;  // successive increment ratios
  double ratio_limit;          // extrapolated contraction ratio
};

/**
 * Heuristic ratio test on the tail increments along a decreasing delta
 * sequence: "diverges" when the increments fail to contract geometrically
 * (extrapolated ratio >= 0.9), "converges" when they contract below 0.5,
 * "inconclusive" in between. A heuristic, never a proof.
 */
OsgoodResult osgood_verdict(const Modulus& mu,
                            const std::vector<double>& delta_sequence,
                            double rel_tol = 1e-10);

const char* to_string(OsgoodVerdict v);

/// Built-in moduli: "lip", "sqrt", "loglip", "holder:<alpha>".
Modulus modulus_catalogue(const std::string& name);
std::vector<std::string> modulus_catalogue_names();

/// Rescales an arbitrary increasing sampler to mu(1) = 1.
Modulus normalized(Modulus raw);

}  // namespace paraweight

#endif
