#include "paraweight/paraproduct.hpp"

#include <cmath>
#include <string>

#include "paraweight/errors.hpp"
#include "paraweight/spectral_ops.hpp"

namespace paraweight {

namespace {

void require_real(const SpectralField& a, const char* who) {
  if (a.max_abs_imag() > 1e-12 * std::max(a.max_abs(), 1.0))
    throw DomainError(std::string(who) + ": coefficient must be real valued");
}

void require_same_grid(const SpectralField& a, const SpectralField& u,
                       const char* who) {
  if (a.grid() != u.grid())
    throw ConfigError(std::string(who) + ": grid mismatch");
}

}  // namespace

ParaproductConfig::ParaproductConfig(int m_, double s_, const TorusGrid& grid_)
    : m(m_), s(s_), grid(grid_) {
  if (m < 0) throw ConfigError("ParaproductConfig: m must be >= 0");
  if (m + 4 > grid.k_max)
    throw ConfigError("ParaproductConfig: m + 4 = " + std::to_string(m + 4) +
                      " exceeds k_max = " + std::to_string(grid.k_max));
  if (!(s > 0.0 && s < 1.0))
    throw ConfigError("ParaproductConfig: s must lie in (0, 1)");
}

SpectralField modified_T(const ParaproductConfig& cfg, const SpectralField& a,
                         const SpectralField& u) {
  require_real(a, "modified_T");
  require_same_grid(a, u, "modified_T");
  if (a.grid() != cfg.grid) throw ConfigError("modified_T: config grid mismatch");
  const int k_max = cfg.grid.k_max;
  SpectralField acc =
      cfg.m >= 1 ? dealiased_product(apply_S(a, cfg.m - 1), apply_S(u, cfg.m + 1))
                 : SpectralField::zero(cfg.grid);
  for (int k = std::max(cfg.m + 2, 3); k <= k_max; ++k)
    acc = acc + dealiased_product(apply_S(a, k - 3), apply_delta(u, k));
  return acc;
}

SpectralField bony_T(const SpectralField& a, const SpectralField& u) {
  require_real(a, "bony_T");
  require_same_grid(a, u, "bony_T");
  // T_a = T^0_a: the head S_{-1} a S_1 u vanishes and the k = 2 summand
  // carries S_{-1} a = 0, so the sum starts at k = 3
  SpectralField acc = SpectralField::zero(a.grid());
  for (int k = 3; k <= a.grid().k_max; ++k)
    acc = acc + dealiased_product(apply_S(a, k - 3), apply_delta(u, k));
  return acc;
}

SpectralField modified_T_adjoint(const ParaproductConfig& cfg,
                                 const SpectralField& a,
                                 const SpectralField& v) {
  require_real(a, "modified_T_adjoint");
  require_same_grid(a, v, "modified_T_adjoint");
  SpectralField acc =
      cfg.m >= 1
          ? apply_S(dealiased_product(apply_S(a, cfg.m - 1), v), cfg.m + 1)
          : SpectralField::zero(cfg.grid);
  for (int k = std::max(cfg.m + 2, 3); k <= cfg.grid.k_max; ++k)
    acc = acc + apply_delta(dealiased_product(apply_S(a, k - 3), v), k);
  return acc;
}

SpectralField remainder(const ParaproductConfig& cfg, const SpectralField& a,
                        const SpectralField& u) {
  return dealiased_product(a, u) - modified_T(cfg, a, u);
}

SpectralField commutator_term(const ParaproductConfig& cfg,
                              const SpectralField& a, const SpectralField& u,
                              int nu, int j_axis, int h_axis) {
  require_real(a, "commutator_term");
  require_same_grid(a, u, "commutator_term");
  if (nu < 0 || nu > cfg.grid.k_max)
    throw DomainError("commutator_term: nu outside [0, k_max]");

  const SpectralField w = u.derivative(h_axis);
  const SpectralField Tw = modified_T(cfg, a, w);
  const SpectralField commutator =
      apply_delta(Tw, nu) - modified_T(cfg, a, apply_delta(w, nu));

  // locality certificates from the proof: the head part dies for
  // nu >= m + 4 and each annulus part for |k - nu| >= 4
  const double scale = a.max_abs() * w.l2_norm();
  if (scale > 0.0) {
    if (nu >= cfg.m + 4 && cfg.m >= 1) {
      const SpectralField head = dealiased_product(
          apply_S(a, cfg.m - 1), apply_S(w, cfg.m + 1));
      const SpectralField head_comm =
          apply_delta(head, nu) -
          dealiased_product(apply_S(a, cfg.m - 1),
                            apply_S(apply_delta(w, nu), cfg.m + 1));
      if (head_comm.l2_norm() > 1e-12 * scale)
        throw Error("commutator_term: head certificate failed at nu = " +
                    std::to_string(nu));
    }
    for (int k = std::max(cfg.m + 2, 3); k <= cfg.grid.k_max; ++k) {
      if (std::abs(k - nu) < 4) continue;
      const SpectralField part = dealiased_product(apply_S(a, k - 3),
                                                   apply_delta(w, k));
      const SpectralField part_comm =
          apply_delta(part, nu) -
          dealiased_product(apply_S(a, k - 3),
                            apply_delta(apply_delta(w, nu), k));
      if (part_comm.l2_norm() > 1e-12 * scale)
        throw Error("commutator_term: annulus certificate failed at (nu, k) = (" +
                    std::to_string(nu) + ", " + std::to_string(k) + ")");
    }
  }

  return commutator.derivative(j_axis);
}

SpectralField adjoint_defect(const ParaproductConfig& cfg,
                             const SpectralField& a, const SpectralField& u,
                             int j_axis) {
  const SpectralField du = u.derivative(j_axis);
  return modified_T(cfg, a, du) - modified_T_adjoint(cfg, a, du);
}

double positivity_ratio(const CoefficientMatrix& A, int m,
                        const std::vector<SpectralField>& u) {
  const TorusGrid& g = A.grid();
  if (u.size() != static_cast<std::size_t>(g.dim))
    throw ConfigError("positivity_ratio: need one component per axis");
  const ParaproductConfig cfg(m, 0.5, g);  // s plays no role here
  double denom = 0.0;
  for (const auto& comp : u) {
    const double nn = comp.l2_norm();
    denom += nn * nn;
  }
  if (denom == 0.0) throw DomainError("positivity_ratio: zero field");
  double num = 0.0;
  for (int j = 0; j < g.dim; ++j)
    for (int k = 0; k < g.dim; ++k)
      num += inner_l2(modified_T(cfg, A.entry(j, k), u[k]), u[j]).real();
  return num / denom;
}

PositivitySearch find_positive_m(
    const CoefficientMatrix& A,
    const std::vector<std::vector<SpectralField>>& ensemble, int m_max) {
  if (ensemble.empty())
    throw ConfigError("find_positive_m: empty ensemble");
  if (m_max + 4 > A.grid().k_max)
    throw ConfigError("find_positive_m: m_max + 4 exceeds k_max");
  PositivitySearch out;
  const double target = 0.5 * A.lambda0();
  for (int m = 0; m <= m_max; ++m) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& member : ensemble)
      worst = std::min(worst, positivity_ratio(A, m, member));
    out.margin_profile.push_back(worst);
    if (worst >= target) {
      out.m_star = m;
      return out;
    }
  }
  throw ThresholdNotFound(
      "find_positive_m: no m <= " + std::to_string(m_max) +
          " reaches the lambda0/2 bound",
      out.margin_profile);
}

}  // namespace paraweight
