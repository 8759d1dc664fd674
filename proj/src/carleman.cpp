#include "paraweight/carleman.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "paraweight/errors.hpp"
#include "paraweight/mollify.hpp"
#include "paraweight/parallel.hpp"
#include "paraweight/spectral_ops.hpp"

namespace paraweight {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(const std::vector<double>& v) {
  double acc = -kInf;
  for (double x : v) acc = log_add_exp(acc, x);
  return acc;
}

/// principal spatial part sum_jk d_j(a_jk d_k u) of one slice
SpectralField divergence_form(const CoefficientMatrix& A,
                              const SpectralField& u) {
  const int dim = A.dim();
  SpectralField acc = SpectralField::zero(u.grid());
  for (int j = 0; j < dim; ++j) {
    SpectralField flux = SpectralField::zero(u.grid());
    for (int k = 0; k < dim; ++k)
      flux = flux + dealiased_product(A.entry(j, k), u.derivative(k));
    acc = acc + flux.derivative(j);
  }
  return acc;
}

/// paraproduct principal part sum_jk d_j(T^m_{a_jk} d_k u) of one slice
SpectralField divergence_form_para(const CoefficientMatrix& A,
                                   const SpectralField& u,
                                   const ParaproductConfig& cfg) {
  const int dim = A.dim();
  SpectralField acc = SpectralField::zero(u.grid());
  for (int j = 0; j < dim; ++j) {
    SpectralField flux = SpectralField::zero(u.grid());
    for (int k = 0; k < dim; ++k)
      flux = flux + modified_T(cfg, A.entry(j, k), u.derivative(k));
    acc = acc + flux.derivative(j);
  }
  return acc;
}

double grad_h_norm_sq(const SpectralField& u, double s) {
  double acc = 0.0;
  for (int axis = 0; axis < u.grid().dim; ++axis) {
    const double n = h_norm_direct(u.derivative(axis), s);
    acc += n * n;
  }
  return acc;
}

double grad_l2_sq(const SpectralField& u) {
  double acc = 0.0;
  for (int axis = 0; axis < u.grid().dim; ++axis) {
    const double n = u.derivative(axis).l2_norm();
    acc += n * n;
  }
  return acc;
}

int integration_end(const TimeGrid& tg) {
  // last sample with t <= T/2
  int i = tg.samples - 1;
  while (i > 0 && tg.t(i) > 0.5 * tg.horizon + 1e-12 * tg.horizon) --i;
  return i;
}

void check_support(const SpaceTimeField& u) {
  const TimeGrid& tg = u.time_grid();
  const double scale = u.max_abs();
  for (int i = 0; i < tg.samples; ++i) {
    if (tg.t(i) <= 0.5 * tg.horizon) continue;
    if (u.slice(i).max_abs() > 1e-14 * scale) {
      std::ostringstream os;
      os << "carleman: test function not supported in [0, T/2]: sample " << i
         << " at t = " << tg.t(i) << " carries |u| = "
         << u.slice(i).max_abs();
      throw PreconditionError(os.str());
    }
  }
}

}  // namespace

CoefficientSlices CoefficientSlices::from_recipe(
    const CoefficientRecipe& recipe, const TorusGrid& grid,
    const TimeGrid& tg) {
  CoefficientSlices out;
  out.per_time.reserve(tg.samples);
  if (!recipe.time_dependent) {
    const auto shared = recipe.slice(grid, 0.0, tg.horizon);
    out.per_time.assign(tg.samples, shared);
  } else {
    for (int i = 0; i < tg.samples; ++i)
      out.per_time.push_back(recipe.slice(grid, tg.t(i), tg.horizon));
  }
  return out;
}

SpaceTimeField apply_L(const SpaceTimeField& u, const CoefficientSlices& A,
                       const std::vector<SpaceTimeField>* b,
                       const SpaceTimeField* c) {
  const TimeGrid& tg = u.time_grid();
  if (A.slices() != tg.samples)
    throw ConfigError("apply_L: coefficient slices do not match the time grid");
  if (A.per_time.front()->grid() != u.space_grid())
    throw ConfigError("apply_L: coefficient grid mismatch");
  if (b && static_cast<int>(b->size()) != u.space_grid().dim)
    throw ConfigError("apply_L: need one b field per axis");

  const SpaceTimeField ut = u.dt_centered();
  std::vector<SpectralField> slices;
  slices.reserve(tg.samples);
  for (int i = 0; i < tg.samples; ++i) {
    SpectralField acc = ut.slice(i) + divergence_form(A.at(i), u.slice(i));
    if (b)
      for (int axis = 0; axis < u.space_grid().dim; ++axis)
        acc = acc + dealiased_product((*b)[axis].slice(i),
                                      u.slice(i).derivative(axis));
    if (c) acc = acc + dealiased_product(c->slice(i), u.slice(i));
    slices.push_back(std::move(acc));
  }
  return SpaceTimeField(tg, std::move(slices));
}

SpaceTimeField apply_P_para(const SpaceTimeField& u,
                            const CoefficientSlices& A,
                            const ParaproductConfig& cfg) {
  const TimeGrid& tg = u.time_grid();
  if (A.slices() != tg.samples)
    throw ConfigError("apply_P_para: coefficient slices mismatch");
  const SpaceTimeField ut = u.dt_centered();
  std::vector<SpectralField> slices;
  slices.reserve(tg.samples);
  for (int i = 0; i < tg.samples; ++i)
    slices.push_back(ut.slice(i) +
                     divergence_form_para(A.at(i), u.slice(i), cfg));
  return SpaceTimeField(tg, std::move(slices));
}

double CarlemanSides::lhs() const { return std::exp(log_lhs); }
double CarlemanSides::rhs_grad() const { return std::exp(log_rhs_grad); }
double CarlemanSides::rhs_l2() const { return std::exp(log_rhs_l2); }

namespace {

struct SliceNorms {
  std::vector<double> lu_sq, grad_sq, u_sq;  // H^{-s} squares per slice
  int end = 0;
};

SliceNorms slice_norms(const SpaceTimeField& u, const CarlemanProbeConfig& cfg,
                       const CoefficientSlices& A) {
  check_support(u);
  const TimeGrid& tg = u.time_grid();
  SliceNorms out;
  out.end = integration_end(tg);
  const SpaceTimeField Lu = apply_L(u, A);
  out.lu_sq.resize(out.end + 1);
  out.grad_sq.resize(out.end + 1);
  out.u_sq.resize(out.end + 1);
  for (int i = 0; i <= out.end; ++i) {
    const double lu = h_norm_direct(Lu.slice(i), -cfg.s);
    out.lu_sq[i] = lu * lu;
    out.grad_sq[i] = grad_h_norm_sq(u.slice(i), -cfg.s);
    const double un = h_norm_direct(u.slice(i), -cfg.s);
    out.u_sq[i] = un * un;
  }
  return out;
}

CarlemanSides sides_from_norms(const SliceNorms& norms, const TimeGrid& tg,
                               double gamma, const CarlemanProbeConfig& cfg) {
  const CarlemanWeight& w = *cfg.weight;
  if (gamma * tg.horizon > w.tau_max() + 1e-12)
    throw DomainError("carleman: gamma * T = " +
                      std::to_string(gamma * tg.horizon) +
                      " exceeds the weight domain tau_max = " +
                      std::to_string(w.tau_max()));
  const double dt = tg.dt();
  std::vector<double> lhs_terms, grad_terms, l2_terms;
  lhs_terms.reserve(norms.end + 1);
  grad_terms.reserve(norms.end + 1);
  l2_terms.reserve(norms.end + 1);
  for (int i = 0; i <= norms.end; ++i) {
    const double exponent =
        (2.0 / gamma) * w.Phi(gamma * (tg.horizon - tg.t(i)));
    if (!std::isfinite(exponent))
      throw DomainError("carleman: weight exponent overflows at gamma = " +
                        std::to_string(gamma));
    const double trap = (i == 0 || i == norms.end) ? 0.5 * dt : dt;
    const double lt = std::log(trap);
    lhs_terms.push_back(norms.lu_sq[i] > 0.0
                            ? exponent + lt + std::log(norms.lu_sq[i])
                            : -kInf);
    grad_terms.push_back(norms.grad_sq[i] > 0.0
                             ? exponent + lt + std::log(norms.grad_sq[i])
                             : -kInf);
    l2_terms.push_back(norms.u_sq[i] > 0.0
                           ? exponent + lt + std::log(norms.u_sq[i])
                           : -kInf);
  }
  CarlemanSides sides;
  sides.log_lhs = log_sum_exp(lhs_terms);
  sides.log_rhs_grad = log_sum_exp(grad_terms);
  sides.log_rhs_l2 = log_sum_exp(l2_terms);
  const double log_denom = log_add_exp(0.5 * std::log(gamma) + sides.log_rhs_grad,
                                       std::log(gamma) + sides.log_rhs_l2);
  sides.c = std::exp(sides.log_lhs - log_denom);
  return sides;
}

}  // namespace

CarlemanSides carleman_sides(const SpaceTimeField& u, double gamma,
                             const CarlemanProbeConfig& cfg,
                             const CoefficientSlices& A) {
  if (!cfg.weight) throw ConfigError("carleman: config carries no weight");
  return sides_from_norms(slice_norms(u, cfg, A), u.time_grid(), gamma, cfg);
}

double carleman_bump(double t, double T) {
  return time_bump(t, T / 8.0, 3.0 * T / 8.0);
}

void GammaSweepResult::write_csv(std::ostream& os) const {
  os << "gamma,min_c,argmin_member\n";
  char line[128];
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%d\n", row.gamma,
                  row.min_c, row.argmin_member);
    os << line;
  }
}

GammaSweepResult gamma_sweep(
    const std::function<SpaceTimeField(int)>& member_at, int ensemble_size,
    const CarlemanProbeConfig& cfg, const CoefficientSlices& A) {
  if (!cfg.weight) throw ConfigError("gamma_sweep: config carries no weight");
  if (cfg.gamma_list.empty())
    throw ConfigError("gamma_sweep: empty gamma list");
  if (ensemble_size <= 0) throw ConfigError("gamma_sweep: empty ensemble");

  // the whole sweep must live inside the weight domain
  const TimeGrid tg = member_at(0).time_grid();
  for (double gamma : cfg.gamma_list)
    if (gamma * tg.horizon > cfg.weight->tau_max() + 1e-12)
      throw DomainError("gamma_sweep: gamma * T = " +
                        std::to_string(gamma * tg.horizon) +
                        " exceeds the weight domain tau_max = " +
                        std::to_string(cfg.weight->tau_max()));

  // gamma0: smallest swept gamma with Phi''(gamma(T-t)) >= 1 on [0, T/2];
  // Phi'' is nondecreasing, so the minimum sits at t = T/2
  double gamma0 = kInf;
  for (double gamma : cfg.gamma_list) {
    if (cfg.weight->log_Phi_second_fd(0.5 * gamma * tg.horizon) >= -1e-12) {
      gamma0 = std::min(gamma0, gamma);
    }
  }

  const int n_gamma = static_cast<int>(cfg.gamma_list.size());
  std::vector<std::vector<double>> c(ensemble_size,
                                     std::vector<double>(n_gamma, 0.0));
  parallel_for(ensemble_size, [&](int member) {
    const SpaceTimeField u = member_at(member);
    const auto norms = slice_norms(u, cfg, A);
    for (int gi = 0; gi < n_gamma; ++gi)
      c[member][gi] =
          sides_from_norms(norms, u.time_grid(), cfg.gamma_list[gi], cfg).c;
  });

  GammaSweepResult out;
  out.gamma0 = gamma0;
  out.pass = std::isfinite(gamma0);  // no qualifying gamma certifies nothing
  for (int gi = 0; gi < n_gamma; ++gi) {
    GammaSweepRow row{cfg.gamma_list[gi], kInf, -1};
    for (int member = 0; member < ensemble_size; ++member) {
      if (c[member][gi] < row.min_c) {
        row.min_c = c[member][gi];
        row.argmin_member = member;
      }
    }
    if (cfg.gamma_list[gi] >= gamma0 &&
        !(row.min_c >= 1e-6 && std::isfinite(row.min_c)))
      out.pass = false;
    out.rows.push_back(row);
  }
  return out;
}

void ProofLedger::write_csv(std::ostream& os) const {
  os << "inequality,time_index,time,lhs,rhs,holds\n";
  char line[256];
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%s,%d,%.17g,%.17g,%.17g,%d\n",
                  row.inequality.c_str(), row.time_index, row.time, row.lhs,
                  row.rhs, row.holds ? 1 : 0);
    os << line;
  }
}

ProofLedger proof_ledger_probe(const SpectralField& v_block, int nu,
                               double gamma, const CarlemanProbeConfig& cfg,
                               const CoefficientSlices& A,
                               const TimeGrid& tg) {
  if (!cfg.weight) throw ConfigError("proof_ledger: config carries no weight");
  const TorusGrid& g = v_block.grid();
  if (nu < 0 || nu > g.k_max)
    throw DomainError("proof_ledger: nu outside [0, k_max]");
  // Bernstein precondition on the spatial block
  bernstein_check(v_block, nu, 0);

  const double eps = nu == 0 ? 0.5 : std::pow(2.0, -2.0 * nu);
  const double T = tg.horizon;
  const CarlemanWeight& w = *cfg.weight;
  if (gamma * T > w.tau_max() + 1e-12)
    throw DomainError("proof_ledger: gamma * T exceeds the weight domain");

  ProofLedger ledger;
  ledger.nu = nu;
  ledger.gamma = gamma;
  ledger.epsilon = eps;

  const double lambda0 = A.lambda0();
  const double two_nu = std::pow(2.0, nu);
  const double block_floor = 0.125 * lambda0 * two_nu * two_nu;  // lambda0/8 2^{2nu}
  const ParaproductConfig pcfg(cfg.m, cfg.s, g);

  const SpaceTimeField v = SpaceTimeField::tensor(
      tg, [T](double t) { return carleman_bump(t, T); }, v_block);
  check_support(v);
  const SpaceTimeField vt = v.dt_centered();
  const int end = integration_end(tg);

  // B = sum_jk d_j(T^m_{a_jk} d_k v); cached per distinct coefficient slice
  std::map<const CoefficientMatrix*, SpectralField> b_cache;
  auto b_of = [&](int i) -> SpectralField {
    const CoefficientMatrix* key = A.per_time[i].get();
    auto it = b_cache.find(key);
    if (it == b_cache.end())
      it = b_cache
               .emplace(key, divergence_form_para(*key, v_block, pcfg))
               .first;
    const double bump = carleman_bump(tg.t(i), T);
    return cd{bump, 0.0} * it->second;
  };

  bool all_hold = true;
  auto push = [&](const std::string& inequality, int idx, double t, double lhs,
                  double rhs, bool holds) {
    ledger.rows.push_back({inequality, idx, t, lhs, rhs, holds});
    all_hold = all_hold && holds;
  };

  // -- per-slice chain ------------------------------------------------
  double int_lhs = 0.0, int_v_sq = 0.0;
  const double dt = tg.dt();
  for (int i = 0; i <= end; ++i) {
    const double t = tg.t(i);
    const double trap = (i == 0 || i == end) ? 0.5 * dt : dt;
    const SpectralField vi = v.slice(i);
    const double v_l2 = vi.l2_norm();
    const double phi_prime = w.phi_inv(gamma * (T - t));
    if (!std::isfinite(phi_prime))
      throw DomainError("proof_ledger: Phi' overflows at this gamma");

    // branch condition, recorded for every sample
    push("branch_phi_small", i, t, phi_prime, block_floor,
         phi_prime <= block_floor);

    const SpectralField Bi = b_of(i);
    const SpectralField full = vt.slice(i) + Bi + cd{phi_prime, 0.0} * vi;
    const double left = full.l2_norm() * full.l2_norm();
    int_lhs += trap * left;
    int_v_sq += trap * v_l2 * v_l2;
    if (v_l2 == 0.0) continue;  // chain rows are trivial off the support

    const double B_l2 = Bi.l2_norm();
    const double pairing = std::abs(inner_l2(Bi, vi));
    const double grad_sq = grad_l2_sq(vi);

    if (nu >= 1) {
      // |grad v_nu| >= 2^{nu-1} |v_nu| (certified support gives more)
      push("bernstein_lower", i, t, std::sqrt(grad_sq),
           0.5 * two_nu * v_l2, std::sqrt(grad_sq) >= 0.5 * two_nu * v_l2);
    }

    push("posest_cauchy_schwarz", i, t, B_l2 * v_l2, pairing,
         B_l2 * v_l2 >= pairing * (1.0 - 1e-10));

    // Re sum <T^m d_k v, d_j v> >= (lambda0/2) |grad v|^2
    double pos = 0.0;
    for (int j = 0; j < g.dim; ++j)
      for (int k = 0; k < g.dim; ++k)
        pos += inner_l2(modified_T(pcfg, A.at(i).entry(j, k),
                                   vi.derivative(k)),
                        vi.derivative(j))
                   .real();
    push("posest_positivity", i, t, pos, 0.5 * lambda0 * grad_sq,
         pos >= 0.5 * lambda0 * grad_sq * (1.0 - 1e-10));

    push("posest_chain", i, t, B_l2 * v_l2, block_floor * v_l2 * v_l2,
         B_l2 * v_l2 >= block_floor * v_l2 * v_l2 * (1.0 - 1e-10));

    // energy identity with the full weighted term
    const SpectralField weighted = Bi + cd{phi_prime, 0.0} * vi;
    const double vt_l2 = vt.slice(i).l2_norm();
    const double right = vt_l2 * vt_l2 +
                         weighted.l2_norm() * weighted.l2_norm() +
                         2.0 * inner_l2(vt.slice(i), weighted).real();
    push("energy_identity", i, t, left, right,
         std::fabs(left - right) <=
             1e-10 * std::max({left, right, 1e-30}));
  }

  // -- mollification split --------------------------------------------
  {
    const MollifierKernel kernel(eps);
    // build per-entry space-time fields over the full grid
    double c_aTa = 0.0, c_adt = 0.0;
    const double mu_eps = w.modulus()(eps);
    for (int j = 0; j < g.dim; ++j) {
      for (int k = j; k < g.dim; ++k) {
        std::vector<SpectralField> entry_slices;
        entry_slices.reserve(tg.samples);
        for (int i = 0; i < tg.samples; ++i)
          entry_slices.push_back(A.at(i).entry(j, k));
        const SpaceTimeField entry(tg, std::move(entry_slices));
        const SpaceTimeField smooth = mollify_time(entry, kernel);
        const SpaceTimeField smooth_dt = smooth.dt_centered();
        // sample the support slices
        const int stride = std::max(1, (end + 1) / 32);
        for (int i = 0; i <= end; i += stride) {
          const SpectralField vk = v.slice(i).derivative(
              g.dim == 1 ? 0 : std::min(k, g.dim - 1));
          const double denom = vk.l2_norm();
          if (denom == 0.0) continue;
          const SpectralField diff_a = A.at(i).entry(j, k) - smooth.slice(i);
          const double lhs1 =
              modified_T(pcfg, diff_a, vk).l2_norm() / (mu_eps * denom);
          c_aTa = std::max(c_aTa, lhs1);
          const double lhs2 = modified_T(pcfg, smooth_dt.slice(i), vk).l2_norm() *
                              eps / (mu_eps * denom);
          c_adt = std::max(c_adt, lhs2);
        }
      }
    }
    ledger.measured["C_T_a_minus_a_eps"] = c_aTa;
    ledger.measured["C_T_dt_a_eps"] = c_adt;
    push("mollify_a_minus_a_eps", -1, 0.0, c_aTa, kInf,
         std::isfinite(c_aTa));
    push("mollify_dt_a_eps", -1, 0.0, c_adt, kInf, std::isfinite(c_adt));
  }

  // -- final block bound ------------------------------------------------
  if (int_v_sq > 0.0) {
    if (nu == 0) {
      // LHS >= (gamma/2) int |v_0|^2
      push("estnu=0", -1, 0.0, int_lhs, 0.5 * gamma * int_v_sq,
           int_lhs >= 0.5 * gamma * int_v_sq);
      ledger.measured["estnu0_margin"] =
          int_lhs / (0.5 * gamma * int_v_sq);
    } else {
      // LHS >= (gamma/2 + c gamma^{1/2} 2^{2nu}) int |v|^2 for some c > 0;
      // the extracted c is reported, the boolean asks for a positive margin
      const double c_star =
          (int_lhs - 0.5 * gamma * int_v_sq) /
          (std::sqrt(gamma) * two_nu * two_nu * int_v_sq);
      ledger.measured["block_bound_c"] = c_star;
      push("estblock", -1, 0.0, int_lhs, 0.5 * gamma * int_v_sq,
           c_star > 0.0);
    }
  }

  ledger.all_hold = all_hold;
  return ledger;
}

}  // namespace paraweight
