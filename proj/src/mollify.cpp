#include "paraweight/mollify.hpp"

#include <cmath>
#include <string>

#include "paraweight/errors.hpp"
#include "paraweight/quadrature.hpp"

namespace paraweight {

namespace {

double rho_raw(double s) {
  if (std::fabs(s) >= 0.5) return 0.0;
  return std::exp(-1.0 / (1.0 - 4.0 * s * s));
}

double rho_mass() {
  static const double mass = adaptive_simpson(rho_raw, -0.5, 0.5, 1e-12);
  return mass;
}

}  // namespace

MollifierKernel::MollifierKernel(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw ConfigError("MollifierKernel: width must lie in (0, 1/2], got " +
                      std::to_string(epsilon));
}

double MollifierKernel::rho(double s) const { return rho_raw(s) / rho_mass(); }

std::vector<double> mollify_profile(const std::vector<double>& a, double dt,
                                    const MollifierKernel& kernel) {
  const double eps = kernel.epsilon();
  if (!(dt < eps / 4.0))
    throw ConfigError("mollify: dt must resolve the kernel (dt < eps/4)");
  const int M = static_cast<int>(a.size());
  const int half = static_cast<int>(std::ceil(0.5 * eps / dt));
  // the stencil is translation invariant; its discrete mass renormalizes
  // the trapezoid sum so constants pass through unchanged
  std::vector<double> stencil(2 * half + 1);
  double mass = 0.0;
  for (int o = -half; o <= half; ++o) {
    stencil[o + half] = kernel.rho(o * dt / eps);
    mass += stencil[o + half];
  }
  for (auto& w : stencil) w /= mass;

  std::vector<double> out(a.size(), 0.0);
  for (int i = 0; i < M; ++i) {
    double acc = 0.0;
    for (int o = -half; o <= half; ++o) {
      const int j = std::min(std::max(i + o, 0), M - 1);  // constant continuation
      acc += stencil[o + half] * a[j];
    }
    out[i] = acc;
  }
  return out;
}

SpaceTimeField mollify_time(const SpaceTimeField& a,
                            const MollifierKernel& kernel) {
  const TimeGrid& tg = a.time_grid();
  const TorusGrid& g = a.space_grid();
  const double dt = tg.dt();
  const double eps = kernel.epsilon();
  if (!(dt < eps / 4.0))
    throw ConfigError("mollify_time: dt must resolve the kernel (dt < eps/4)");

  const std::size_t nodes = g.nodes();
  std::vector<std::vector<cd>> samples(tg.samples, std::vector<cd>(nodes));
  std::vector<double> re(tg.samples), im(tg.samples);
  for (std::size_t node = 0; node < nodes; ++node) {
    for (int i = 0; i < tg.samples; ++i) {
      re[i] = a.slice(i).samples()[node].real();
      im[i] = a.slice(i).samples()[node].imag();
    }
    const auto re_s = mollify_profile(re, dt, kernel);
    const auto im_s = mollify_profile(im, dt, kernel);
    for (int i = 0; i < tg.samples; ++i) samples[i][node] = cd{re_s[i], im_s[i]};
  }
  std::vector<SpectralField> slices;
  slices.reserve(tg.samples);
  for (int i = 0; i < tg.samples; ++i)
    slices.push_back(SpectralField::from_samples(g, std::move(samples[i])));
  return SpaceTimeField(tg, std::move(slices));
}

MollificationConstants mollification_constants(
    const std::vector<double>& profile, double T, const Modulus& mu,
    double epsilon) {
  const int M = static_cast<int>(profile.size());
  const double dt = T / (M - 1);
  const MollifierKernel kernel(epsilon);
  const auto smooth = mollify_profile(profile, dt, kernel);

  double sup_diff = 0.0;
  for (int i = 0; i < M; ++i)
    sup_diff = std::max(sup_diff, std::fabs(smooth[i] - profile[i]));

  double sup_deriv = 0.0;
  for (int i = 1; i + 1 < M; ++i)
    sup_deriv = std::max(
        sup_deriv, std::fabs(smooth[i + 1] - smooth[i - 1]) / (2.0 * dt));

  const double mu_eps = mu(epsilon);
  return {epsilon, sup_diff / mu_eps, sup_deriv * epsilon / mu_eps};
}

ProbeReport probe_mollification(const Modulus& mu, double T, int M,
                                int nu_min, int nu_max) {
  ProbeReport rep;
  rep.inequality = "a-a_eps/a'_eps";
  rep.ensemble = nu_max - nu_min + 1;
  // the C^mu test profile: a(t) = |t - T/2|^{1/2} for mu = sqrt
  std::vector<double> profile(M);
  for (int i = 0; i < M; ++i) {
    const double t = T * i / (M - 1);
    profile[i] = std::sqrt(std::fabs(t - 0.5 * T));
  }

  double sup_lo = 1e300, sup_hi = 0.0, der_lo = 1e300, der_hi = 0.0;
  nlohmann::json detail = nlohmann::json::array();
  for (int nu = nu_min; nu <= nu_max; ++nu) {
    const double eps = std::pow(2.0, -2.0 * nu);
    const auto c = mollification_constants(profile, T, mu, eps);
    sup_lo = std::min(sup_lo, c.c_sup);
    sup_hi = std::max(sup_hi, c.c_sup);
    der_lo = std::min(der_lo, c.c_deriv);
    der_hi = std::max(der_hi, c.c_deriv);
    detail.push_back({{"epsilon", eps},
                      {"c_sup", c.c_sup},
                      {"c_deriv", c.c_deriv}});
  }
  rep.constant = std::max(sup_hi, der_hi);
  rep.per_resolution.emplace_back(M, rep.constant);
  rep.pass = sup_hi <= 2.0 * sup_lo && der_hi <= 2.0 * der_lo;
  rep.notes = detail.dump();
  return rep;
}

}  // namespace paraweight
