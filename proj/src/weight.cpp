#include "paraweight/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "paraweight/errors.hpp"
#include "paraweight/quadrature.hpp"

namespace paraweight {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

CarlemanWeight CarlemanWeight::build(const Modulus& mu, double tau_max,
                                     double quadrature_tol) {
  WeightBuildOptions options;
  options.quadrature_tol = quadrature_tol;
  return build(mu, tau_max, options);
}

CarlemanWeight CarlemanWeight::build(const Modulus& mu, double tau_max,
                                     const WeightBuildOptions& options) {
  if (!(tau_max > 0.0) || !std::isfinite(tau_max))
    throw DomainError("build_weight: tau_max must be positive and finite");
  const auto report = validate_modulus(mu);
  if (!report.pass)
    throw DomainError("build_weight: modulus '" + mu.name +
                      "' failed validation: " + report.summary());

  const double h = options.knot_step;
  // integrand of phi in r = log t: g(r) = e^{-r} / mu(e^{-r}) in (0, 1].
  // e^{-r} is clamped to the smallest normal double; beyond that point
  // phi' is frozen, which only affects tau values past the range where
  // Phi' itself is representable.
  const auto g = [&mu](double r) {
    const double s = std::max(std::exp(-r), 2.3e-308);
    return s / mu(s);
  };

  CarlemanWeight w;
  w.mu_ = mu;
  w.tau_max_ = tau_max;
  w.h_ = h;
  w.tau_ = {0.0};
  w.log_phi_ = {-kInf};

  double tau_compensation = 0.0;  // Kahan carry for the tau sum
  double g_right = g(0.0);
  std::size_t extra_after_target = 0;
  // saturation checkpoints at doublings of w
  double next_check_w = 1.0;
  double tau_at_prev_check = 0.0;

  while (true) {
    const std::size_t j = w.tau_.size() - 1;
    if (j + 1 > options.max_knots) {
      std::ostringstream os;
      os << "build_weight: tau_max = " << tau_max
         << " needs more than " << options.max_knots
         << " knots at knot_step = " << h << " (phi has reached "
         << w.tau_.back() << "); raise knot_step or lower tau_max";
      throw WeightRangeError(os.str());
    }
    const double w0 = static_cast<double>(j) * h;
    const double w1 = w0 + h;

    const double g0 = g_right;
    const double g1 = g(w0 + 0.25 * h);
    const double g2 = g(w0 + 0.5 * h);
    const double g3 = g(w0 + 0.75 * h);
    const double g4 = g(w1);
    g_right = g4;

    // tau increment and Phi segment share the samples; the Phi segment is
    // integral e^{x} g(x) dx = e^{w0} * integral e^{x-w0} g dx.
    const double seg_tau = simpson_refined(h, g0, g1, g2, g3, g4);
    const double seg_phi =
        simpson_refined(h, g0, std::exp(0.25 * h) * g1, std::exp(0.5 * h) * g2,
                        std::exp(0.75 * h) * g3, std::exp(h) * g4);

    const double y = seg_tau - tau_compensation;
    const double t = w.tau_.back() + y;
    tau_compensation = (t - w.tau_.back()) - y;
    w.tau_.push_back(t);
    w.seg_.push_back(seg_tau);
    w.log_phi_.push_back(
        log_add_exp(w.log_phi_.back(), w0 + std::log(seg_phi)));

    if (w.tau_.back() >= tau_max) {
      if (++extra_after_target >= 3) break;  // interior room past tau_max
    } else if (w1 >= next_check_w) {
      // phi of a non-Osgood modulus saturates: once a full doubling of w
      // adds nothing, the remaining tail is numerically dead
      const double sup_phi = w.tau_.back();
      if (next_check_w >= 64.0 &&
          sup_phi - tau_at_prev_check <= 1e-9 * std::max(sup_phi, 1.0)) {
        std::ostringstream os;
        os << "build_weight: weight domain exhausted for modulus '" << mu.name
           << "': sup phi = " << sup_phi << " < tau_max = " << tau_max;
        throw WeightDomainExhausted(os.str(), sup_phi);
      }
      tau_at_prev_check = sup_phi;
      next_check_w *= 2.0;
    }
  }

  std::vector<double> ws(w.tau_.size());
  for (std::size_t j = 0; j < ws.size(); ++j)
    ws[j] = static_cast<double>(j) * h;
  w.w_of_tau_ = MonotoneCubic(w.tau_, ws);
  return w;
}

double CarlemanWeight::phi(double t) const {
  if (!(t >= 1.0)) throw DomainError("phi: t must be >= 1");
  const double r = std::log(t);
  const double w_last = static_cast<double>(tau_.size() - 1) * h_;
  if (r > w_last + 1e-12) throw DomainError("phi: t beyond the table");
  const std::size_t j = std::min(static_cast<std::size_t>(r / h_),
                                 tau_.size() - 2);
  const auto g = [this](double x) {
    const double s = std::exp(-x);
    return s / mu_(s);
  };
  const double w0 = static_cast<double>(j) * h_;
  return hermite(r, w0, w0 + h_, tau_[j], tau_[j + 1], g(w0), g(w0 + h_));
}

double CarlemanWeight::log_phi_inv(double tau) const {
  if (!(tau >= 0.0) || tau > tau_.back() + 1e-12)
    throw DomainError("phi_inv: tau outside the table domain [0, " +
                      std::to_string(tau_.back()) + "]");
  if (tau <= 0.0) return 0.0;
  return std::max(w_of_tau_(tau), 0.0);
}

double CarlemanWeight::phi_inv(double tau) const {
  return std::exp(log_phi_inv(tau));
}

double CarlemanWeight::partial_log_segment(std::size_t j, double w) const {
  // log of integral_{w_j}^{w} e^x g(x) dx for w inside segment j
  const double w0 = static_cast<double>(j) * h_;
  const double d = w - w0;
  if (d <= 0.0) return -kInf;
  const auto g = [this](double x) {
    const double s = std::exp(-x);
    return s / mu_(s);
  };
  const double f0 = g(w0);
  const double f1 = std::exp(0.25 * d) * g(w0 + 0.25 * d);
  const double f2 = std::exp(0.5 * d) * g(w0 + 0.5 * d);
  const double f3 = std::exp(0.75 * d) * g(w0 + 0.75 * d);
  const double f4 = std::exp(d) * g(w0 + d);
  return w0 + std::log(simpson_refined(d, f0, f1, f2, f3, f4));
}

double CarlemanWeight::log_Phi(double tau) const {
  if (!(tau >= 0.0) || tau > tau_.back() + 1e-12)
    throw DomainError("Phi: tau outside the table domain");
  if (tau <= 0.0) return -kInf;
  const double w = log_phi_inv(tau);
  std::size_t j = std::min(static_cast<std::size_t>(w / h_), tau_.size() - 2);
  return log_add_exp(log_phi_[j], partial_log_segment(j, w));
}

double CarlemanWeight::Phi(double tau) const { return std::exp(log_Phi(tau)); }

std::size_t CarlemanWeight::nearest_interior_knot(double tau) const {
  if (!(tau >= 0.0) || tau > tau_.back() + 1e-12)
    throw DomainError("Phi_second: tau outside the table domain");
  const double w = tau <= 0.0 ? 0.0 : w_of_tau_(tau);
  auto j = static_cast<std::ptrdiff_t>(std::llround(w / h_));
  j = std::max<std::ptrdiff_t>(1, j);
  j = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(tau_.size()) - 2, j);
  return static_cast<std::size_t>(j);
}

double CarlemanWeight::log_Phi_second_fd_at_knot(std::size_t j) const {
  if (j < 1 || j + 1 >= tau_.size())
    throw DomainError("Phi_second: knot not interior");
  const double w_lo = static_cast<double>(j - 1) * h_;
  const double w_hi = static_cast<double>(j + 1) * h_;
  // (e^{w+} - e^{w-}) / (tau_{j+1} - tau_{j-1}), assembled in logs
  const double num = w_hi + std::log1p(-std::exp(w_lo - w_hi));
  return num - std::log(seg_[j - 1] + seg_[j]);
}

double CarlemanWeight::log_Phi_second_fd(double tau) const {
  return log_Phi_second_fd_at_knot(nearest_interior_knot(tau));
}

double CarlemanWeight::Phi_second_fd(double tau) const {
  return std::exp(log_Phi_second_fd(tau));
}

void CarlemanWeight::write_csv(std::ostream& os) const {
  const std::size_t stride = std::max<std::size_t>(1, tau_.size() / 4096);
  os << "tau,phi_inv,Phi,Phi_prime,Phi_second\n";
  char line[256];
  for (std::size_t j = 1; j + 1 < tau_.size(); j += stride) {
    const double tau = tau_[j];
    const double pinv = std::exp(static_cast<double>(j) * h_);
    const double Phi_v = std::exp(log_phi_[j]);
    const double Phi2 = std::exp(log_Phi_second_fd_at_knot(j));
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", tau,
                  pinv, Phi_v, pinv, Phi2);
    os << line;
  }
}

OdeCheckResult check_weight_ode(const CarlemanWeight& w,
                                const std::vector<double>& tau_grid,
                                double tol) {
  if (tau_grid.empty())
    throw DomainError("check_weight_ode: empty tau grid");
  OdeCheckResult res;
  res.second_derivative_nondecreasing = true;
  double prev_log_fd = -std::numeric_limits<double>::infinity();
  double prev_tau = -1.0;
  for (double tau : tau_grid) {
    if (!(tau > prev_tau))
      throw DomainError("check_weight_ode: tau grid must strictly increase");
    prev_tau = tau;
    const std::size_t j = w.nearest_interior_knot(tau);  // domain-checked
    const double log_fd = w.log_Phi_second_fd_at_knot(j);
    const double w_knot = w.log_phi_inv_at_knot(j);
    const double s = std::exp(-w_knot);
    const double log_rhs = 2.0 * w_knot + std::log(w.modulus()(s));
    res.max_rel_residual = std::max(
        res.max_rel_residual, std::fabs(1.0 - std::exp(log_rhs - log_fd)));
    if (log_fd < prev_log_fd - 1e-12)
      res.second_derivative_nondecreasing = false;
    prev_log_fd = log_fd;
  }
  res.pass =
      res.max_rel_residual <= tol && res.second_derivative_nondecreasing;
  return res;
}

}  // namespace paraweight
