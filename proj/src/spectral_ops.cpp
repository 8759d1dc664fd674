#include "paraweight/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "paraweight/errors.hpp"

namespace paraweight {

SpectralField apply_S(const SpectralField& u, int k) {
  if (k < -1) throw DomainError("apply_S: k must be >= -1");
  if (k == -1) return SpectralField::zero(u.grid());
  return u.apply_multiplier([&u, k](std::size_t flat) {
    return cd{chi_k(k, u.freq_norm(flat)), 0.0};
  });
}

SpectralField apply_delta(const SpectralField& u, int k) {
  if (k < 0) throw DomainError("apply_delta: k must be >= 0");
  return u.apply_multiplier([&u, k](std::size_t flat) {
    return cd{delta_window(k, u.freq_norm(flat)), 0.0};
  });
}

SpectralField DyadicDecomposition::reconstruct() const {
  SpectralField sum = blocks.front();
  for (std::size_t k = 1; k < blocks.size(); ++k) sum = sum + blocks[k];
  return sum;
}

void DyadicDecomposition::write_energy_csv(std::ostream& os) const {
  os << "k,delta_k\n";
  char line[64];
  for (std::size_t k = 0; k < block_energies.size(); ++k) {
    std::snprintf(line, sizeof(line), "%zu,%.17g\n", k, block_energies[k]);
    os << line;
  }
}

DyadicDecomposition decompose(const SpectralField& u, double s) {
  DyadicDecomposition d;
  d.s_exponent = s;
  const int k_max = u.grid().k_max;
  d.blocks.reserve(k_max + 1);
  d.block_energies.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    d.blocks.push_back(apply_delta(u, k));
    d.block_energies.push_back(std::pow(2.0, k * s) *
                               d.blocks.back().l2_norm());
  }
  return d;
}

double h_norm(const SpectralField& u, double s, NormMethod method) {
  if (method == NormMethod::direct) return h_norm_direct(u, s);
  const auto d = decompose(u, s);
  double sum = 0.0;
  for (double e : d.block_energies) sum += e * e;
  return std::sqrt(sum);
}

namespace {

double max_gradient_abs(const SpectralField& a) {
  const TorusGrid& g = a.grid();
  if (g.dim == 1) return a.derivative(0).max_abs();
  const auto dx = a.derivative(0);
  const auto dy = a.derivative(1);
  double m = 0.0;
  for (std::size_t i = 0; i < dx.samples().size(); ++i)
    m = std::max(m, std::sqrt(std::norm(dx.samples()[i]) +
                              std::norm(dy.samples()[i])));
  return m;
}

}  // namespace

LipNormResult lip_norm(const SpectralField& a, NormMethod method) {
  if (a.max_abs_imag() > 1e-12 * std::max(a.max_abs(), 1.0))
    throw DomainError("lip_norm: field must be real valued");
  LipNormResult res;
  const int k_max = a.grid().k_max;
  res.dyadic_decay.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k)
    res.dyadic_decay.push_back(std::pow(2.0, k) *
                               apply_delta(a, k).max_abs());
  if (method == NormMethod::direct) {
    res.value = a.max_abs() + max_gradient_abs(a);
  } else {
    double sup = 0.0;
    for (int k = 0; k <= k_max; ++k)
      sup = std::max(sup, max_gradient_abs(apply_S(a, k)));
    res.value = a.max_abs() + sup;
  }
  return res;
}

double support_radius(const SpectralField& u, double rel_tol) {
  double peak = 0.0;
  for (const auto& c : u.coeffs()) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0.0;
  double radius = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::abs(u.coeffs()[i]) > rel_tol * peak)
      radius = std::max(radius, u.freq_norm(i));
  return radius;
}

double support_min_radius(const SpectralField& u, double rel_tol) {
  double peak = 0.0;
  for (const auto& c : u.coeffs()) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return std::numeric_limits<double>::infinity();
  double radius = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::abs(u.coeffs()[i]) > rel_tol * peak)
      radius = std::min(radius, u.freq_norm(i));
  return radius;
}

double bernstein_check(const SpectralField& block, int nu, int axis) {
  if (nu < 0) throw DomainError("bernstein_check: nu must be >= 0");
  const double limit = 1.9 * std::pow(2.0, nu);
  if (support_radius(block) >= limit)
    throw PreconditionError(
        "bernstein_check: not a nu-block: support radius " +
        std::to_string(support_radius(block)) + " >= " +
        std::to_string(limit));
  const double denom = block.l2_norm();
  if (denom == 0.0) return 0.0;
  return block.derivative(axis).l2_norm() / denom;
}

}  // namespace paraweight
