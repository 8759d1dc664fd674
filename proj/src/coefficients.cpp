#include "paraweight/coefficients.hpp"

#include <cmath>

#include "paraweight/errors.hpp"
#include "paraweight/spectral_ops.hpp"

namespace paraweight {

CoefficientMatrix::CoefficientMatrix(const TorusGrid& grid,
                                     std::vector<SpectralField> upper,
                                     double lambda0)
    : grid_(grid), upper_(std::move(upper)), lambda0_(lambda0) {
  const std::size_t expected = grid.dim == 1 ? 1 : 3;
  if (upper_.size() != expected)
    throw ConfigError("CoefficientMatrix: wrong entry count");
  for (const auto& e : upper_) {
    if (e.grid() != grid_) throw ConfigError("CoefficientMatrix: grid mismatch");
    if (e.max_abs_imag() > 1e-12 * std::max(e.max_abs(), 1.0))
      throw DomainError("CoefficientMatrix: entries must be real");
  }
  if (!(lambda0_ > 0.0 && lambda0_ <= 1.0))
    throw ConfigError("CoefficientMatrix: lambda0 must lie in (0, 1]");
  if (min_eigenvalue() < lambda0_ - 1e-10)
    throw ConfigError("CoefficientMatrix: ellipticity floor violated");
}

CoefficientMatrix CoefficientMatrix::scalar(const SpectralField& a,
                                            double lambda0) {
  const TorusGrid& g = a.grid();
  if (g.dim == 1) return CoefficientMatrix(g, {a}, lambda0);
  return CoefficientMatrix(g, {a, SpectralField::zero(g), a}, lambda0);
}

CoefficientMatrix CoefficientMatrix::identity(const TorusGrid& grid) {
  return scalar(SpectralField::constant(grid, cd{1.0, 0.0}), 1.0);
}

const SpectralField& CoefficientMatrix::entry(int j, int k) const {
  if (j < 0 || k < 0 || j >= dim() || k >= dim())
    throw DomainError("CoefficientMatrix::entry: index out of range");
  if (dim() == 1) return upper_[0];
  if (j == 0 && k == 0) return upper_[0];
  if (j == 1 && k == 1) return upper_[2];
  return upper_[1];  // (0,1) and (1,0) share storage
}

double CoefficientMatrix::min_eigenvalue() const {
  double best = std::numeric_limits<double>::infinity();
  if (dim() == 1) {
    for (const auto& v : upper_[0].samples())
      best = std::min(best, v.real());
    return best;
  }
  const auto& a = upper_[0].samples();
  const auto& b = upper_[1].samples();
  const auto& c = upper_[2].samples();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double tr = a[i].real() + c[i].real();
    const double det =
        a[i].real() * c[i].real() - b[i].real() * b[i].real();
    best = std::min(best, 0.5 * (tr - std::sqrt(std::max(
                                          tr * tr - 4.0 * det, 0.0))));
  }
  return best;
}

double CoefficientMatrix::max_lip_norm() const {
  double m = 0.0;
  for (const auto& e : upper_)
    m = std::max(m, lip_norm(e, NormMethod::direct).value);
  return m;
}

namespace {

SpectralField two_plus_sin(const TorusGrid& g) {
  std::vector<cd> samples(g.nodes());
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i)
      samples[i] = cd{2.0 + std::sin(i * g.spacing()), 0.0};
  } else {
    for (int r = 0; r < g.n; ++r)
      for (int c = 0; c < g.n; ++c)
        samples[static_cast<std::size_t>(r) * g.n + c] =
            cd{2.0 + std::sin(r * g.spacing()), 0.0};
  }
  return SpectralField::from_samples(g, samples);
}

// lacunary C^mu profile in [0, 1], amplitude 1
double lacunary_profile(const Modulus& mu, double theta) {
  constexpr int kTerms = 8;
  double sum = 0.0, scale = 0.0;
  for (int j = 1; j <= kTerms; ++j) {
    const double amp = mu(std::pow(4.0, -j));
    const double phase = 2.0 * kPi * std::fmod(0.6180339887498949 * j, 1.0);
    sum += amp * std::cos(std::pow(4.0, j) * 2.0 * kPi * theta + phase);
    scale += amp;
  }
  return sum / scale;
}

}  // namespace

CoefficientRecipe CoefficientRecipe::parse(const std::string& name) {
  CoefficientRecipe r;
  r.name = name;
  if (name == "identity") {
    r.lambda0 = 1.0;
  } else if (name == "scalar:2+sin") {
    r.lambda0 = 1.0;
  } else if (name.rfind("rough-in-time:", 0) == 0) {
    modulus_catalogue(name.substr(14));  // validates the modulus name
    r.lambda0 = 1.0;  // min of 2 + profile/2 is 1.5, floor 1 is safely elliptic
    r.time_dependent = true;
  } else {
    throw ConfigError("unknown coefficient recipe '" + name + "'");
  }
  return r;
}

std::shared_ptr<const CoefficientMatrix> CoefficientRecipe::slice(
    const TorusGrid& grid, double t, double T) const {
  if (name == "identity")
    return std::make_shared<CoefficientMatrix>(
        CoefficientMatrix::identity(grid));
  if (name == "scalar:2+sin")
    return std::make_shared<CoefficientMatrix>(
        CoefficientMatrix::scalar(two_plus_sin(grid), 1.0));
  const auto mu = modulus_catalogue(name.substr(14));
  const double value = 2.0 + 0.5 * lacunary_profile(mu, t / T);
  return std::make_shared<CoefficientMatrix>(CoefficientMatrix::scalar(
      SpectralField::constant(grid, cd{value, 0.0}), 1.0));
}

}  // namespace paraweight
