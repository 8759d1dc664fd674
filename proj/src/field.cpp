#include "paraweight/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paraweight/errors.hpp"
#include "paraweight/fft.hpp"

namespace paraweight {

namespace {

int freq_of_index(int idx, int n) { return idx < n / 2 ? idx : idx - n; }

int index_of_freq(int xi, int n) { return xi >= 0 ? xi : xi + n; }

}  // namespace

SpectralField::SpectralField(TorusGrid grid, std::vector<cd> samples,
                             std::vector<cd> coeffs)
    : grid_(grid), samples_(std::move(samples)), coeffs_(std::move(coeffs)) {}

SpectralField SpectralField::from_samples(const TorusGrid& grid,
                                          std::vector<cd> samples) {
  if (samples.size() != grid.nodes())
    throw ConfigError("SpectralField: sample count does not match the grid");
  std::vector<cd> coeffs = samples;
  fft::forward(grid.dim, grid.n, coeffs.data());
  const double scale = 1.0 / static_cast<double>(grid.nodes());
  for (auto& c : coeffs) c *= scale;
  return SpectralField(grid, std::move(samples), std::move(coeffs));
}

SpectralField SpectralField::from_coeffs(const TorusGrid& grid,
                                         std::vector<cd> coeffs) {
  if (coeffs.size() != grid.nodes())
    throw ConfigError("SpectralField: coeff count does not match the grid");
  std::vector<cd> samples = coeffs;
  fft::backward(grid.dim, grid.n, samples.data());
  return SpectralField(grid, std::move(samples), std::move(coeffs));
}

SpectralField SpectralField::zero(const TorusGrid& grid) {
  return SpectralField(grid, std::vector<cd>(grid.nodes(), cd{0.0, 0.0}),
                       std::vector<cd>(grid.nodes(), cd{0.0, 0.0}));
}

SpectralField SpectralField::constant(const TorusGrid& grid, cd value) {
  std::vector<cd> coeffs(grid.nodes(), cd{0.0, 0.0});
  coeffs[0] = value;
  return SpectralField(grid, std::vector<cd>(grid.nodes(), value),
                       std::move(coeffs));
}

SpectralField SpectralField::mode(const TorusGrid& grid, int xi_x, int xi_y) {
  if (std::abs(xi_x) > grid.n / 2 || (grid.dim == 2 && std::abs(xi_y) > grid.n / 2))
    throw DomainError("SpectralField::mode: frequency outside the lattice");
  std::vector<cd> coeffs(grid.nodes(), cd{0.0, 0.0});
  const int ix = index_of_freq(xi_x == grid.n / 2 ? -grid.n / 2 : xi_x, grid.n);
  if (grid.dim == 1) {
    coeffs[static_cast<std::size_t>(ix)] = cd{1.0, 0.0};
  } else {
    const int iy =
        index_of_freq(xi_y == grid.n / 2 ? -grid.n / 2 : xi_y, grid.n);
    coeffs[static_cast<std::size_t>(ix) * grid.n + iy] = cd{1.0, 0.0};
  }
  return from_coeffs(grid, std::move(coeffs));
}

int SpectralField::freq(std::size_t flat, int axis) const {
  if (grid_.dim == 1) return freq_of_index(static_cast<int>(flat), grid_.n);
  const int row = static_cast<int>(flat) / grid_.n;
  const int col = static_cast<int>(flat) % grid_.n;
  return freq_of_index(axis == 0 ? row : col, grid_.n);
}

double SpectralField::freq_norm(std::size_t flat) const {
  if (grid_.dim == 1)
    return std::fabs(
        static_cast<double>(freq_of_index(static_cast<int>(flat), grid_.n)));
  const double fx = freq(flat, 0), fy = freq(flat, 1);
  return std::sqrt(fx * fx + fy * fy);
}

double SpectralField::l2_norm() const {
  double sum = 0.0;
  for (const auto& c : coeffs_) sum += std::norm(c);
  return std::sqrt(sum * std::pow(2.0 * kPi, grid_.dim));
}

double SpectralField::l2_norm_nodes() const {
  double sum = 0.0;
  for (const auto& v : samples_) sum += std::norm(v);
  return std::sqrt(sum * grid_.cell_volume());
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

double SpectralField::max_abs_imag() const {
  double m = 0.0;
  for (const auto& v : samples_) m = std::max(m, std::fabs(v.imag()));
  return m;
}

SpectralField SpectralField::apply_multiplier(
    const std::function<cd(std::size_t)>& m) const {
  std::vector<cd> coeffs(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs[i] = m(i) * coeffs_[i];
  return from_coeffs(grid_, std::move(coeffs));
}

SpectralField SpectralField::derivative(int axis) const {
  if (axis < 0 || axis >= grid_.dim)
    throw DomainError("derivative: axis out of range");
  // the unpaired Nyquist mode gets a zero multiplier, as usual for odd
  // spectral derivatives
  return apply_multiplier([this, axis](std::size_t flat) {
    const int xi = freq(flat, axis);
    if (xi == -grid_.n / 2) return cd{0.0, 0.0};
    return cd{0.0, static_cast<double>(xi)};
  });
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  if (a.grid_ != b.grid_) throw ConfigError("field +: grid mismatch");
  std::vector<cd> samples(a.samples_.size()), coeffs(a.coeffs_.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = a.samples_[i] + b.samples_[i];
    coeffs[i] = a.coeffs_[i] + b.coeffs_[i];
  }
  return SpectralField(a.grid_, std::move(samples), std::move(coeffs));
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  if (a.grid_ != b.grid_) throw ConfigError("field -: grid mismatch");
  std::vector<cd> samples(a.samples_.size()), coeffs(a.coeffs_.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = a.samples_[i] - b.samples_[i];
    coeffs[i] = a.coeffs_[i] - b.coeffs_[i];
  }
  return SpectralField(a.grid_, std::move(samples), std::move(coeffs));
}

SpectralField operator*(cd scale, const SpectralField& a) {
  std::vector<cd> samples(a.samples_.size()), coeffs(a.coeffs_.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = scale * a.samples_[i];
    coeffs[i] = scale * a.coeffs_[i];
  }
  return SpectralField(a.grid_, std::move(samples), std::move(coeffs));
}

cd inner_l2(const SpectralField& f, const SpectralField& g) {
  if (f.grid() != g.grid()) throw ConfigError("inner_l2: grid mismatch");
  cd sum{0.0, 0.0};
  const auto& fc = f.coeffs();
  const auto& gc = g.coeffs();
  for (std::size_t i = 0; i < fc.size(); ++i) sum += fc[i] * std::conj(gc[i]);
  return sum * std::pow(2.0 * kPi, f.grid().dim);
}

SpectralField dealiased_product(const SpectralField& a,
                                const SpectralField& b) {
  if (a.grid() != b.grid())
    throw ConfigError("dealiased_product: grid mismatch");
  const TorusGrid& g = a.grid();
  const int n = g.n, n2 = 2 * n;
  const TorusGrid padded(g.dim, n2);

  auto pad = [&](const std::vector<cd>& c) {
    std::vector<cd> out(padded.nodes(), cd{0.0, 0.0});
    if (g.dim == 1) {
      for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(index_of_freq(freq_of_index(i, n), n2))] =
            c[static_cast<std::size_t>(i)];
    } else {
      for (int r = 0; r < n; ++r)
        for (int cidx = 0; cidx < n; ++cidx)
          out[static_cast<std::size_t>(
                  index_of_freq(freq_of_index(r, n), n2)) *
                  n2 +
              index_of_freq(freq_of_index(cidx, n), n2)] =
              c[static_cast<std::size_t>(r) * n + cidx];
    }
    return out;
  };

  std::vector<cd> fa = pad(a.coeffs());
  std::vector<cd> fb = pad(b.coeffs());
  fft::backward(g.dim, n2, fa.data());
  fft::backward(g.dim, n2, fb.data());
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  fft::forward(g.dim, n2, fa.data());
  const double scale = 1.0 / static_cast<double>(padded.nodes());

  std::vector<cd> coeffs(g.nodes());
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i)
      coeffs[static_cast<std::size_t>(i)] =
          scale *
          fa[static_cast<std::size_t>(index_of_freq(freq_of_index(i, n), n2))];
  } else {
    for (int r = 0; r < n; ++r)
      for (int cidx = 0; cidx < n; ++cidx)
        coeffs[static_cast<std::size_t>(r) * n + cidx] =
            scale * fa[static_cast<std::size_t>(
                           index_of_freq(freq_of_index(r, n), n2)) *
                           n2 +
                       index_of_freq(freq_of_index(cidx, n), n2)];
  }
  return SpectralField::from_coeffs(g, std::move(coeffs));
}

double h_norm_direct(const SpectralField& u, double s) {
  double sum = 0.0;
  const auto& c = u.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double xi = u.freq_norm(i);
    sum += std::pow(1.0 + xi * xi, s) * std::norm(c[i]);
  }
  return std::sqrt(sum * std::pow(2.0 * kPi, u.grid().dim));
}

namespace {

std::uint64_t zigzag(int v) {
  return static_cast<std::uint64_t>((v << 1) ^ (v >> 31));
}

std::uint64_t freq_counter(int xi_x, int xi_y) {
  return (zigzag(xi_x) << 21) | zigzag(xi_y);
}

}  // namespace

SpectralField random_complex_field(const TorusGrid& grid, const CounterRng& rng,
                                   std::uint64_t stream, int band) {
  if (band >= grid.n / 2)
    throw DomainError("random field: band must stay below N/2");
  std::vector<cd> coeffs(grid.nodes(), cd{0.0, 0.0});
  auto assign = [&](int xi_x, int xi_y, std::size_t flat) {
    const std::uint64_t c = freq_counter(xi_x, xi_y);
    coeffs[flat] = cd{rng.normal(stream, 2 * c), rng.normal(stream, 2 * c + 1)};
  };
  if (grid.dim == 1) {
    for (int xi = -band; xi <= band; ++xi)
      assign(xi, 0, static_cast<std::size_t>(index_of_freq(xi, grid.n)));
  } else {
    for (int xi_x = -band; xi_x <= band; ++xi_x)
      for (int xi_y = -band; xi_y <= band; ++xi_y)
        assign(xi_x, xi_y,
               static_cast<std::size_t>(index_of_freq(xi_x, grid.n)) * grid.n +
                   index_of_freq(xi_y, grid.n));
  }
  return SpectralField::from_coeffs(grid, std::move(coeffs));
}

SpectralField random_real_field(const TorusGrid& grid, const CounterRng& rng,
                                std::uint64_t stream, int band) {
  if (band >= grid.n / 2)
    throw DomainError("random field: band must stay below N/2");
  std::vector<cd> coeffs(grid.nodes(), cd{0.0, 0.0});
  auto flat_of = [&](int xi_x, int xi_y) {
    if (grid.dim == 1)
      return static_cast<std::size_t>(index_of_freq(xi_x, grid.n));
    return static_cast<std::size_t>(index_of_freq(xi_x, grid.n)) * grid.n +
           index_of_freq(xi_y, grid.n);
  };
  auto canonical = [](int xi_x, int xi_y) {
    return xi_x > 0 || (xi_x == 0 && xi_y > 0);
  };
  auto draw = [&](int xi_x, int xi_y) {
    const std::uint64_t c = freq_counter(xi_x, xi_y);
    return cd{rng.normal(stream, 2 * c), rng.normal(stream, 2 * c + 1)};
  };
  const int band_y = grid.dim == 2 ? band : 0;
  for (int xi_x = -band; xi_x <= band; ++xi_x) {
    for (int xi_y = -band_y; xi_y <= band_y; ++xi_y) {
      if (xi_x == 0 && xi_y == 0) {
        coeffs[flat_of(0, 0)] = cd{rng.normal(stream, 1), 0.0};
      } else if (canonical(xi_x, xi_y)) {
        const cd v = draw(xi_x, xi_y);
        coeffs[flat_of(xi_x, xi_y)] = v;
        coeffs[flat_of(-xi_x, -xi_y)] = std::conj(v);
      }
    }
  }
  return SpectralField::from_coeffs(grid, std::move(coeffs));
}

}  // namespace paraweight
