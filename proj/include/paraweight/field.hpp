#ifndef PARAWEIGHT_FIELD_HPP
#define PARAWEIGHT_FIELD_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "paraweight/grid.hpp"
#include "paraweight/rng.hpp"

namespace paraweight {

using cd = std::complex<double>;

/**
 * Immutable periodic grid function holding node samples and discrete
 * Fourier coefficients together. Coefficients use the analysis
 * normalization u(x) = sum_xi uhat(xi) e^{i xi.x}, stored in FFT index
 * order (frequency idx for idx < N/2, idx - N above), row-major across
 * axes. L2 norms carry the cell volume (2pi/N)^dim so they converge under
 * refinement; on the coefficient side that is (2pi)^{dim/2} |uhat|_2.
 */
class SpectralField {
 public:
  static SpectralField from_samples(const TorusGrid& grid,
                                    std::vector<cd> samples);
  static SpectralField from_coeffs(const TorusGrid& grid,
                                   std::vector<cd> coeffs);
  static SpectralField zero(const TorusGrid& grid);
  static SpectralField constant(const TorusGrid& grid, cd value);
  /// Single Fourier mode e^{i xi.x} (xi_y ignored in 1d).
  static SpectralField mode(const TorusGrid& grid, int xi_x, int xi_y = 0);

  const TorusGrid& grid() const { return grid_; }
  const std::vector<cd>& samples() const { return samples_; }
  const std::vector<cd>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Integer frequency component along an axis for a flat coefficient index.
  int freq(std::size_t flat, int axis) const;
  double freq_norm(std::size_t flat) const;

  double l2_norm() const;        // coefficient side
  double l2_norm_nodes() const;  // node side (Parseval cross-check)
  double max_abs() const;
  double max_abs_imag() const;

  SpectralField apply_multiplier(
      const std::function<cd(std::size_t flat)>& m) const;
  SpectralField derivative(int axis) const;  // i xi_j; Nyquist zeroed

  friend SpectralField operator+(const SpectralField& a,
                                 const SpectralField& b);
  friend SpectralField operator-(const SpectralField& a,
                                 const SpectralField& b);
  friend SpectralField operator*(cd scale, const SpectralField& a);

 private:
  SpectralField(TorusGrid grid, std::vector<cd> samples,
                std::vector<cd> coeffs);
  TorusGrid grid_;
  std::vector<cd> samples_;
  std::vector<cd> coeffs_;
};

/// L2 inner product <f, g> = (2pi)^dim sum uhat vhat*, conjugate-linear
/// in the second argument.
cd inner_l2(const SpectralField& f, const SpectralField& g);

/// Product computed on a 2N-per-axis grid and truncated back, so the
/// result is the exact lattice projection of the true product.
SpectralField dealiased_product(const SpectralField& a,
                                const SpectralField& b);

/// |uhat|-weighted Sobolev norm (2pi)^{dim/2} (sum (1+|xi|^2)^s |uhat|^2)^{1/2}.
double h_norm_direct(const SpectralField& u, double s);

/// Random fields keyed by (seed, stream, integer frequency): the same
/// draw describes the same function at every resolution containing the
/// band. band < N/2 is required so that real fields stay Hermitian.
SpectralField random_complex_field(const TorusGrid& grid, const CounterRng& rng,
                                   std::uint64_t stream, int band);
SpectralField random_real_field(const TorusGrid& grid, const CounterRng& rng,
                                std::uint64_t stream, int band);

}  // namespace paraweight

#endif
