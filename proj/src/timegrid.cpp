#include "paraweight/timegrid.hpp"

#include <cmath>
#include <string>

#include "paraweight/errors.hpp"

namespace paraweight {

TimeGrid::TimeGrid(double T, int M) : horizon(T), samples(M) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw ConfigError("TimeGrid: horizon must be positive");
  if (M < 64)
    throw ConfigError("TimeGrid: need at least 64 samples, got " +
                      std::to_string(M));
}

SpaceTimeField::SpaceTimeField(const TimeGrid& tg,
                               std::vector<SpectralField> slices)
    : time_(tg), slices_(std::move(slices)) {
  if (static_cast<int>(slices_.size()) != tg.samples)
    throw ConfigError("SpaceTimeField: slice count does not match time grid");
  for (const auto& s : slices_)
    if (s.grid() != slices_.front().grid())
      throw ConfigError("SpaceTimeField: slices must share one spatial grid");
}

SpaceTimeField SpaceTimeField::build(
    const TimeGrid& tg, const TorusGrid& grid,
    const std::function<SpectralField(int, double)>& slice_at) {
  std::vector<SpectralField> slices;
  slices.reserve(tg.samples);
  for (int i = 0; i < tg.samples; ++i) {
    slices.push_back(slice_at(i, tg.t(i)));
    if (slices.back().grid() != grid)
      throw ConfigError("SpaceTimeField::build: slice grid mismatch");
  }
  return SpaceTimeField(tg, std::move(slices));
}

SpaceTimeField SpaceTimeField::tensor(
    const TimeGrid& tg, const std::function<double(double)>& profile,
    const SpectralField& w) {
  std::vector<SpectralField> slices;
  slices.reserve(tg.samples);
  for (int i = 0; i < tg.samples; ++i)
    slices.push_back(cd{profile(tg.t(i)), 0.0} * w);
  return SpaceTimeField(tg, std::move(slices));
}

SpaceTimeField SpaceTimeField::dt_centered() const {
  const int M = time_.samples;
  const double dt = time_.dt();
  std::vector<SpectralField> out;
  out.reserve(M);
  out.push_back((1.0 / (2.0 * dt)) *
                (-3.0 * slices_[0] + 4.0 * slices_[1] - slices_[2]));
  for (int i = 1; i + 1 < M; ++i)
    out.push_back((1.0 / (2.0 * dt)) * (slices_[i + 1] - slices_[i - 1]));
  out.push_back((1.0 / (2.0 * dt)) *
                (3.0 * slices_[M - 1] - 4.0 * slices_[M - 2] +
                 slices_[M - 3]));
  return SpaceTimeField(time_, std::move(out));
}

double SpaceTimeField::max_abs() const {
  double m = 0.0;
  for (const auto& s : slices_) m = std::max(m, s.max_abs());
  return m;
}

double time_bump(double t, double t0, double t1) {
  if (t <= t0 || t >= t1) return 0.0;
  return smooth_plateau((t - t0) / (t1 - t0));
}

}  // namespace paraweight
