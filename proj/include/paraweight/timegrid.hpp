#ifndef PARAWEIGHT_TIMEGRID_HPP
#define PARAWEIGHT_TIMEGRID_HPP

#include <functional>
#include <vector>

#include "paraweight/field.hpp"

namespace paraweight {

/// Uniform samples of [0, T], endpoints included.
struct TimeGrid {
  double horizon = 0.0;
  int samples = 0;

  TimeGrid(double T, int M);
  double dt() const { return horizon / (samples - 1); }
  double t(int i) const { return horizon * i / (samples - 1); }
  bool operator==(const TimeGrid& o) const {
    return horizon == o.horizon && samples == o.samples;
  }
  bool operator!=(const TimeGrid& o) const { return !(*this == o); }
};

/// One SpectralField per time sample, all on a shared spatial grid.
class SpaceTimeField {
 public:
  SpaceTimeField(const TimeGrid& tg, std::vector<SpectralField> slices);
  static SpaceTimeField build(
      const TimeGrid& tg, const TorusGrid& grid,
      const std::function<SpectralField(int, double)>& slice_at);
  /// profile(t) * w(x).
  static SpaceTimeField tensor(const TimeGrid& tg,
                               const std::function<double(double)>& profile,
                               const SpectralField& w);

  const TimeGrid& time_grid() const { return time_; }
  const TorusGrid& space_grid() const { return slices_.front().grid(); }
  int slices() const { return static_cast<int>(slices_.size()); }
  const SpectralField& slice(int i) const { return slices_[i]; }

  /// d/dt by centered differences, one-sided second order at the ends.
  SpaceTimeField dt_centered() const;
  double max_abs() const;

 private:
  TimeGrid time_;
  std::vector<SpectralField> slices_;
};

/// C-infinity plateau bump supported exactly on [t0, t1].
double time_bump(double t, double t0, double t1);

}  // namespace paraweight

#endif
