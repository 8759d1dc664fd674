#include "paraweight/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace paraweight::fft {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int dim, int n, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  const auto key = std::make_tuple(dim, n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // FFTW_UNALIGNED lets the plan execute on std::vector storage
  fftw_complex* buf = fftw_alloc_complex(
      dim == 1 ? static_cast<std::size_t>(n)
               : static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  fftw_plan plan =
      dim == 1
          ? fftw_plan_dft_1d(n, buf, buf, sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED)
          : fftw_plan_dft_2d(n, n, buf, buf, sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(key, plan);
  return plan;
}

void execute(int dim, int n, int sign, std::complex<double>* data) {
  fftw_plan plan = plan_for(dim, n, sign);
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, raw, raw);
}

}  // namespace

void forward(int dim, int n, std::complex<double>* data) {
  execute(dim, n, FFTW_FORWARD, data);
}

void backward(int dim, int n, std::complex<double>* data) {
  execute(dim, n, FFTW_BACKWARD, data);
}

}  // namespace paraweight::fft
