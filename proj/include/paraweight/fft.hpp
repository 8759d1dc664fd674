#ifndef PARAWEIGHT_FFT_HPP
#define PARAWEIGHT_FFT_HPP

#include <complex>

namespace paraweight::fft {

/// Unnormalized forward transform (e^{-i xi x}), in place, row-major,
/// n points per axis. Plans are cached per shape behind a mutex and
/// executed through the thread-safe new-array interface.
void forward(int dim, int n, std::complex<double>* data);

/// Unnormalized backward transform (e^{+i xi x}), in place.
void backward(int dim, int n, std::complex<double>* data);

}  // namespace paraweight::fft

#endif
