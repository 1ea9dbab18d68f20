#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dfnkit {

// In-place iterative radix-2 complex FFT. n must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a);
std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> a);

// Real-input helpers: rfft keeps bins 0..n/2, irfft rebuilds the conjugate-
// symmetric spectrum and returns the real time series of length n.
std::vector<std::complex<double>> rfft(const std::vector<double>& x);
std::vector<double> irfft(const std::vector<std::complex<double>>& half, std::size_t n);

std::size_t next_pow2(std::size_t n);
bool is_pow2(std::size_t n);

}  // namespace dfnkit
