#include "dfnkit/fft.hpp"

#include <cmath>

#include "dfnkit/errors.hpp"

namespace dfnkit {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(n))
    throw Error(Errc::InvalidArgument, "fft: length must be a power of two");
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a) {
  fft_inplace(a, false);
  return a;
}

std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> a) {
  fft_inplace(a, true);
  return a;
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
  std::vector<std::complex<double>> a(x.begin(), x.end());
  fft_inplace(a, false);
  a.resize(x.size() / 2 + 1);
  return a;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& half, std::size_t n) {
  if (half.size() != n / 2 + 1)
    throw Error(Errc::InvalidArgument, "irfft: expected n/2+1 bins");
  std::vector<std::complex<double>> full(n);
  for (std::size_t k = 0; k < half.size(); ++k) full[k] = half[k];
  for (std::size_t k = half.size(); k < n; ++k) full[k] = std::conj(full[n - k]);
  fft_inplace(full, true);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = full[i].real();
  return out;
}

}  // namespace dfnkit
