// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64 and is only entered after a runtime cpuid check.

#include "dfnkit/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define DFNKIT_HAVE_AVX2_TU 1
#include <immintrin.h>

#include <cstring>
#endif

namespace dfnkit::kernels {

#ifdef DFNKIT_HAVE_AVX2_TU
namespace {

inline double hsum4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum4(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_avx2(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d x0 = _mm256_loadu_pd(a + i);
    __m256d x1 = _mm256_loadu_pd(a + i + 4);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d x0 = _mm256_loadu_pd(a + i);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
  }
  double s = hsum4(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void vadd_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void vsub_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void vmul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

// C row i accumulates broadcast(A[i,l]) * B row l.
void matmul_avx2(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const __m256d va = _mm256_set1_pd(a[i * k + l]);
      const double* brow = b + l * n;
      std::size_t j = 0;
      for (; j + 8 <= n; j += 8) {
        __m256d c0 = _mm256_loadu_pd(crow + j);
        __m256d c1 = _mm256_loadu_pd(crow + j + 4);
        c0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), c0);
        c1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j + 4), c1);
        _mm256_storeu_pd(crow + j, c0);
        _mm256_storeu_pd(crow + j + 4, c1);
      }
      for (; j + 4 <= n; j += 4) {
        __m256d c0 = _mm256_loadu_pd(crow + j);
        c0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), c0);
        _mm256_storeu_pd(crow + j, c0);
      }
      const double ail = a[i * k + l];
      for (; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

void matmul_nt_avx2(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] = dot_avx2(a + i * k, b + j * k, k);
}

void matmul_tn_avx2(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t k, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t l = 0; l < k; ++l) {
    const double* arow = a + l * m;
    const double* brow = b + l * n;
    for (std::size_t i = 0; i < m; ++i) {
      const __m256d va = _mm256_set1_pd(arow[i]);
      double* crow = c + i * n;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d c0 = _mm256_loadu_pd(crow + j);
        c0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), c0);
        _mm256_storeu_pd(crow + j, c0);
      }
      const double ali = arow[i];
      for (; j < n; ++j) crow[j] += ali * brow[j];
    }
  }
}

const Ops avx2_table = {dot_avx2,    sum_sq_avx2,    axpy_avx2,
                        scale_avx2,  vadd_avx2,      vsub_avx2,
                        vmul_avx2,   matmul_avx2,    matmul_nt_avx2,
                        matmul_tn_avx2};

}  // namespace

const Ops* avx2_ops() {
  return avx2_supported() ? &avx2_table : nullptr;
}

#else

const Ops* avx2_ops() { return nullptr; }

#endif  // DFNKIT_HAVE_AVX2_TU

}  // namespace dfnkit::kernels
