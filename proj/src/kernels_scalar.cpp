#include <cstring>

#include "dfnkit/kernels.hpp"

namespace dfnkit::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void vadd_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void vsub_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void vmul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void matmul_scalar(const double* a, const double* b, double* c, std::size_t m,
                   std::size_t k, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = a[i * k + l];
      const double* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

void matmul_nt_scalar(const double* a, const double* b, double* c,
                      std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] = dot_scalar(a + i * k, b + j * k, k);
}

void matmul_tn_scalar(const double* a, const double* b, double* c,
                      std::size_t m, std::size_t k, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t l = 0; l < k; ++l) {
    const double* arow = a + l * m;
    const double* brow = b + l * n;
    for (std::size_t i = 0; i < m; ++i) {
      const double ali = arow[i];
      double* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ali * brow[j];
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {dot_scalar,      sum_sq_scalar,    axpy_scalar,
                          scale_scalar,    vadd_scalar,      vsub_scalar,
                          vmul_scalar,     matmul_scalar,    matmul_nt_scalar,
                          matmul_tn_scalar};
  return ops;
}

}  // namespace dfnkit::kernels
