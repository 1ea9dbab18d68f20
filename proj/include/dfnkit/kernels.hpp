#pragma once

#include <cstddef>

// Dense arithmetic primitives behind the matrix and network code. Every
// kernel has a scalar reference implementation and, on x86-64 with AVX2+FMA,
// a vectorized variant; the backend is picked once at startup (override with
// DFNKIT_KERNELS=scalar|avx2 or set_backend()). Within one backend results
// are bit-deterministic: reduction order is fixed.
namespace dfnkit::kernels {

enum class Backend { Scalar, Avx2 };

bool avx2_supported();
Backend active_backend();
// Requests a backend; returns the one actually installed (Avx2 degrades to
// Scalar when unsupported).
Backend set_backend(Backend b);
const char* backend_name(Backend b);

double dot(const double* a, const double* b, std::size_t n);
double sum_sq(const double* a, std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
// x *= alpha
void scale(double alpha, double* x, std::size_t n);

void vadd(const double* a, const double* b, double* out, std::size_t n);
void vsub(const double* a, const double* b, double* out, std::size_t n);
void vmul(const double* a, const double* b, double* out, std::size_t n);

// Row-major matrix products. C is overwritten.
// matmul:    C[m x n] = A[m x k] * B[k x n]
// matmul_nt: C[m x n] = A[m x k] * B[n x k]^T
// matmul_tn: C[m x n] = A[k x m]^T * B[k x n]
void matmul(const double* a, const double* b, double* c, std::size_t m,
            std::size_t k, std::size_t n);
void matmul_nt(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n);
void matmul_tn(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n);

// Implementation table; used by the dispatcher and the equivalence tests.
struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*vadd)(const double*, const double*, double*, std::size_t);
  void (*vsub)(const double*, const double*, double*, std::size_t);
  void (*vmul)(const double*, const double*, double*, std::size_t);
  void (*matmul)(const double*, const double*, double*, std::size_t,
                 std::size_t, std::size_t);
  void (*matmul_nt)(const double*, const double*, double*, std::size_t,
                    std::size_t, std::size_t);
  void (*matmul_tn)(const double*, const double*, double*, std::size_t,
                    std::size_t, std::size_t);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when the build or CPU lacks AVX2+FMA

}  // namespace dfnkit::kernels
