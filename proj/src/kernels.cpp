#include "dfnkit/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace dfnkit::kernels {
namespace {

struct State {
  const Ops* ops;
  Backend backend;
};

State make_default() {
  const char* env = std::getenv("DFNKIT_KERNELS");
  bool want_scalar = env && std::strcmp(env, "scalar") == 0;
  const Ops* avx = avx2_ops();
  if (!want_scalar && avx) return {avx, Backend::Avx2};
  return {&scalar_ops(), Backend::Scalar};
}

State& state() {
  static State s = make_default();
  return s;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return state().backend; }

Backend set_backend(Backend b) {
  if (b == Backend::Avx2) {
    if (const Ops* avx = avx2_ops()) {
      state() = {avx, Backend::Avx2};
      return Backend::Avx2;
    }
    b = Backend::Scalar;
  }
  state() = {&scalar_ops(), Backend::Scalar};
  return b;
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) {
  return state().ops->dot(a, b, n);
}
double sum_sq(const double* a, std::size_t n) { return state().ops->sum_sq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  state().ops->axpy(alpha, x, y, n);
}
void scale(double alpha, double* x, std::size_t n) { state().ops->scale(alpha, x, n); }
void vadd(const double* a, const double* b, double* out, std::size_t n) {
  state().ops->vadd(a, b, out, n);
}
void vsub(const double* a, const double* b, double* out, std::size_t n) {
  state().ops->vsub(a, b, out, n);
}
void vmul(const double* a, const double* b, double* out, std::size_t n) {
  state().ops->vmul(a, b, out, n);
}
void matmul(const double* a, const double* b, double* c, std::size_t m,
            std::size_t k, std::size_t n) {
  state().ops->matmul(a, b, c, m, k, n);
}
void matmul_nt(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n) {
  state().ops->matmul_nt(a, b, c, m, k, n);
}
void matmul_tn(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n) {
  state().ops->matmul_tn(a, b, c, m, k, n);
}

}  // namespace dfnkit::kernels
