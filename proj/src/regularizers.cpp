#include "dfnkit/regularizers.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "dfnkit/dfn.hpp"
#include "dfnkit/kernels.hpp"
#include "dfnkit/linalg.hpp"

namespace dfnkit {
namespace {

using cplx = std::complex<double>;

// Complex LU with partial pivoting; near-zero pivots are bumped to eps*scale
// so inverse iteration with an exact eigenvalue shift stays solvable.
struct CLu {
  std::vector<cplx> a;  // packed LU, row-major
  std::vector<std::size_t> piv;
  std::size_t n;
};

CLu clu_factor(std::vector<cplx> a, std::size_t n, double scale) {
  CLu f{std::move(a), {}, n};
  f.piv.resize(n);
  const double floor_piv = std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(f.a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      double m = std::abs(f.a[i * n + k]);
      if (m > best) {
        best = m;
        p = i;
      }
    }
    f.piv[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(f.a[k * n + j], f.a[p * n + j]);
    if (std::abs(f.a[k * n + k]) < floor_piv) f.a[k * n + k] = floor_piv;
    cplx pivot = f.a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx m = f.a[i * n + k] / pivot;
      f.a[i * n + k] = m;
      if (m != 0.0)
        for (std::size_t j = k + 1; j < n; ++j) f.a[i * n + j] -= m * f.a[k * n + j];
    }
  }
  return f;
}

void clu_solve(const CLu& f, std::vector<cplx>& b) {
  const std::size_t n = f.n;
  for (std::size_t k = 0; k < n; ++k) {
    if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
    for (std::size_t i = k + 1; i < n; ++i) b[i] -= f.a[i * n + k] * b[k];
  }
  for (std::size_t k = n; k-- > 0;) {
    b[k] /= f.a[k * n + k];
    for (std::size_t i = 0; i < k; ++i) b[i] -= f.a[i * n + k] * b[k];
  }
}

double cnorm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& e : v) s += std::norm(e);
  return std::sqrt(s);
}

// Right (or left, via the transpose) eigenvector by inverse iteration with
// the exact computed eigenvalue as shift, seeded by a Schur vector.
std::vector<cplx> inverse_iteration(const Matrix& x, cplx lambda,
                                    const std::vector<double>& seed,
                                    bool transpose) {
  const std::size_t n = x.rows();
  std::vector<cplx> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = transpose ? x(j, i) : x(i, j);
      a[i * n + j] = cplx(v, 0.0) - (i == j ? lambda : cplx(0.0, 0.0));
    }
  CLu f = clu_factor(std::move(a), n, x.frob_norm());

  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = seed[i];
  double nv = cnorm(v);
  if (nv == 0.0) v[0] = 1.0, nv = 1.0;
  for (auto& e : v) e /= nv;

  // One solve plus one refinement step.
  for (int pass = 0; pass < 2; ++pass) {
    clu_solve(f, v);
    double norm = cnorm(v);
    if (norm == 0.0) break;
    for (auto& e : v) e /= norm;
  }
  return v;
}

double eig_residual(const Matrix& x, cplx lambda, const std::vector<cplx>& v,
                    bool transpose) {
  const std::size_t n = x.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = -lambda * v[i];
    for (std::size_t j = 0; j < n; ++j)
      acc += cplx(transpose ? x(j, i) : x(i, j), 0.0) * v[j];
    s += std::norm(acc);
  }
  return std::sqrt(s);
}

PenaltyResult dfn_gradient_analytic(const Matrix& x) {
  const std::size_t n = x.rows();
  SchurForm f = real_schur(x);
  const double xnorm = x.frob_norm();

  // Simple-spectrum guard.
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      min_gap = std::min(min_gap, std::abs(f.eigenvalues[i] - f.eigenvalues[j]));
  if (n > 1 && min_gap < 1e-6 * xnorm)
    throw Error(Errc::DegenerateSpectrum,
                "dfn_penalty_gradient: eigenvalue gap " + std::to_string(min_gap) +
                    " below 1e-6*||X||_F; use FiniteDiff");

  PenaltyResult out;
  double eig_sq = 0.0;

  // grad = 2X - sum_i d|lambda_i|^2/dX. Conjugate pairs are handled by
  // doubling the real part of one member's contribution.
  Matrix eig_term(n, n);
  std::vector<double> seed(n);
  std::size_t bi = 0;
  while (bi < n) {
    bool pair = bi + 1 < n && f.t(bi + 1, bi) != 0.0;
    cplx lambda = f.eigenvalues[bi];
    eig_sq += std::norm(lambda);
    if (pair) eig_sq += std::norm(f.eigenvalues[bi + 1]);

    // Right vector solves A u = lambda u; the left one solves A^T v = lambda v
    // (same lambda: A is real). d lambda / dA = v u^T / (v^T u).
    for (std::size_t r = 0; r < n; ++r) seed[r] = f.q(r, bi);
    std::vector<cplx> right = inverse_iteration(x, lambda, seed, false);
    std::vector<cplx> left = inverse_iteration(x, lambda, seed, true);
    double res_r = eig_residual(x, lambda, right, false);
    double res_l = eig_residual(x, lambda, left, true);
    if (res_r > 1e-8 * xnorm || res_l > 1e-8 * xnorm)
      throw Error(Errc::DegenerateSpectrum,
                  "dfn_penalty_gradient: eigenvector residual above tolerance");

    cplx denom = 0.0;
    for (std::size_t r = 0; r < n; ++r) denom += left[r] * right[r];
    if (std::abs(denom) < 1e-12)
      throw Error(Errc::DegenerateSpectrum,
                  "dfn_penalty_gradient: ill-conditioned eigenvalue (y^T x ~ 0)");

    double weight = pair ? 2.0 : 1.0;  // conjugate partner mirrors the real part
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        cplx dldx = left[p] * right[q] / denom;
        eig_term(p, q) += weight * 2.0 * std::real(std::conj(lambda) * dldx);
      }
    bi += pair ? 2 : 1;
  }

  double frob_sq = x.frob_norm_sq();
  double raw = frob_sq - eig_sq;
  out.value = raw < 0.0 ? 0.0 : raw;
  out.gradient = x;
  out.gradient *= 2.0;
  out.gradient -= eig_term;
  return out;
}

PenaltyResult dfn_gradient_fd(const Matrix& x, double h) {
  const std::size_t n = x.rows();
  PenaltyResult out;
  out.value = dfn_exact(x).value;
  out.gradient = Matrix(n, n);
  Matrix pert = x;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double orig = pert(i, j);
      pert(i, j) = orig + h;
      double up = dfn_exact(pert).value;
      pert(i, j) = orig - h;
      double dn = dfn_exact(pert).value;
      pert(i, j) = orig;
      out.gradient(i, j) = (up - dn) / (2.0 * h);
    }
  return out;
}

}  // namespace

Matrix spectral_clamp_update(const Matrix& theta, std::optional<double> sigma_clamp,
                             std::size_t power_iters) {
  ensure_finite(theta, "spectral_clamp_update");
  if (theta.frob_norm_sq() == 0.0)
    throw Error(Errc::ZeroMatrix, "spectral_clamp_update: zero matrix");
  if (sigma_clamp && (*sigma_clamp < 0.0 || !std::isfinite(*sigma_clamp)))
    throw Error(Errc::InvalidArgument, "spectral_clamp_update: sigma_clamp must be >= 0");

  SingularTriplet top = top_singular_triplet(theta, power_iters);
  double sigma_c;
  if (sigma_clamp) {
    sigma_c = *sigma_clamp;
  } else {
    // Stop-gradient second singular value: deflate the top rank-1 component
    // and re-run power iteration.
    Matrix deflated = theta;
    for (std::size_t i = 0; i < deflated.rows(); ++i)
      kernels::axpy(-top.sigma0 * top.u0[i], top.v0.data(), deflated.row_ptr(i),
                    deflated.cols());
    if (deflated.frob_norm_sq() == 0.0) {
      sigma_c = 0.0;
    } else {
      sigma_c = top_singular_triplet(deflated, power_iters).sigma0;
    }
  }

  double excess = top.sigma0 - sigma_c;
  if (excess <= 0.0) return theta;
  Matrix out = theta;
  for (std::size_t i = 0; i < out.rows(); ++i)
    kernels::axpy(-excess * top.u0[i], top.v0.data(), out.row_ptr(i), out.cols());
  return out;
}

PenaltyResult orthogonal_penalty_v1(const Matrix& theta, double beta) {
  ensure_finite(theta, "orthogonal_penalty_v1");
  if (!(beta > 0.0 && beta < 1.0))
    throw Error(Errc::InvalidArgument, "orthogonal_penalty_v1: beta must be in (0,1)");
  Matrix gram = matmul_tn(theta, theta);
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
  PenaltyResult r;
  r.value = beta * gram.frob_norm_sq();
  r.gradient = theta * gram;
  r.gradient *= 4.0 * beta;
  return r;
}

PenaltyResult orthogonal_penalty_v2(const Matrix& theta, double beta) {
  ensure_finite(theta, "orthogonal_penalty_v2");
  if (!(beta > 0.0 && beta < 1.0))
    throw Error(Errc::InvalidArgument, "orthogonal_penalty_v2: beta must be in (0,1)");
  Matrix gram = matmul_tn(theta, theta);
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) = 0.0;
  PenaltyResult r;
  r.value = beta * gram.frob_norm_sq();
  r.gradient = theta * gram;
  r.gradient *= 4.0 * beta;
  return r;
}

PenaltyResult dfn_penalty_gradient(const Matrix& sample, GradMode mode, double fd_step) {
  ensure_square(sample, "dfn_penalty_gradient");
  ensure_finite(sample, "dfn_penalty_gradient");
  if (mode == GradMode::FiniteDiff) {
    if (!(fd_step > 0.0))
      throw Error(Errc::InvalidArgument, "dfn_penalty_gradient: fd_step must be > 0");
    return dfn_gradient_fd(sample, fd_step);
  }
  return dfn_gradient_analytic(sample);
}

}  // namespace dfnkit
