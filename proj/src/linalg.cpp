#include "dfnkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dfnkit/kernels.hpp"
#include "dfnkit/rng.hpp"

namespace dfnkit {
namespace {

// Householder vector for x (v[0] scaled to 1): (I - beta v v^T) x = mu e1.
// Golub & Van Loan style, safe against cancellation.
struct House {
  double beta = 0.0;
  std::vector<double> v;
};

House make_house(const double* x, std::size_t m) {
  House h;
  h.v.assign(m, 0.0);
  h.v[0] = 1.0;
  if (m == 1) return h;
  double sigma = kernels::sum_sq(x + 1, m - 1);
  if (sigma == 0.0) return h;  // already aligned with e1
  double x0 = x[0];
  double mu = std::sqrt(x0 * x0 + sigma);
  double v0 = (x0 <= 0.0) ? x0 - mu : -sigma / (x0 + mu);
  h.beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
  for (std::size_t i = 1; i < m; ++i) h.v[i] = x[i] / v0;
  return h;
}

// Applies P = I - beta v v^T to rows [r0, r0+m) of a, columns [c0, c1).
void house_apply_left(Matrix& a, const House& h, std::size_t r0, std::size_t c0,
                      std::size_t c1) {
  if (h.beta == 0.0) return;
  const std::size_t m = h.v.size();
  for (std::size_t j = c0; j < c1; ++j) {
    double w = 0.0;
    for (std::size_t i = 0; i < m; ++i) w += h.v[i] * a(r0 + i, j);
    w *= h.beta;
    for (std::size_t i = 0; i < m; ++i) a(r0 + i, j) -= h.v[i] * w;
  }
}

// Applies P to columns [c0, c0+m) of a, rows [r0, r1).
void house_apply_right(Matrix& a, const House& h, std::size_t c0, std::size_t r0,
                       std::size_t r1) {
  if (h.beta == 0.0) return;
  const std::size_t m = h.v.size();
  for (std::size_t i = r0; i < r1; ++i) {
    double* row = a.row_ptr(i);
    double w = kernels::dot(row + c0, h.v.data(), m);
    w *= h.beta;
    kernels::axpy(-w, h.v.data(), row + c0, m);
  }
}

// Eigenvalues of a real 2x2 block via trace/discriminant; the real case uses
// a sign-safe root to avoid cancellation.
void eig2x2(double a, double b, double c, double d,
            std::complex<double>& l1, std::complex<double>& l2) {
  double tr = a + d;
  double det = a * d - b * c;
  double half = 0.5 * tr;
  double disc = half * half - det;
  if (disc < 0.0) {
    double im = std::sqrt(-disc);
    l1 = {half, im};
    l2 = {half, -im};
  } else {
    double r = std::sqrt(disc);
    double big = half + std::copysign(r, half);
    if (big == 0.0) {
      l1 = l2 = 0.0;
    } else {
      l1 = big;
      l2 = det / big;
    }
  }
}

struct Givens {
  double c = 1.0, s = 0.0;
};

Givens make_givens(double x, double y) {
  Givens g;
  double r = std::hypot(x, y);
  if (r == 0.0) return g;
  g.c = x / r;
  g.s = y / r;
  return g;
}

// Similarity rotation acting on rows/columns p and p+1 of t, accumulated in q.
void apply_givens_similarity(Matrix& t, Matrix& q, std::size_t p, const Givens& g) {
  const std::size_t n = t.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double a = t(p, j), b = t(p + 1, j);
    t(p, j) = g.c * a + g.s * b;
    t(p + 1, j) = -g.s * a + g.c * b;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double a = t(i, p), b = t(i, p + 1);
    t(i, p) = g.c * a + g.s * b;
    t(i, p + 1) = -g.s * a + g.c * b;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double a = q(i, p), b = q(i, p + 1);
    q(i, p) = g.c * a + g.s * b;
    q(i, p + 1) = -g.s * a + g.c * b;
  }
}

// Splits a converged 2x2 block with real eigenvalues into two 1x1 blocks.
// Blocks with a complex pair are left intact.
void standardize_block(Matrix& t, Matrix& q, std::size_t p) {
  double a = t(p, p), b = t(p, p + 1), c = t(p + 1, p), d = t(p + 1, p + 1);
  if (c == 0.0) return;
  double half = 0.5 * (a + d);
  double det = a * d - b * c;
  double disc = half * half - det;
  if (disc < 0.0) return;  // complex-conjugate pair stays a 2x2 block
  double r = std::sqrt(disc);
  double lambda = half + std::copysign(r, half);
  if (lambda == 0.0) lambda = half - std::copysign(r, half);
  // Eigenvector of [[a,b],[c,d]] for lambda; pick the better-conditioned row.
  double v1, v2;
  if (std::abs(b) + std::abs(a - lambda) >= std::abs(d - lambda) + std::abs(c)) {
    v1 = b;
    v2 = lambda - a;
  } else {
    v1 = lambda - d;
    v2 = c;
  }
  if (v1 == 0.0 && v2 == 0.0) return;
  Givens g = make_givens(v1, v2);
  apply_givens_similarity(t, q, p, g);
  t(p + 1, p) = 0.0;
}

}  // namespace

HessenbergResult hessenberg_reduce(const Matrix& x) {
  ensure_square(x, "hessenberg_reduce");
  ensure_finite(x, "hessenberg_reduce");
  const std::size_t n = x.rows();
  Matrix h = x;
  Matrix q = Matrix::identity(n);
  if (n <= 2) return {q, h};
  std::vector<double> col(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    for (std::size_t i = 0; i < m; ++i) col[i] = h(k + 1 + i, k);
    House hh = make_house(col.data(), m);
    house_apply_left(h, hh, k + 1, k, n);
    house_apply_right(h, hh, k + 1, 0, n);
    house_apply_right(q, hh, k + 1, 0, n);
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return {q, h};
}

SchurForm real_schur(const Matrix& x, double tol, std::size_t max_sweeps) {
  ensure_square(x, "real_schur");
  ensure_finite(x, "real_schur");
  if (tol <= 0.0) throw Error(Errc::InvalidArgument, "real_schur: tol must be > 0");
  const std::size_t n = x.rows();
  if (max_sweeps == 0) max_sweeps = 30 * n;

  auto [q, t] = hessenberg_reduce(x);
  const double hnorm = t.frob_norm();

  auto negligible = [&](std::size_t i) {
    // subdiagonal entry t(i, i-1)
    double tst = std::abs(t(i - 1, i - 1)) + std::abs(t(i, i));
    if (tst == 0.0) tst = hnorm;
    return std::abs(t(i, i - 1)) <= tol * tst;
  };

  if (n > 1) {
    std::size_t m = n - 1;          // bottom of the active block
    std::size_t stalled = 0;        // sweeps since the last deflation
    while (true) {
      // Zero out converged subdiagonals in the active range.
      for (std::size_t i = 1; i <= m; ++i)
        if (t(i, i - 1) != 0.0 && negligible(i)) t(i, i - 1) = 0.0;

      // Find the top of the unreduced block ending at m.
      std::size_t l = m;
      while (l > 0 && t(l, l - 1) != 0.0) --l;

      if (l == m) {
        // 1x1 block converged.
        if (m == 0) break;
        --m;
        stalled = 0;
        continue;
      }
      if (l + 1 == m) {
        // 2x2 block converged; split it if its eigenvalues are real.
        standardize_block(t, q, l);
        if (l == 0) break;
        m = l - 1;
        stalled = 0;
        continue;
      }

      if (++stalled > max_sweeps)
        throw Error(Errc::NoConvergence,
                    "subdiagonal at index " + std::to_string(m) +
                        " failed to deflate within " + std::to_string(max_sweeps) +
                        " sweeps");

      // Double-shift from the trailing 2x2, with an ad-hoc exceptional shift
      // every 10 stalled sweeps.
      double s, p;
      if (stalled % 10 == 0) {
        double exc = std::abs(t(m, m - 1)) + std::abs(t(m - 1, m - 2));
        s = 2.0 * t(m, m) + 1.5 * exc;
        p = t(m, m) * t(m, m) + 1.5 * exc * t(m, m) - 0.4375 * exc * exc;
      } else {
        s = t(m - 1, m - 1) + t(m, m);
        p = t(m - 1, m - 1) * t(m, m) - t(m - 1, m) * t(m, m - 1);
      }

      // First column of (T - s1)(T - s2) restricted to the active block.
      double v0 = t(l, l) * t(l, l) + t(l, l + 1) * t(l + 1, l) - s * t(l, l) + p;
      double v1 = t(l + 1, l) * (t(l, l) + t(l + 1, l + 1) - s);
      double v2 = (l + 2 <= m) ? t(l + 1, l) * t(l + 2, l + 1) : 0.0;

      // Bulge chase. Annihilated bulge entries are set to exact zero so the
      // region below the subdiagonal never accumulates roundoff dust.
      for (std::size_t k = l; k + 2 <= m; ++k) {
        double vec[3] = {v0, v1, v2};
        House hh = make_house(vec, 3);
        std::size_t col0 = (k > l) ? k - 1 : l;
        house_apply_left(t, hh, k, col0, n);
        std::size_t rend = std::min(k + 4, m + 1);
        house_apply_right(t, hh, k, 0, rend);
        house_apply_right(q, hh, k, 0, n);
        if (k > l) {
          t(k + 1, k - 1) = 0.0;
          t(k + 2, k - 1) = 0.0;
        }
        v0 = t(k + 1, k);
        v1 = t(k + 2, k);
        v2 = (k + 3 <= m) ? t(k + 3, k) : 0.0;
      }
      // Final 2x1 reflector clears the last bulge entry.
      {
        double vec[2] = {v0, v1};
        House hh = make_house(vec, 2);
        house_apply_left(t, hh, m - 1, m - 2, n);
        house_apply_right(t, hh, m - 1, 0, m + 1);
        house_apply_right(q, hh, m - 1, 0, n);
        t(m, m - 2) = 0.0;
      }
    }
  }

  // Exact-zero cleanup below the block subdiagonal.
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) t(i, j) = 0.0;

  SchurForm f;
  f.eigenvalues.reserve(n);
  std::size_t i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      std::complex<double> l1, l2;
      eig2x2(t(i, i), t(i, i + 1), t(i + 1, i), t(i + 1, i + 1), l1, l2);
      f.eigenvalues.push_back(l1);
      f.eigenvalues.push_back(l2);
      i += 2;
    } else {
      f.eigenvalues.push_back(t(i, i));
      ++i;
    }
  }
  f.q = std::move(q);
  f.t = std::move(t);
  return f;
}

SingularTriplet top_singular_triplet(const Matrix& x, std::size_t iters) {
  ensure_finite(x, "top_singular_triplet");
  if (iters < 1) throw Error(Errc::InvalidArgument, "top_singular_triplet: iters >= 1");
  if (x.frob_norm_sq() == 0.0)
    throw Error(Errc::ZeroMatrix, "top_singular_triplet: zero matrix");
  const std::size_t m = x.rows(), n = x.cols();

  // Deterministic pseudo-random start; reseeded from the stream if the
  // iterate ever collapses into the null space.
  Rng rng(0x7f4a7c15u);
  SingularTriplet out;
  out.v0.assign(n, 0.0);
  out.u0.assign(m, 0.0);
  std::vector<double>& v = out.v0;
  std::vector<double>& u = out.u0;
  auto reseed = [&](std::vector<double>& w) {
    for (double& e : w) e = rng.normal();
    double norm = std::sqrt(kernels::sum_sq(w.data(), w.size()));
    kernels::scale(1.0 / norm, w.data(), w.size());
  };
  reseed(v);

  // Runs `iters` base power steps, then keeps refining until the
  // x v = sigma u residual drops under 1e-6 sigma. The top-up closes the gap
  // between the quadratic sigma convergence and the merely linear vector
  // convergence near a 10% singular gap; it exits early when progress stalls
  // (tiny gaps make no promises) and is capped at 4x the base count.
  const std::size_t cap = iters + 4 * iters + 1;
  double sigma = 0.0;
  double prev_res = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < cap; ++it) {
    // u = x v
    for (std::size_t i = 0; i < m; ++i) u[i] = kernels::dot(x.row_ptr(i), v.data(), n);
    double un = std::sqrt(kernels::sum_sq(u.data(), m));
    if (un == 0.0) {
      reseed(v);
      continue;
    }
    kernels::scale(1.0 / un, u.data(), m);
    // v = x^T u
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) kernels::axpy(u[i], x.row_ptr(i), v.data(), n);
    sigma = std::sqrt(kernels::sum_sq(v.data(), n));
    if (sigma == 0.0) {
      reseed(v);
      continue;
    }
    kernels::scale(1.0 / sigma, v.data(), n);
    if (it + 1 >= iters) {
      double res = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double d = kernels::dot(x.row_ptr(i), v.data(), n) - sigma * u[i];
        res += d * d;
      }
      res = std::sqrt(res);
      if (res <= 1e-6 * sigma) break;
      if (res > 0.995 * prev_res) break;  // stalled
      prev_res = res;
    }
  }
  out.sigma0 = sigma;
  return out;
}

Matrix downsample2(const Matrix& x, int phase_row, int phase_col) {
  if (x.rows() < 2 || x.cols() < 2)
    throw Error(Errc::TooSmall, "downsample2: both dimensions must be >= 2");
  if ((phase_row != 0 && phase_row != 1) || (phase_col != 0 && phase_col != 1))
    throw Error(Errc::InvalidArgument, "downsample2: phases must be 0 or 1");
  const std::size_t r = x.rows(), c = x.cols();
  Matrix out(r / 2, c / 2);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    std::size_t r0 = (2 * i + static_cast<std::size_t>(phase_row)) % r;
    std::size_t r1 = (r0 + 1) % r;
    for (std::size_t j = 0; j < out.cols(); ++j) {
      std::size_t c0 = (2 * j + static_cast<std::size_t>(phase_col)) % c;
      std::size_t c1 = (c0 + 1) % c;
      out(i, j) = 0.25 * (x(r0, c0) + x(r0, c1) + x(r1, c0) + x(r1, c1));
    }
  }
  return out;
}

Matrix orthonormal_columns(const Matrix& a) {
  if (a.rows() < a.cols())
    throw Error(Errc::InvalidArgument, "orthonormal_columns: needs rows >= cols");
  const std::size_t m = a.rows(), n = a.cols();
  Matrix q = a;
  // Modified Gram-Schmidt with one reorthogonalization pass.
  std::vector<double> col(m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) col[i] = q(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += q(i, k) * col[i];
        for (std::size_t i = 0; i < m; ++i) col[i] -= proj * q(i, k);
      }
    }
    double norm = std::sqrt(kernels::sum_sq(col.data(), m));
    if (norm == 0.0)
      throw Error(Errc::InvalidArgument, "orthonormal_columns: rank deficient input");
    for (std::size_t i = 0; i < m; ++i) q(i, j) = col[i] / norm;
  }
  return q;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n * n; ++i) g.data()[i] = rng.normal();
  return orthonormal_columns(g);
}

SymEigen symmetric_eigen(const Matrix& a) {
  ensure_square(a, "symmetric_eigen");
  const std::size_t n = a.rows();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += w(p, q) * w(p, q);
    if (off <= 1e-28 * std::max(1.0, w.frob_norm_sq())) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (w(p, q) == 0.0) continue;
        double theta = (w(q, q) - w(p, p)) / (2.0 * w(p, q));
        double t = std::copysign(1.0, theta) /
                   (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          double wip = w(i, p), wiq = w(i, q);
          w(i, p) = c * wip - s * wiq;
          w(i, q) = s * wip + c * wiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          double wpj = w(p, j), wqj = w(q, j);
          w(p, j) = c * wpj - s * wqj;
          w(q, j) = s * wpj + c * wqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }
  SymEigen out;
  out.vectors = std::move(v);
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = w(i, i);
  return out;
}

LogDet log_det(const Matrix& x) {
  ensure_square(x, "log_det");
  const std::size_t n = x.rows();
  Matrix lu = x;
  LogDet res;
  res.sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    if (best == 0.0) {
      res.sign = 0;
      res.log_abs = -std::numeric_limits<double>::infinity();
      return res;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      res.sign = -res.sign;
    }
    double pivot = lu(k, k);
    if (pivot < 0.0) res.sign = -res.sign;
    res.log_abs += std::log(std::abs(pivot));
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = lu(i, k) / pivot;
      lu(i, k) = f;
      if (f != 0.0) kernels::axpy(-f, lu.row_ptr(k) + k + 1, lu.row_ptr(i) + k + 1, n - k - 1);
    }
  }
  return res;
}

}  // namespace dfnkit
