#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "dfnkit/matrix.hpp"

namespace dfnkit {

// Real Schur factorization X = Q T Q^T with orthogonal Q and
// quasi-upper-triangular T (1x1 and 2x2 diagonal blocks). Eigenvalues come
// from the diagonal blocks; 2x2 blocks carry complex-conjugate pairs.
struct SchurForm {
  Matrix q;
  Matrix t;
  std::vector<std::complex<double>> eigenvalues;
};

struct HessenbergResult {
  Matrix q;
  Matrix h;
};

// Orthogonal similarity reduction to upper Hessenberg form: q^T x q = h.
HessenbergResult hessenberg_reduce(const Matrix& x);

// Francis implicit double-shift QR with ad-hoc exceptional shifts every 10
// stalled sweeps. Deflation: |h(i+1,i)| <= tol * (|h(i,i)| + |h(i+1,i+1)|).
// Throws NoConvergence (reporting the stuck index) if a subdiagonal entry
// refuses to deflate within max_sweeps (0 means the 30*n default).
SchurForm real_schur(const Matrix& x, double tol = 1e-12,
                     std::size_t max_sweeps = 0);

struct SingularTriplet {
  double sigma0 = 0.0;
  std::vector<double> u0;
  std::vector<double> v0;
};

// Leading singular triplet by power iteration on x^T x. Adequate for
// matrices with a decently separated top singular value (gap >= 10%).
SingularTriplet top_singular_triplet(const Matrix& x, std::size_t iters = 30);

// Factor-of-two mean pooling. Each output entry is the mean of a 2x2 cell
// whose top-left corner starts at the given row/col phase offset; cell
// indices wrap circularly so every phase yields floor(rows/2) x floor(cols/2).
// With phase (0,0) this is plain 2x2 pooling with a trailing odd row/col
// dropped.
Matrix downsample2(const Matrix& x, int phase_row, int phase_col);

// Shared helpers.

// Thin QR via Householder reflections; returns Q with orthonormal columns
// (rows >= cols) scaled so diag(R) > 0.
Matrix orthonormal_columns(const Matrix& a);

// Haar-ish random orthogonal matrix from a seeded Gaussian + QR.
class Rng;
Matrix random_orthogonal(std::size_t n, Rng& rng);

// log|det| plus sign via LU with partial pivoting. sign is 0 for an exactly
// singular matrix.
struct LogDet {
  double log_abs = 0.0;
  int sign = 0;
};
LogDet log_det(const Matrix& x);

// Cyclic Jacobi eigendecomposition of a symmetric matrix: a = V diag(w) V^T
// with V's columns holding the eigenvectors.
struct SymEigen {
  Matrix vectors;
  std::vector<double> values;
};
SymEigen symmetric_eigen(const Matrix& a);

}  // namespace dfnkit
