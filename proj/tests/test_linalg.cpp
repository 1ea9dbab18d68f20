#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "dfnkit/kernels.hpp"
#include "dfnkit/linalg.hpp"
#include "dfnkit/rng.hpp"
#include "oracles.hpp"

using namespace dfnkit;

namespace {

double reconstruction_residual(const Matrix& x, const SchurForm& f) {
  Matrix rec = f.q * f.t * f.q.transposed();
  return (rec - x).frob_norm() / x.frob_norm();
}

double orthogonality_defect(const Matrix& q) {
  Matrix g = matmul_tn(q, q);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.frob_norm();
}

}  // namespace

TEST_CASE("hessenberg: 2x2 input is already reduced") {
  Matrix x = {{1.0, 2.0}, {3.0, 4.0}};
  auto [q, h] = hessenberg_reduce(x);
  CHECK(q == Matrix::identity(2));
  CHECK(h == x);
}

TEST_CASE("hessenberg: symmetric input becomes tridiagonal") {
  Rng rng(5);
  Matrix a = oracles::random_matrix(4, 4, rng);
  Matrix x = a + a.transposed();
  auto [q, h] = hessenberg_reduce(x);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i > j + 1 || j > i + 1) CHECK(std::abs(h(i, j)) < 1e-12);
}

TEST_CASE("hessenberg: random 8x8 reconstructs") {
  Rng rng(17);
  Matrix x = oracles::random_matrix(8, 8, rng);
  auto [q, h] = hessenberg_reduce(x);
  Matrix rec = q * h * q.transposed();
  CHECK((rec - x).frob_norm() < 1e-10 * x.frob_norm());
  for (std::size_t i = 2; i < 8; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) CHECK(h(i, j) == 0.0);
  CHECK(orthogonality_defect(q) < 1e-13);
}

TEST_CASE("hessenberg rejects non-square input") {
  Matrix x(2, 3);
  CHECK_THROWS_AS(hessenberg_reduce(x), Error);
}

TEST_CASE("schur: upper-triangular input returns Q = I and the diagonal") {
  Matrix x = {{2.0, 1.0, 0.5}, {0.0, -3.0, 2.0}, {0.0, 0.0, 7.0}};
  SchurForm f = real_schur(x);
  CHECK(f.q == Matrix::identity(3));
  CHECK(f.t == x);
  REQUIRE(f.eigenvalues.size() == 3);
  CHECK(f.eigenvalues[0] == std::complex<double>(2.0));
  CHECK(f.eigenvalues[1] == std::complex<double>(-3.0));
  CHECK(f.eigenvalues[2] == std::complex<double>(7.0));
}

TEST_CASE("schur: symmetric 2x2 analytic eigenvalues") {
  Matrix x = {{2.0, 1.0}, {1.0, 2.0}};
  SchurForm f = real_schur(x);
  std::vector<double> eigs = {f.eigenvalues[0].real(), f.eigenvalues[1].real()};
  std::sort(eigs.begin(), eigs.end());
  CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(f.eigenvalues[0].imag()) < 1e-14);
  CHECK(reconstruction_residual(x, f) < 1e-12);
}

TEST_CASE("schur: rotation matrix gives one 2x2 block with eigenvalues +-i") {
  Matrix x = {{0.0, -1.0}, {1.0, 0.0}};
  SchurForm f = real_schur(x);
  CHECK(f.t(1, 0) != 0.0);  // kept as a 2x2 block
  std::complex<double> l0 = f.eigenvalues[0], l1 = f.eigenvalues[1];
  CHECK(std::abs(l0.real()) < 1e-14);
  CHECK(std::abs(std::abs(l0.imag()) - 1.0) < 1e-14);
  CHECK(l1 == std::conj(l0));
}

TEST_CASE("schur invariants over random matrices of many sizes") {
  Rng rng(99);
  int count = 0;
  for (std::size_t n : {4u, 8u, 16u, 32u, 64u}) {
    for (int rep = 0; rep < 8; ++rep) {
      Matrix x = oracles::random_matrix(n, n, rng, rng.uniform(0.2, 3.0));
      SchurForm f = real_schur(x);
      ++count;
      CHECK(reconstruction_residual(x, f) < 1e-8);
      CHECK(orthogonality_defect(f.q) < 1e-10 * static_cast<double>(n));

      // T is quasi-upper-triangular with exact zeros below the blocks.
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) CHECK(f.t(i, j) == 0.0);
      for (std::size_t i = 1; i + 1 < n; ++i)
        CHECK(!(f.t(i, i - 1) != 0.0 && f.t(i + 1, i) != 0.0));  // no 3x3 runs

      // Eigenvalue sum = trace.
      std::complex<double> sum = 0.0;
      for (auto l : f.eigenvalues) sum += l;
      CHECK(std::abs(sum.real() - x.trace()) <= 1e-8 * x.frob_norm());
      CHECK(std::abs(sum.imag()) <= 1e-10 * x.frob_norm());
    }
  }
  CHECK(count == 40);
}

TEST_CASE("schur: eigenvalue product matches LU determinant") {
  Rng rng(123);
  for (std::size_t n : {3u, 5u, 8u, 12u}) {
    Matrix x = oracles::random_matrix(n, n, rng);
    SchurForm f = real_schur(x);
    std::complex<double> prod = 1.0;
    for (auto l : f.eigenvalues) prod *= l;
    double det = oracles::lu_det(x);
    CHECK(prod.real() == doctest::Approx(det).epsilon(1e-6));
    CHECK(std::abs(prod.imag()) < 1e-6 * std::abs(det));
  }
}

TEST_CASE("schur: idempotence on T up to block ordering") {
  Rng rng(321);
  Matrix x = oracles::random_matrix(12, 12, rng);
  SchurForm f1 = real_schur(x);
  SchurForm f2 = real_schur(f1.t);
  CHECK(orthogonality_defect(f2.q) < 1e-10 * 12);
  auto key = [](const std::complex<double>& c) {
    return std::make_pair(c.real(), c.imag());
  };
  std::vector<std::pair<double, double>> a, b;
  for (auto l : f1.eigenvalues) a.push_back(key(l));
  for (auto l : f2.eigenvalues) b.push_back(key(l));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == doctest::Approx(b[i].first).epsilon(1e-8));
    CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-8));
  }
}

TEST_CASE("schur: defective Jordan-like matrix still factorizes") {
  // Classic stress case: shifts stall on symmetric-permutation structure.
  Matrix x = {{0.0, 0.0, 0.0, 1.0},
              {1.0, 0.0, 0.0, 0.0},
              {0.0, 1.0, 0.0, 0.0},
              {0.0, 0.0, 1.0, 0.0}};
  SchurForm f = real_schur(x);
  CHECK(reconstruction_residual(x, f) < 1e-10);
  // Eigenvalues are the 4th roots of unity.
  double sum_abs = 0.0;
  for (auto l : f.eigenvalues) sum_abs += std::abs(l);
  CHECK(sum_abs == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("schur reports no-convergence with a stuck index") {
  Rng rng(9);
  Matrix x = oracles::random_matrix(8, 8, rng);
  try {
    real_schur(x, 1e-12, 1);  // one sweep cannot deflate an 8x8
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoConvergence);
    CHECK(e.detail().find("index") != std::string::npos);
  }
}

TEST_CASE("top singular triplet: diag(3,1)") {
  Matrix x = {{3.0, 0.0}, {0.0, 1.0}};
  auto t = top_singular_triplet(x);
  CHECK(t.sigma0 == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::abs(std::abs(t.u0[0]) - 1.0) < 1e-6);
  CHECK(std::abs(std::abs(t.v0[0]) - 1.0) < 1e-6);
}

TEST_CASE("top singular triplet: rank-1 outer product") {
  Rng rng(14);
  std::vector<double> a(6), b(4);
  for (auto& e : a) e = rng.normal();
  for (auto& e : b) e = rng.normal();
  Matrix x(6, 4);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j) x(i, j) = a[i] * b[j];
  double na = std::sqrt(kernels::sum_sq(a.data(), a.size()));
  double nb = std::sqrt(kernels::sum_sq(b.data(), b.size()));
  auto t = top_singular_triplet(x);
  CHECK(t.sigma0 == doctest::Approx(na * nb).epsilon(1e-10));
}

TEST_CASE("top singular triplet matches the Jacobi SVD oracle") {
  Rng rng(2024);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix x = oracles::random_matrix(16, 16, rng);
    auto sv = oracles::jacobi_singular_values(x);
    if (sv[1] > 0.9 * sv[0]) continue;  // oracle-checked gap >= 10%
    auto t = top_singular_triplet(x);
    CHECK(t.sigma0 == doctest::Approx(sv[0]).epsilon(1e-4));
    // x v0 ~ sigma0 u0
    double err = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      double xi = kernels::dot(x.row_ptr(i), t.v0.data(), 16);
      err += (xi - t.sigma0 * t.u0[i]) * (xi - t.sigma0 * t.u0[i]);
    }
    CHECK(std::sqrt(err) < 1e-4 * t.sigma0);
  }
}

TEST_CASE("top singular triplet rejects the zero matrix") {
  Matrix x(3, 3);
  CHECK_THROWS_AS(top_singular_triplet(x), Error);
}

TEST_CASE("downsample2 examples") {
  Matrix ones = {{1.0, 1.0}, {1.0, 1.0}};
  Matrix d = downsample2(ones, 0, 0);
  CHECK(d.rows() == 1);
  CHECK(d.cols() == 1);
  CHECK(d(0, 0) == 1.0);

  Matrix m(4, 4);
  for (std::size_t i = 0; i < 16; ++i) m.data()[i] = static_cast<double>(i + 1);
  Matrix p = downsample2(m, 0, 0);
  CHECK(p(0, 0) == 3.5);
  CHECK(p(0, 1) == 5.5);
  CHECK(p(1, 0) == 11.5);
  CHECK(p(1, 1) == 13.5);

  Matrix five(5, 5, 1.0);
  for (int pr = 0; pr <= 1; ++pr)
    for (int pc = 0; pc <= 1; ++pc) {
      Matrix out = downsample2(five, pr, pc);
      CHECK(out.rows() == 2);
      CHECK(out.cols() == 2);
    }

  CHECK_THROWS_AS(downsample2(Matrix(1, 5, 1.0), 0, 0), Error);
}

TEST_CASE("random orthogonal matrices are orthogonal") {
  Rng rng(31415);
  Matrix q = random_orthogonal(10, rng);
  CHECK(orthogonality_defect(q) < 1e-13);
}

TEST_CASE("log_det agrees with the plain LU oracle") {
  Rng rng(777);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix x = oracles::random_matrix(6, 6, rng);
    double det = oracles::lu_det(x);
    LogDet ld = log_det(x);
    CHECK(ld.sign == (det < 0 ? -1 : 1));
    CHECK(ld.log_abs == doctest::Approx(std::log(std::abs(det))).epsilon(1e-10));
  }
}
