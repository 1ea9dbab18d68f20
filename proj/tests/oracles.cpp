#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dfnkit/linalg.hpp"

namespace oracles {

using dfnkit::Matrix;
using dfnkit::Rng;

std::vector<double> jacobi_singular_values(const Matrix& a) {
  // One-sided Jacobi on columns of a working copy of A (or A^T so that
  // rows >= cols): after convergence column norms are the singular values.
  Matrix w = a.rows() >= a.cols() ? a : a.transposed();
  const std::size_t m = w.rows(), n = w.cols();
  const double eps = 1e-14;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta + 1e-300));
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = std::copysign(1.0, zeta) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
      }
    }
    if (off < eps) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

double lu_det(const Matrix& a) {
  Matrix lu = a;
  const std::size_t n = lu.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = lu(i, k) / lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                            bool inverse) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      double ang = sgn * 2.0 * M_PI * static_cast<double>(k * t % n) / static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i)
    s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

Matrix fd_gradient(const std::function<double(const Matrix&)>& f, const Matrix& x,
                   double h) {
  Matrix g(x.rows(), x.cols());
  Matrix pert = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double orig = pert(i, j);
      pert(i, j) = orig + h;
      double up = f(pert);
      pert(i, j) = orig - h;
      double dn = f(pert);
      pert(i, j) = orig;
      g(i, j) = (up - dn) / (2.0 * h);
    }
  return g;
}

namespace {
std::vector<double> ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}
}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> ra = ranks(a), rb = ranks(b);
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double scale) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.normal();
  return m;
}

Matrix random_normal_matrix(std::size_t n, Rng& rng) {
  Matrix b(n, n);
  std::size_t i = 0;
  while (i < n) {
    if (i + 1 < n && rng.uniform01() < 0.5) {
      double re = 2.0 * rng.normal();
      double im = std::abs(rng.normal()) + 0.1;
      b(i, i) = re;
      b(i, i + 1) = im;
      b(i + 1, i) = -im;
      b(i + 1, i + 1) = re;
      i += 2;
    } else {
      b(i, i) = 2.0 * rng.normal();
      i += 1;
    }
  }
  Matrix q = dfnkit::random_orthogonal(n, rng);
  return q * b * q.transposed();
}

Matrix gabor_blob_sample(std::size_t side, Rng& rng, double amplitude) {
  Matrix s(side, side);
  const int blobs = 2 + static_cast<int>(rng.next_below(3));
  for (int b = 0; b < blobs; ++b) {
    double cr = rng.uniform(0.15, 0.85) * static_cast<double>(side);
    double cc = rng.uniform(0.15, 0.85) * static_cast<double>(side);
    double theta = rng.uniform(0.0, M_PI);
    double freq = rng.uniform(0.05, 0.35);
    double su = rng.uniform(0.08, 0.25) * static_cast<double>(side);
    double sv = rng.uniform(0.08, 0.25) * static_cast<double>(side);
    double phase = rng.uniform(0.0, 2.0 * M_PI);
    double amp = rng.uniform(0.4, 1.0);
    double ct = std::cos(theta), st = std::sin(theta);
    for (std::size_t i = 0; i < side; ++i)
      for (std::size_t j = 0; j < side; ++j) {
        double dr = static_cast<double>(i) - cr;
        double dc = static_cast<double>(j) - cc;
        double u = ct * dr + st * dc;
        double v = -st * dr + ct * dc;
        double env = std::exp(-0.5 * (u * u / (su * su) + v * v / (sv * sv)));
        s(i, j) += amp * env * std::cos(2.0 * M_PI * freq * u + phase);
      }
  }
  double peak = 0.0;
  for (double v : s.storage()) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) s *= amplitude / peak;
  return s;
}

}  // namespace oracles
