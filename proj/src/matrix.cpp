#include "dfnkit/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dfnkit/kernels.hpp"

namespace dfnkit {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  if (rows_ == 0 || cols_ == 0)
    throw Error(Errc::InvalidArgument, "matrix dimensions must be >= 1");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw Error(Errc::InvalidArgument, "ragged initializer rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::frob_norm_sq() const {
  return kernels::sum_sq(data_.data(), data_.size());
}

double Matrix::frob_norm() const { return std::sqrt(frob_norm_sq()); }

double Matrix::trace() const {
  double t = 0.0;
  std::size_t n = rows_ < cols_ ? rows_ : cols_;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  ensure_same_shape(*this, o, "operator+");
  kernels::vadd(data_.data(), o.data_.data(), data_.data(), data_.size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  ensure_same_shape(*this, o, "operator-");
  kernels::vsub(data_.data(), o.data_.data(), data_.data(), data_.size());
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  kernels::scale(s, data_.data(), data_.size());
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(Errc::DimensionMismatch, "matmul inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  kernels::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "matmul_nt inner dimensions differ");
  Matrix c(a.rows(), b.rows());
  kernels::matmul_nt(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.rows());
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw Error(Errc::DimensionMismatch, "matmul_tn inner dimensions differ");
  Matrix c(a.cols(), b.cols());
  kernels::matmul_tn(a.data(), b.data(), c.data(), a.cols(), a.rows(), b.cols());
  return c;
}

void ensure_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, std::string(what) + ": shapes differ");
}

void ensure_square(const Matrix& m, const char* what) {
  if (!m.square())
    throw Error(Errc::NonSquare, std::string(what) + ": matrix is not square");
}

void ensure_finite(const Matrix& m, const char* what) {
  if (!m.all_finite())
    throw Error(Errc::InvalidArgument, std::string(what) + ": non-finite entries");
}

Matrix read_matrix_text(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows == 0 || cols == 0)
    throw Error(Errc::CorruptHeader, "expected \"rows cols\" header with positive dims");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    if (!(in >> m.data()[i]))
      throw Error(Errc::CorruptHeader, "matrix body shorter than rows*cols");
  }
  if (!m.all_finite())
    throw Error(Errc::InvalidArgument, "matrix contains non-finite entries");
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::IoError, "cannot open " + path);
  return read_matrix_text(f);
}

void write_matrix_text(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << buf << (j + 1 == m.cols() ? '\n' : ' ');
    }
  }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  write_matrix_text(f, m);
}

}  // namespace dfnkit
