#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "dfnkit/errors.hpp"

namespace dfnkit {

// Dense real matrix, row-major. The universal numeric carrier: spectrogram
// grids, network weights, Schur factors all use it.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0)
      throw Error(Errc::InvalidArgument, "matrix dimensions must be >= 1");
  }

  // Brace construction for small literals in tests and examples.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& storage() { return data_; }
  const std::vector<double>& storage() const { return data_; }

  bool all_finite() const;
  double frob_norm_sq() const;
  double frob_norm() const;
  double trace() const;

  Matrix transposed() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);  // kernels::matmul

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// A * B^T and A^T * B, mapped onto the corresponding kernels.
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);

void ensure_same_shape(const Matrix& a, const Matrix& b, const char* what);
void ensure_square(const Matrix& m, const char* what);
void ensure_finite(const Matrix& m, const char* what);

// Text interchange format: first line "rows cols", then one line per row of
// space-separated decimals written with 17 significant digits.
Matrix read_matrix_text(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix_text(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::string& path, const Matrix& m);

}  // namespace dfnkit
