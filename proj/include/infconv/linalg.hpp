#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "infconv/error.hpp"

namespace infconv {

using Int = std::int64_t;
using Integer = mpz_class;
using Rational = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rational>;
using DVec = std::vector<double>;

// Dense row-major matrix. Small (d <= a handful) so no expression templates.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) {
        throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
      }
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix diagonal(const std::vector<T>& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IMat = Matrix<Int>;
using QMat = Matrix<Rational>;
using DMat = Matrix<double>;

// Checked 64-bit integer arithmetic; throws ErrorCode::Overflow.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int to_int(const Integer& z);

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

IMat operator*(const IMat& a, const IMat& b);
QMat operator*(const QMat& a, const QMat& b);
DMat operator*(const DMat& a, const DMat& b);
IVec operator*(const IMat& m, const IVec& v);
QVec operator*(const QMat& m, const QVec& v);
QVec operator*(const QMat& m, const IVec& v);
DVec operator*(const DMat& m, const DVec& v);

IVec operator+(const IVec& a, const IVec& b);
IVec operator-(const IVec& a, const IVec& b);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);

QMat to_rational(const IMat& m);
QVec to_rational(const IVec& v);
DMat to_double(const QMat& m);
DMat to_double(const IMat& m);
DVec to_double(const QVec& v);
DVec to_double(const IVec& v);

Integer determinant(const IMat& m);
Rational determinant(const QMat& m);
/// Exact inverse; throws ErrorCode::NotInvertible for singular input.
QMat inverse(const QMat& m);
QMat inverse(const IMat& m);

bool is_diagonal(const IMat& m);

Rational dot(const QVec& a, const QVec& b);
Rational dot(const QVec& a, const IVec& b);
Int dot(const IVec& a, const IVec& b);
double dot(const DVec& a, const DVec& b);

Integer floor(const Rational& q);
/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

double euclidean_norm(const DVec& v);
double euclidean_norm(const QVec& v);
double euclidean_norm(const IVec& v);

/// Largest singular value of the exact matrix, evaluated in double.
double operator_norm(const QMat& m);
std::vector<std::complex<double>> eigenvalues(const QMat& m);
std::vector<std::complex<double>> eigenvalues(const IMat& m);

/// Squared Frobenius norm, exact.
Rational frobenius_norm_squared(const QMat& m);

std::string to_string(const Rational& q);
std::string to_string(const IVec& v, std::string_view sep = ",");
std::string to_string(const QVec& v, std::string_view sep = ",");
/// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

}  // namespace infconv
