#include "infconv/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cctype>
#include <cmath>
#include <limits>

namespace infconv {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": dimension mismatch");
}

template <class T>
void require_product(const Matrix<T>& a, const Matrix<T>& b) {
  require_same_size(a.cols(), b.rows(), "matrix product");
}

Eigen::MatrixXd to_eigen(const QMat& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).get_d();
  return e;
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in multiplication");
  return r;
}

Int to_int(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::Overflow, "integer does not fit in 64 bits");
  return static_cast<Int>(z.get_si());
}

IMat operator*(const IMat& a, const IMat& b) {
  require_product(a, b);
  IMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s = checked_add(s, checked_mul(a(i, k), b(k, j)));
      r(i, j) = s;
    }
  return r;
}

QMat operator*(const QMat& a, const QMat& b) {
  require_product(a, b);
  QMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

DMat operator*(const DMat& a, const DMat& b) {
  require_product(a, b);
  DMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

IVec operator*(const IMat& m, const IVec& v) {
  require_same_size(m.cols(), v.size(), "matrix-vector product");
  IVec r(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] = checked_add(r[i], checked_mul(m(i, j), v[j]));
  return r;
}

QVec operator*(const QMat& m, const QVec& v) {
  require_same_size(m.cols(), v.size(), "matrix-vector product");
  QVec r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

QVec operator*(const QMat& m, const IVec& v) {
  require_same_size(m.cols(), v.size(), "matrix-vector product");
  QVec r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * Rational(static_cast<long>(v[j]));
  return r;
}

DVec operator*(const DMat& m, const DVec& v) {
  require_same_size(m.cols(), v.size(), "matrix-vector product");
  DVec r(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

IVec operator+(const IVec& a, const IVec& b) {
  require_same_size(a.size(), b.size(), "vector sum");
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

IVec operator-(const IVec& a, const IVec& b) {
  require_same_size(a.size(), b.size(), "vector difference");
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

QVec operator+(const QVec& a, const QVec& b) {
  require_same_size(a.size(), b.size(), "vector sum");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  require_same_size(a.size(), b.size(), "vector difference");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QMat to_rational(const IMat& m) {
  QMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long>(m(i, j)));
  return r;
}

QVec to_rational(const IVec& v) {
  QVec r;
  r.reserve(v.size());
  for (Int x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

DMat to_double(const QMat& m) {
  DMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

DMat to_double(const IMat& m) {
  DMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = static_cast<double>(m(i, j));
  return r;
}

DVec to_double(const QVec& v) {
  DVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.get_d());
  return r;
}

DVec to_double(const IVec& v) {
  return DVec(v.begin(), v.end());
}

Integer determinant(const IMat& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  std::vector<Integer> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<long>(m(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

Rational determinant(const QMat& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  QMat a = m;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

QMat inverse(const QMat& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMat a = m;
  QMat inv = QMat::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw Error(ErrorCode::NotInvertible, "not invertible");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    const Rational pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

QMat inverse(const IMat& m) { return inverse(to_rational(m)); }

bool is_diagonal(const IMat& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

Rational dot(const QVec& a, const QVec& b) {
  require_same_size(a.size(), b.size(), "dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const QVec& a, const IVec& b) {
  require_same_size(a.size(), b.size(), "dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(static_cast<long>(b[i]));
  return s;
}

Int dot(const IVec& a, const IVec& b) {
  require_same_size(a.size(), b.size(), "dot product");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

double dot(const DVec& a, const DVec& b) {
  require_same_size(a.size(), b.size(), "dot product");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

double euclidean_norm(const DVec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double euclidean_norm(const QVec& v) {
  Rational s = 0;
  for (const auto& x : v) s += x * x;
  return std::sqrt(s.get_d());
}

double euclidean_norm(const IVec& v) {
  double s = 0;
  for (Int x : v) s += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(s);
}

double operator_norm(const QMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  // Scale by the largest entry so products of many inverses don't lose range.
  Rational big = 0;
  for (const auto& x : m.data()) big = std::max(big, Rational(abs(x)));
  if (big == 0) return 0.0;
  QMat scaled = m;
  const Rational inv_big = 1 / big;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) scaled(i, j) *= inv_big;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(scaled));
  return svd.singularValues()(0) * big.get_d();
}

std::vector<std::complex<double>> eigenvalues(const QMat& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "eigenvalues of non-square matrix");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m), false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

std::vector<std::complex<double>> eigenvalues(const IMat& m) { return eigenvalues(to_rational(m)); }

Rational frobenius_norm_squared(const QMat& m) {
  Rational s = 0;
  for (const auto& x : m.data()) s += x * x;
  return s;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const IVec& v, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string to_string(const QVec& v, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += to_string(v[i]);
  }
  return s;
}

Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const std::string body(text.substr(b, e - b));
  auto valid_int = [](std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = body.find('/');
  const std::string num = body.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::InvalidArgument, "malformed rational '" + body + "'");
  }
  Integer n(num.front() == '+' ? num.substr(1) : num, 10);
  Integer d(den, 10);
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + body + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace infconv
