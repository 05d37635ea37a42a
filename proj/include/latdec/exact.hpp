#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace latdec {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element a + b*sqrt(7) of the real quadratic field Q(sqrt 7).
///
/// Every lattice in this library has coordinates in this field: Z[i] lattices
/// are rational, Z[lambda] lattices put sqrt(7) multiples on odd coordinates.
class QSqrt7 {
 public:
  QSqrt7() = default;
  QSqrt7(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt7(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {  // NOLINT
    a_.canonicalize();
    b_.canonicalize();
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;
  double to_double() const;

  QSqrt7 conjugate() const { return {a_, -b_}; }
  Rational field_norm() const { return a_ * a_ - 7 * b_ * b_; }
  QSqrt7 times_sqrt7() const { return {7 * b_, a_}; }

  QSqrt7& operator+=(const QSqrt7& o);
  QSqrt7& operator-=(const QSqrt7& o);
  QSqrt7& operator*=(const QSqrt7& o);
  QSqrt7& operator/=(const QSqrt7& o);
  QSqrt7 operator-() const { return {-a_, -b_}; }

  friend QSqrt7 operator+(QSqrt7 x, const QSqrt7& y) { return x += y; }
  friend QSqrt7 operator-(QSqrt7 x, const QSqrt7& y) { return x -= y; }
  friend QSqrt7 operator*(QSqrt7 x, const QSqrt7& y) { return x *= y; }
  friend QSqrt7 operator/(QSqrt7 x, const QSqrt7& y) { return x /= y; }
  friend bool operator==(const QSqrt7& x, const QSqrt7& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QSqrt7& x, const QSqrt7& y) { return !(x == y); }
  friend bool operator<(const QSqrt7& x, const QSqrt7& y) { return (x - y).sign() < 0; }

  /// "a" for rationals, "a+b*r7" otherwise (r7 stands for sqrt 7).
  std::string str() const;
  static QSqrt7 parse(std::string_view text);

 private:
  Rational a_;
  Rational b_;
};

Rational parse_rational(std::string_view text);

/// num/den in canonical form (mpq_class's two-argument constructor is not).
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Dense row-major matrix, used with QSqrt7 and Integer entries.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = Matrix<QSqrt7>;
using ExactVector = std::vector<QSqrt7>;

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
ExactMatrix transpose(const ExactMatrix& m);
ExactMatrix scaled(const ExactMatrix& m, const QSqrt7& s);
ExactMatrix kron_identity(std::size_t copies, const ExactMatrix& block);
ExactVector row_times(const ExactVector& v, const ExactMatrix& m);

/// Determinant by exact Gaussian elimination.
QSqrt7 determinant(ExactMatrix m);
/// Inverse by exact Gauss-Jordan elimination; throws on singular input.
ExactMatrix inverse(const ExactMatrix& m);

Eigen::MatrixXd to_double(const ExactMatrix& m);
Eigen::RowVectorXd to_double(const ExactVector& v);
bool all_rational(const ExactMatrix& m);

}  // namespace latdec
