#include "latdec/exact.hpp"

#include <cctype>
#include <cmath>

#include "latdec/errors.hpp"

namespace latdec {

int QSqrt7::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger magnitude wins.
  const Rational lhs = a_ * a_;
  const Rational rhs = 7 * b_ * b_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double QSqrt7::to_double() const {
  if (sgn(b_) == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(7.0);
}

QSqrt7& QSqrt7::operator+=(const QSqrt7& o) {
  a_ += o.a_;
  if (sgn(o.b_) != 0) b_ += o.b_;
  return *this;
}

QSqrt7& QSqrt7::operator-=(const QSqrt7& o) {
  a_ -= o.a_;
  if (sgn(o.b_) != 0) b_ -= o.b_;
  return *this;
}

QSqrt7& QSqrt7::operator*=(const QSqrt7& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 7 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QSqrt7& QSqrt7::operator/=(const QSqrt7& o) {
  if (o.is_zero()) throw ValidationError("division by zero in Q(sqrt 7)");
  if (sgn(o.b_) == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  const Rational n = o.field_norm();
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

std::string QSqrt7::str() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string out = a_.get_str();
  if (sgn(b_) > 0) out += '+';
  out += b_.get_str();
  out += "*r7";
  return out;
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ValidationError("empty rational");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool slash = false;
  bool digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c == '/' && !slash && digit) {
      slash = true;
      digit = false;
    } else {
      throw ValidationError("malformed rational: " + std::string(text));
    }
  }
  if (!digit) throw ValidationError("malformed rational: " + std::string(text));
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ValidationError("malformed rational: " + s);
  if (sgn(q.get_den()) == 0) throw ValidationError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

QSqrt7 QSqrt7::parse(std::string_view text) {
  constexpr std::string_view kSurd = "*r7";
  if (text.size() < kSurd.size() || text.substr(text.size() - kSurd.size()) != kSurd) {
    return QSqrt7(parse_rational(text));
  }
  const std::string_view body = text.substr(0, text.size() - kSurd.size());
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if (body[i] == '+' || body[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return QSqrt7(0, parse_rational(body));
  return QSqrt7(parse_rational(body.substr(0, split)), parse_rational(body.substr(split)));
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.cols() != y.rows()) throw ValidationError("matrix shape mismatch");
  ExactMatrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t l = 0; l < x.cols(); ++l) {
      const QSqrt7& xil = x(i, l);
      if (xil.is_zero()) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) {
        if (y(l, j).is_zero()) continue;
        out(i, j) += xil * y(l, j);
      }
    }
  }
  return out;
}

ExactMatrix transpose(const ExactMatrix& m) {
  ExactMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

ExactMatrix scaled(const ExactMatrix& m, const QSqrt7& s) {
  ExactMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= s;
  return out;
}

ExactMatrix kron_identity(std::size_t copies, const ExactMatrix& block) {
  ExactMatrix out(copies * block.rows(), copies * block.cols());
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        out(c * block.rows() + i, c * block.cols() + j) = block(i, j);
  return out;
}

ExactVector row_times(const ExactVector& v, const ExactMatrix& m) {
  if (v.size() != m.rows()) throw ValidationError("vector/matrix shape mismatch");
  ExactVector out(m.cols());
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (v[l].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(l, j).is_zero()) continue;
      out[j] += v[l] * m(l, j);
    }
  }
  return out;
}

QSqrt7 determinant(ExactMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  QSqrt7 det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return QSqrt7(0);
    if (p != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const QSqrt7 inv = QSqrt7(1) / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const QSqrt7 f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) {
        if (!m(c, j).is_zero()) m(r, j) -= f * m(c, j);
      }
    }
  }
  return det;
}

ExactMatrix inverse(const ExactMatrix& src) {
  if (src.rows() != src.cols()) throw ValidationError("inverse of non-square matrix");
  const std::size_t n = src.rows();
  ExactMatrix m = src;
  ExactMatrix inv = ExactMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) throw ValidationError("singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const QSqrt7 piv = QSqrt7(1) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (!m(c, j).is_zero()) m(c, j) *= piv;
      if (!inv(c, j).is_zero()) inv(c, j) *= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      const QSqrt7 f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(c, j).is_zero()) m(r, j) -= f * m(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Eigen::MatrixXd to_double(const ExactMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

Eigen::RowVectorXd to_double(const ExactVector& v) {
  Eigen::RowVectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].to_double();
  return out;
}

bool all_rational(const ExactMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_rational()) return false;
  return true;
}

}  // namespace latdec
