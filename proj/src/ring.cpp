#include "latdec/ring.hpp"

#include "latdec/errors.hpp"

namespace latdec {

std::string_view ring_name(RingTag tag) {
  return tag == RingTag::GaussianInt ? "gaussian" : "lambda";
}

RingElement ring_add(const RingElement& x, const RingElement& y) {
  return {x.p + y.p, x.q + y.q};
}

RingElement ring_mul(RingTag tag, const RingElement& x, const RingElement& y) {
  if (tag == RingTag::GaussianInt) {
    return {x.p * y.p - x.q * y.q, x.p * y.q + x.q * y.p};
  }
  // lambda^2 = lambda - 2
  return {x.p * y.p - 2 * x.q * y.q, x.p * y.q + x.q * y.p + x.q * y.q};
}

RingElement ring_conj(RingTag tag, const RingElement& x) {
  if (tag == RingTag::GaussianInt) return {x.p, -x.q};
  // conj(lambda) = 1 - lambda
  return {x.p + x.q, -x.q};
}

Rational ring_abs_sq(RingTag tag, const RingElement& x) {
  if (tag == RingTag::GaussianInt) return x.p * x.p + x.q * x.q;
  return x.p * x.p + x.p * x.q + 2 * x.q * x.q;
}

RingElement ring_inverse(RingTag tag, const RingElement& x) {
  const Rational n = ring_abs_sq(tag, x);
  if (sgn(n) == 0) throw ValidationError("inverse of zero ring element");
  RingElement c = ring_conj(tag, x);
  return {c.p / n, c.q / n};
}

QSqrt7 real_part(RingTag tag, const RingElement& x) {
  if (tag == RingTag::GaussianInt) return QSqrt7(x.p);
  return QSqrt7(x.p + x.q / 2);
}

QSqrt7 imag_part(RingTag tag, const RingElement& x) {
  if (tag == RingTag::GaussianInt) return QSqrt7(x.q);
  return QSqrt7(0, x.q / 2);
}

RingElement lambda_elem() { return {0, 1}; }
RingElement psi_elem() { return {1, -1}; }
RingElement phi_elem() { return {1, 1}; }

std::string format_ring_element(RingTag tag, const RingElement& x) {
  std::string out = x.p.get_str();
  if (sgn(x.q) >= 0) out += '+';
  out += x.q.get_str();
  out += tag == RingTag::GaussianInt ? "i" : "*l";
  return out;
}

RingElement parse_ring_element(RingTag tag, std::string_view text) {
  const std::string_view suffix = tag == RingTag::GaussianInt ? "i" : "*l";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix) {
    return {parse_rational(text), 0};
  }
  const std::string_view body = text.substr(0, text.size() - suffix.size());
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if (body[i] == '+' || body[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (body.empty() || body == "+") return {0, 1};
    if (body == "-") return {0, -1};
    return {0, parse_rational(body)};
  }
  return {parse_rational(body.substr(0, split)), parse_rational(body.substr(split))};
}

ComplexBasis scale(const ComplexBasis& basis, const RingElement& s) {
  ComplexBasis out = basis;
  for (std::size_t i = 0; i < out.entries.rows(); ++i)
    for (std::size_t j = 0; j < out.entries.cols(); ++j)
      out.entries(i, j) = ring_mul(basis.ring, basis.entries(i, j), s);
  return out;
}

ExactMatrix complex_to_real_matrix(const ComplexBasis& basis) {
  const std::size_t m = basis.entries.rows();
  if (basis.entries.cols() != m) throw ValidationError("complex basis must be square");
  const RingElement omega{0, 1};
  ExactMatrix out(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const RingElement& z = basis.entries(i, j);
      const RingElement wz = ring_mul(basis.ring, omega, z);
      out(2 * i, 2 * j) = real_part(basis.ring, z);
      out(2 * i, 2 * j + 1) = imag_part(basis.ring, z);
      out(2 * i + 1, 2 * j) = real_part(basis.ring, wz);
      out(2 * i + 1, 2 * j + 1) = imag_part(basis.ring, wz);
    }
  }
  return out;
}

ExactMatrix rotation_operator(std::size_t n, RingTag tag, const RingElement& theta) {
  if (n == 0 || n % 2 != 0) throw ValidationError("rotation operator needs even dimension");
  ExactMatrix block(2, 2);
  const QSqrt7 a = real_part(tag, theta);
  const QSqrt7 b = imag_part(tag, theta);
  block(0, 0) = a;
  block(0, 1) = b;
  block(1, 0) = -b;
  block(1, 1) = a;
  return kron_identity(n / 2, block);
}

}  // namespace latdec
