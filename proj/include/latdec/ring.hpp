#pragma once

#include <string>
#include <string_view>

#include "latdec/exact.hpp"

namespace latdec {

/// Ring of integers used for a complex structure: Z[i] or Z[lambda], lambda = (1+i*sqrt7)/2.
enum class RingTag { GaussianInt, Lambda };

std::string_view ring_name(RingTag tag);

/// p + q*omega with omega = i (GaussianInt) or lambda (Lambda); p, q rational.
struct RingElement {
  Rational p;
  Rational q;

  friend bool operator==(const RingElement& x, const RingElement& y) {
    return x.p == y.p && x.q == y.q;
  }
};

RingElement ring_add(const RingElement& x, const RingElement& y);
RingElement ring_mul(RingTag tag, const RingElement& x, const RingElement& y);
RingElement ring_conj(RingTag tag, const RingElement& x);
Rational ring_abs_sq(RingTag tag, const RingElement& x);
RingElement ring_inverse(RingTag tag, const RingElement& x);

/// Real and imaginary parts as elements of Q(sqrt 7).
QSqrt7 real_part(RingTag tag, const RingElement& x);
QSqrt7 imag_part(RingTag tag, const RingElement& x);

RingElement lambda_elem();  // (1+i*sqrt7)/2
RingElement psi_elem();     // conjugate of lambda
RingElement phi_elem();     // 1+i

/// Ring element written as "a+bi" (GaussianInt) or "p+q*l" (Lambda).
std::string format_ring_element(RingTag tag, const RingElement& x);
RingElement parse_ring_element(RingTag tag, std::string_view text);

/// Generator matrix over Z[i] or Z[lambda]; rows are basis vectors.
struct ComplexBasis {
  RingTag ring = RingTag::GaussianInt;
  Matrix<RingElement> entries;

  std::size_t complex_dim() const { return entries.rows(); }
  std::size_t real_dim() const { return 2 * entries.rows(); }
};

ComplexBasis scale(const ComplexBasis& basis, const RingElement& s);

/// Real generator of the lattice spanned by the complex rows and their
/// omega-multiples; complex component j sits on real columns 2j, 2j+1 and
/// complex row i yields real rows 2i (z) and 2i+1 (omega*z).
ExactMatrix complex_to_real_matrix(const ComplexBasis& basis);

/// n x n matrix I_{n/2} (x) [[a, b], [-b, a]] for theta = a+ib; right
/// multiplication by it multiplies every complex coordinate by theta.
ExactMatrix rotation_operator(std::size_t n, RingTag tag, const RingElement& theta);

}  // namespace latdec
