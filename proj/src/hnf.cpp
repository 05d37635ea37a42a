#include "latdec/hnf.hpp"

#include "latdec/errors.hpp"

namespace latdec {
namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  Integer g, s, t, u, v, x, y;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(m(i, c)) != 0) {
        swap_rows(m, r, i);
        break;
      }
    }
    if (sgn(m(r, c)) == 0) continue;
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Integer a = m(r, c);
      const Integer b = m(i, c);
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      u = -b / g;
      v = a / g;
      for (std::size_t j = c; j < cols; ++j) {
        x = m(r, j);
        y = m(i, j);
        m(r, j) = s * x + t * y;
        m(i, j) = u * x + v * y;
      }
    }
    if (sgn(m(r, c)) < 0) {
      for (std::size_t j = c; j < cols; ++j) m(r, j) = -m(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Integer q = floor_div(m(i, c), m(r, c));
      if (sgn(q) == 0) continue;
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= q * m(r, j);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

Integer common_denominator(const ExactMatrix& m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).rational_part().get_den_mpz_t());
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).surd_part().get_den_mpz_t());
    }
  }
  return d;
}

IntMatrix integerize(const ExactMatrix& m, const Integer& denom) {
  IntMatrix out(m.rows(), 2 * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational a = m(i, j).rational_part() * denom;
      const Rational b = m(i, j).surd_part() * denom;
      if (a.get_den() != 1 || b.get_den() != 1) {
        throw ValidationError("integerize: denominator does not clear entries");
      }
      out(i, 2 * j) = a.get_num();
      out(i, 2 * j + 1) = b.get_num();
    }
  }
  return out;
}

ExactMatrix deintegerize(const IntMatrix& m, const Integer& denom) {
  ExactMatrix out(m.rows(), m.cols() / 2);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      Rational a(m(i, 2 * j), denom);
      Rational b(m(i, 2 * j + 1), denom);
      a.canonicalize();
      b.canonicalize();
      out(i, j) = QSqrt7(a, b);
    }
  }
  return out;
}

namespace {

ExactMatrix stack(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.cols()) throw ValidationError("lattice dimension mismatch");
  ExactMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

}  // namespace

bool lattice_contains(const ExactMatrix& super, const ExactMatrix& sub) {
  const ExactMatrix both = stack(super, sub);
  const Integer d = common_denominator(both);
  return hermite_normal_form(integerize(super, d)) == hermite_normal_form(integerize(both, d));
}

bool same_lattice(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.cols()) return false;
  Integer d = common_denominator(a);
  mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), common_denominator(b).get_mpz_t());
  return hermite_normal_form(integerize(a, d)) == hermite_normal_form(integerize(b, d));
}

ExactMatrix lattice_from_generators(const ExactMatrix& generators) {
  const Integer d = common_denominator(generators);
  const IntMatrix h = hermite_normal_form(integerize(generators, d));
  if (h.rows() != generators.cols()) {
    throw ValidationError("generators do not span a full-rank lattice of rank " +
                          std::to_string(generators.cols()) + " (rank " +
                          std::to_string(h.rows()) + ")");
  }
  return deintegerize(h, d);
}

bool integral_coordinates(const ExactVector& v, const ExactMatrix& basis_inverse,
                          std::vector<Integer>* z) {
  const ExactVector c = row_times(v, basis_inverse);
  if (z) z->clear();
  for (const QSqrt7& x : c) {
    if (!x.is_rational() || x.rational_part().get_den() != 1) return false;
    if (z) z->push_back(x.rational_part().get_num());
  }
  return true;
}

}  // namespace latdec
