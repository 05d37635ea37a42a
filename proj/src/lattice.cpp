#include "latdec/lattice.hpp"

#include <cmath>
#include <limits>

#include "latdec/errors.hpp"
#include "latdec/hnf.hpp"

namespace latdec {

std::string_view provenance_name(Provenance p) {
  return p == Provenance::Exact ? "exact" : "asserted";
}

LatticeBasis::LatticeBasis(ExactMatrix generator, std::string name) {
  if (generator.rows() == 0 || generator.rows() != generator.cols()) {
    throw ValidationError("lattice generator must be square and non-empty");
  }
  auto d = std::make_shared<Data>();
  d->name = std::move(name);
  d->gram = generator * transpose(generator);
  d->volume_sq = determinant(d->gram);
  if (d->volume_sq.sign() <= 0) throw ValidationError("singular lattice generator");
  d->generator_d = to_double(generator);
  d->generator = std::move(generator);

  if (all_rational(d->gram)) {
    Integer den = 1;
    const std::size_t n = d->gram.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d->gram(i, j).rational_part().get_den_mpz_t());
    bool fits = den.fits_slong_p();
    std::vector<std::int64_t> g(n * n);
    for (std::size_t i = 0; i < n && fits; ++i) {
      for (std::size_t j = 0; j < n && fits; ++j) {
        const Rational v = d->gram(i, j).rational_part() * den;
        // Leave headroom so quadratic forms over small coefficients stay in range.
        if (!v.get_num().fits_sint_p()) fits = false;
        else g[i * n + j] = v.get_num().get_si();
      }
    }
    if (fits) {
      d->int_gram = std::move(g);
      d->int_gram_denom = den.get_si();
    }
  }
  data_ = std::move(d);
}

LatticeBasis LatticeBasis::from_complex(const ComplexBasis& basis, std::string name) {
  return LatticeBasis(complex_to_real_matrix(basis), std::move(name)).with_complex(basis);
}

double LatticeBasis::volume() const { return std::sqrt(volume_sq().to_double()); }

bool LatticeBasis::is_integral() const {
  const ExactMatrix& g = gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (!g(i, j).is_rational() || g(i, j).rational_part().get_den() != 1) return false;
  return true;
}

bool LatticeBasis::is_even() const {
  if (!is_integral()) return false;
  const ExactMatrix& g = gram();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (!mpz_even_p(g(i, i).rational_part().get_num_mpz_t())) return false;
  }
  return true;
}

double LatticeBasis::min_sq_norm_d() const {
  if (!min_sq_norm_) throw ValidationError("minimum distance unknown for lattice " + name());
  return min_sq_norm_->value.to_double();
}

double LatticeBasis::coding_gain() const {
  const double n = static_cast<double>(dim());
  return min_sq_norm_d() / std::pow(volume_sq().to_double(), 1.0 / n);
}

double LatticeBasis::coding_gain_db() const { return 10.0 * std::log10(coding_gain()); }

LatticeBasis LatticeBasis::with_name(std::string name) const {
  LatticeBasis out = *this;
  auto d = std::make_shared<Data>(*data_);
  d->name = std::move(name);
  out.data_ = std::move(d);
  return out;
}

LatticeBasis LatticeBasis::with_min_sq_norm(QSqrt7 d, Provenance p) const {
  LatticeBasis out = *this;
  out.min_sq_norm_ = Known<QSqrt7>{std::move(d), p};
  return out;
}

LatticeBasis LatticeBasis::with_kissing(std::uint64_t tau, Provenance p) const {
  LatticeBasis out = *this;
  out.kissing_ = Known<std::uint64_t>{tau, p};
  return out;
}

LatticeBasis LatticeBasis::with_covering_radius(double r) const {
  LatticeBasis out = *this;
  out.covering_radius_ = r;
  return out;
}

LatticeBasis LatticeBasis::with_complex(ComplexBasis basis) const {
  if (basis.real_dim() != dim()) throw ValidationError("complex basis dimension mismatch");
  LatticeBasis out = *this;
  auto d = std::make_shared<Data>(*data_);
  d->complex = std::move(basis);
  out.data_ = std::move(d);
  return out;
}

LatticeBasis scale_rotate(const LatticeBasis& lattice, RingTag tag, const RingElement& theta) {
  const std::size_t n = lattice.dim();
  if (n % 2 != 0) throw ValidationError("scale_rotate needs even dimension");
  LatticeBasis out(lattice.generator() * rotation_operator(n, tag, theta));
  const Rational s = ring_abs_sq(tag, theta);
  if (lattice.min_sq_norm()) {
    out = out.with_min_sq_norm(lattice.min_sq_norm()->value * QSqrt7(s),
                               lattice.min_sq_norm()->provenance);
  }
  if (lattice.kissing()) out = out.with_kissing(lattice.kissing()->value, lattice.kissing()->provenance);
  if (lattice.complex_basis() && lattice.complex_basis()->ring == tag) {
    out = out.with_complex(scale(*lattice.complex_basis(), theta));
  }
  return out;
}

LatticeBasis scale_lattice(const LatticeBasis& lattice, const QSqrt7& c) {
  LatticeBasis out(scaled(lattice.generator(), c));
  if (lattice.min_sq_norm()) {
    out = out.with_min_sq_norm(lattice.min_sq_norm()->value * c * c,
                               lattice.min_sq_norm()->provenance);
  }
  if (lattice.kissing()) out = out.with_kissing(lattice.kissing()->value, lattice.kissing()->provenance);
  if (lattice.complex_basis() && c.is_rational()) {
    out = out.with_complex(scale(*lattice.complex_basis(), RingElement{c.rational_part(), 0}));
  }
  return out;
}

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
  return same_lattice(a.generator(), b.generator());
}

bool lattice_contains(const LatticeBasis& super, const LatticeBasis& sub) {
  return lattice_contains(super.generator(), sub.generator());
}

QSqrt7 exact_sq_norm(const LatticeBasis& lattice, const std::vector<long>& z) {
  const std::size_t n = lattice.dim();
  if (z.size() != n) throw ValidationError("coefficient vector dimension mismatch");
  if (lattice.has_integer_gram()) {
    const auto& g = lattice.integer_gram();
    __int128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (z[i] == 0) continue;
      __int128 row = 0;
      for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(g[i * n + j]) * z[j];
      acc += row * z[i];
    }
    const auto hi = static_cast<long>(acc / (static_cast<__int128>(1) << 62));
    const auto lo = static_cast<long>(acc % (static_cast<__int128>(1) << 62));
    Integer num = Integer(hi) * (Integer(1) << 62) + Integer(lo);
    Rational v(num, Integer(lattice.gram_denominator()));
    v.canonicalize();
    return QSqrt7(v);
  }
  QSqrt7 acc;
  const ExactMatrix& g = lattice.gram();
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (z[j] == 0) continue;
      acc += g(i, j) * QSqrt7(z[i] * z[j]);
    }
  }
  return acc;
}

}  // namespace latdec
