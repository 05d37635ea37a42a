#include "latdec/cosets.hpp"

#include "latdec/errors.hpp"

namespace latdec {
namespace {

QSqrt7 floor_of(const QSqrt7& x) {
  if (!x.is_rational()) throw ValidationError("irrational coordinate in coset reduction");
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.rational_part().get_num_mpz_t(), x.rational_part().get_den_mpz_t());
  return QSqrt7(Rational(f));
}

}  // namespace

std::uint64_t quotient_order(const LatticeBasis& super, const LatticeBasis& sub) {
  const QSqrt7 ratio = sub.volume_sq() / super.volume_sq();
  if (!ratio.is_rational() || ratio.rational_part().get_den() != 1) {
    throw ValidationError("non-integer volume ratio");
  }
  Integer root;
  mpz_sqrt(root.get_mpz_t(), ratio.rational_part().get_num_mpz_t());
  if (root * root != ratio.rational_part().get_num()) throw ValidationError("non-integer volume ratio");
  if (!root.fits_ulong_p()) throw BudgetExceeded("coset index too large");
  return root.get_ui();
}

CosetSystem::CosetSystem(LatticeBasis super, LatticeBasis sub, std::uint64_t max_index,
                         bool enumerate_reps)
    : super_(std::move(super)), sub_(std::move(sub)) {
  if (super_.dim() != sub_.dim()) throw ValidationError("coset lattices differ in dimension");
  const std::size_t n = super_.dim();
  // Sub basis in super coordinates must be integral.
  const ExactMatrix m = sub_.generator() * inverse(super_.generator());
  IntMatrix mi(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const QSqrt7& v = m(i, j);
      if (!v.is_rational() || v.rational_part().get_den() != 1) {
        throw ValidationError("sublattice is not contained in superlattice");
      }
      mi(i, j) = v.rational_part().get_num();
    }
  }
  index_ = quotient_order(super_, sub_);
  const IntMatrix h = hermite_normal_form(mi);
  Integer prod = 1;
  hnf_.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    prod *= h(i, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (!h(i, j).fits_slong_p()) throw BudgetExceeded("coset HNF entries too large");
      hnf_[i][j] = h(i, j).get_si();
    }
  }
  if (prod != Integer(static_cast<unsigned long>(index_))) {
    throw ValidationError("coset HNF disagrees with the volume ratio");
  }
  sub_inverse_ = inverse(sub_.generator());
  if (!enumerate_reps) return;
  if (index_ > max_index) {
    throw BudgetExceeded("coset index " + std::to_string(index_) + " exceeds cap " +
                         std::to_string(max_index));
  }

  // Box enumeration: 0 <= z_i < h_ii, in lexicographic order with the last
  // coordinate varying fastest.
  std::vector<long> z(n, 0);
  reps_.reserve(index_);
  for (std::uint64_t count = 0; count < index_; ++count) {
    ExactVector zv(n);
    for (std::size_t i = 0; i < n; ++i) zv[i] = QSqrt7(z[i]);
    reps_.push_back(canonical(row_times(zv, super_.generator())));
    for (std::size_t i = n; i-- > 0;) {
      if (++z[i] < hnf_[i][i]) break;
      z[i] = 0;
    }
  }
  reps_d_.reserve(reps_.size());
  for (const ExactVector& r : reps_) {
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = r[j].to_double();
    reps_d_.push_back(std::move(d));
  }
}

ExactVector CosetSystem::canonical(const ExactVector& v) const {
  ExactVector u = row_times(v, sub_inverse_);
  ExactVector shift(u.size());
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    shift[i] = floor_of(u[i]);
    any = any || !shift[i].is_zero();
  }
  if (!any) return v;
  const ExactVector back = row_times(shift, sub_.generator());
  ExactVector out = v;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= back[j];
  return out;
}

std::uint64_t CosetSystem::label(const std::vector<long>& z_in) const {
  const std::size_t n = hnf_.size();
  std::vector<long> z = z_in;
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long h = hnf_[i][i];
    long q = z[i] / h;
    if (z[i] % h != 0 && z[i] < 0) --q;
    if (q != 0) {
      for (std::size_t j = i; j < n; ++j) z[j] -= q * hnf_[i][j];
    }
    key = key * static_cast<std::uint64_t>(h) + static_cast<std::uint64_t>(z[i]);
  }
  return key;
}

}  // namespace latdec
