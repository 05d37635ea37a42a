#include "latdec/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latdec/errors.hpp"

namespace latdec {

Enumerator::Enumerator(const Eigen::MatrixXd& generator)
    : n_(static_cast<std::size_t>(generator.rows())), basis_(generator) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(generator.transpose());
  r_ = qr.matrixQR().triangularView<Eigen::Upper>();
  qt_ = Eigen::MatrixXd(qr.householderQ()).transpose();
}

void Enumerator::point(const std::vector<long>& z, double* out) const {
  for (std::size_t j = 0; j < n_; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (z[i] == 0) continue;
    const double zi = static_cast<double>(z[i]);
    for (std::size_t j = 0; j < n_; ++j) out[j] += zi * basis_(i, j);
  }
}

namespace {

struct BallSearch {
  const Eigen::MatrixXd& r;
  std::vector<double> chat;
  double radius;
  std::uint64_t max_nodes;
  std::uint64_t nodes = 0;
  std::vector<long> z;
  const std::function<void(const std::vector<long>&, double)>& visit;

  void run(std::size_t i, double acc) {
    const std::size_t n = z.size();
    double s = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) s += r(i, j) * static_cast<double>(z[j]);
    const double rii = r(i, i);
    const double ctr = (chat[i] - s) / rii;
    const double rem = radius - acc;
    if (rem < 0) return;
    const double w = std::sqrt(rem) / std::abs(rii) * (1.0 + 1e-12) + 1e-12;
    const long lo = static_cast<long>(std::ceil(ctr - w));
    const long hi = static_cast<long>(std::floor(ctr + w));
    for (long v = lo; v <= hi; ++v) {
      if (++nodes > max_nodes) throw BudgetExceeded("enumeration node budget exceeded");
      const double d = rii * (static_cast<double>(v) - ctr);
      const double next = acc + d * d;
      if (next > radius) continue;
      z[i] = v;
      if (i == 0) {
        visit(z, next);
      } else {
        run(i - 1, next);
      }
    }
    z[i] = 0;
  }
};

}  // namespace

std::uint64_t Enumerator::for_each_in_ball(
    const double* center, double radius_sq, std::uint64_t max_nodes,
    const std::function<void(const std::vector<long>&, double)>& visit) const {
  BallSearch s{r_, std::vector<double>(n_), radius_sq, max_nodes, 0, std::vector<long>(n_, 0), visit};
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += qt_(i, j) * center[j];
    s.chat[i] = acc;
  }
  if (radius_sq >= 0) s.run(n_ - 1, 0.0);
  return s.nodes;
}

namespace {

struct ClosestSearch {
  const Eigen::MatrixXd& r;
  const Eigen::MatrixXd& basis;
  std::vector<double> chat;
  std::vector<long> z;
  std::vector<long> best_z;
  double best = std::numeric_limits<double>::infinity();
  double tol = 0.0;

  bool lex_smaller(const std::vector<long>& a, const std::vector<long>& b) const {
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j) {
      double pa = 0.0, pb = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        pa += static_cast<double>(a[i]) * basis(i, j);
        pb += static_cast<double>(b[i]) * basis(i, j);
      }
      if (std::abs(pa - pb) > 1e-9) return pa < pb;
    }
    return false;
  }

  void leaf(double dist) {
    if (dist < best - tol) {
      best = dist;
      best_z = z;
    } else if (dist <= best + tol && lex_smaller(z, best_z)) {
      best = std::min(best, dist);
      best_z = z;
    }
  }

  void run(std::size_t i, double acc) {
    const std::size_t n = z.size();
    double s = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) s += r(i, j) * static_cast<double>(z[j]);
    const double rii = r(i, i);
    const double ctr = (chat[i] - s) / rii;
    long up = std::lround(ctr);
    long down = up - 1;
    bool up_ok = true, down_ok = true;
    while (up_ok || down_ok) {
      long v;
      bool from_up;
      if (up_ok && (!down_ok || std::abs(up - ctr) <= std::abs(down - ctr))) {
        v = up++;
        from_up = true;
      } else {
        v = down--;
        from_up = false;
      }
      const double d = rii * (static_cast<double>(v) - ctr);
      const double next = acc + d * d;
      if (next > best + tol) {
        (from_up ? up_ok : down_ok) = false;
        continue;
      }
      z[i] = v;
      if (i == 0) {
        leaf(next);
      } else {
        run(i - 1, next);
      }
    }
    z[i] = 0;
  }
};

}  // namespace

double Enumerator::closest(const double* center, std::vector<long>& z) const {
  ClosestSearch s{r_, basis_, std::vector<double>(n_), std::vector<long>(n_, 0), {}};
  double scale = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += qt_(i, j) * center[j];
    s.chat[i] = acc;
    scale = std::max(scale, r_(i, i) * r_(i, i));
  }
  s.tol = 1e-12 * std::max(1.0, scale);
  // Babai point gives the starting radius.
  std::vector<long> babai(n_, 0);
  double acc = 0.0;
  for (std::size_t i = n_; i-- > 0;) {
    double sum = 0.0;
    for (std::size_t j = i + 1; j < n_; ++j) sum += r_(i, j) * static_cast<double>(babai[j]);
    const double ctr = (s.chat[i] - sum) / r_(i, i);
    babai[i] = std::lround(ctr);
    const double d = r_(i, i) * (static_cast<double>(babai[i]) - ctr);
    acc += d * d;
  }
  s.best = acc;
  s.best_z = babai;
  s.run(n_ - 1, 0.0);
  z = s.best_z;
  return s.best;
}

namespace {

void check_dim(const LatticeBasis& lattice, std::size_t cap) {
  if (lattice.dim() > cap) {
    throw BudgetExceeded("enumeration refused in dimension " + std::to_string(lattice.dim()) +
                         " (cap " + std::to_string(cap) + ")");
  }
}

/// Compares the exact squared norm of z*G against a rational threshold.
/// Returns -1, 0, +1.
class NormComparator {
 public:
  NormComparator(const LatticeBasis& lattice, const QSqrt7& threshold)
      : lattice_(lattice), threshold_(threshold) {
    if (lattice.has_integer_gram() && threshold.is_rational()) {
      const Rational t = threshold.rational_part() * Rational(lattice.gram_denominator());
      if (t.get_num().fits_slong_p() && t.get_den().fits_slong_p()) {
        fast_ = true;
        num_ = t.get_num().get_si();
        den_ = t.get_den().get_si();
      }
    }
  }

  int compare(const std::vector<long>& z) const {
    if (!fast_) return (exact_sq_norm(lattice_, z) - threshold_).sign();
    const std::size_t n = lattice_.dim();
    const auto& g = lattice_.integer_gram();
    __int128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (z[i] == 0) continue;
      __int128 row = 0;
      for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(g[i * n + j]) * z[j];
      acc += row * z[i];
    }
    const __int128 lhs = acc * den_;
    const __int128 rhs = static_cast<__int128>(num_);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }

 private:
  const LatticeBasis& lattice_;
  QSqrt7 threshold_;
  bool fast_ = false;
  long num_ = 0;
  long den_ = 1;
};

bool is_zero(const std::vector<long>& z) {
  return std::all_of(z.begin(), z.end(), [](long v) { return v == 0; });
}

}  // namespace

ShellReport shell(const LatticeBasis& lattice, const QSqrt7& radius_sq, ShellMode mode,
                  bool keep_vectors, const EnumBudget& budget) {
  check_dim(lattice, budget.max_dim);
  const Enumerator e(lattice.generator_d());
  const double r = radius_sq.to_double();
  const std::vector<double> origin(lattice.dim(), 0.0);
  const NormComparator cmp(lattice, radius_sq);
  ShellReport rep;
  rep.radius_sq = r;
  e.for_each_in_ball(origin.data(), r * (1 + 1e-9) + 1e-12, budget.max_nodes,
                     [&](const std::vector<long>& z, double) {
                       const int c = cmp.compare(z);
                       const bool hit = mode == ShellMode::Ball ? c <= 0 : c == 0;
                       if (!hit) return;
                       ++rep.count;
                       if (keep_vectors) rep.coefficients.push_back(z);
                     });
  return rep;
}

QSqrt7 min_distance(const LatticeBasis& lattice, const EnumBudget& budget) {
  check_dim(lattice, budget.max_dim);
  const std::size_t n = lattice.dim();
  double guess = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) guess = std::min(guess, lattice.gram()(i, i).to_double());
  const Enumerator e(lattice.generator_d());
  const std::vector<double> origin(n, 0.0);
  std::vector<std::pair<double, std::vector<long>>> found;
  e.for_each_in_ball(origin.data(), guess * (1 + 1e-9) + 1e-12, budget.max_nodes,
                     [&](const std::vector<long>& z, double d) {
                       if (!is_zero(z)) found.emplace_back(d, z);
                     });
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& f : found) lo = std::min(lo, f.first);
  std::optional<QSqrt7> best;
  for (const auto& f : found) {
    if (f.first > lo + 1e-6 * std::max(1.0, lo)) continue;
    QSqrt7 v = exact_sq_norm(lattice, f.second);
    if (!best || v < *best) best = std::move(v);
  }
  if (!best) throw ValidationError("minimum search found no nonzero vector");
  return *best;
}

std::uint64_t kissing(const LatticeBasis& lattice, const EnumBudget& budget) {
  check_dim(lattice, budget.max_kissing_dim);
  const QSqrt7 d = lattice.min_sq_norm() && lattice.min_sq_norm()->provenance == Provenance::Exact
                       ? lattice.min_sq_norm()->value
                       : min_distance(lattice, budget);
  return shell(lattice, d, ShellMode::Shell, false, budget).count;
}

LatticeBasis with_enumerated_figures(const LatticeBasis& lattice, const EnumBudget& budget) {
  const QSqrt7 d = min_distance(lattice, budget);
  LatticeBasis out = lattice.with_min_sq_norm(d, Provenance::Exact);
  return out.with_kissing(kissing(out, budget), Provenance::Exact);
}

}  // namespace latdec
