#include "latdec/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "latdec/errors.hpp"

namespace latdec {

// ---------------------------------------------------------------------------
// Config and plumbing

void ListConfig::validate() const {
  if (!(delta >= 0)) throw ValidationError("relative radius must be >= 0");
  if (split2 && !split1) throw ValidationError("split2 requires split1");
  for (const auto& [radius, cap] : aleph) {
    if (cap < 1) throw ValidationError("aleph caps must be >= 1");
    if (radius < 0) throw ValidationError("aleph radii must be >= 0");
  }
  for (double t : tiers) {
    if (!(t > 0 && t <= 1)) throw ValidationError("splitting tiers must lie in (0, 1]");
  }
}

std::size_t ListConfig::aleph_cap(double relative_radius) const {
  if (aleph.empty()) return 0;
  auto it = aleph.lower_bound(relative_radius - 1e-12);
  return it == aleph.end() ? 0 : it->second;
}

std::map<std::string, std::uint64_t> DecodeStats::as_map() const {
  std::map<std::string, std::uint64_t> m;
  for (std::size_t i = 0; i < calls_per_level.size(); ++i) {
    m["calls_level_" + std::to_string(i)] = calls_per_level[i];
  }
  m["candidates"] = candidates;
  m["pruned"] = pruned;
  return m;
}

double sq_dist(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

namespace {

constexpr double kGrid = 1e6;

/// Scratch vector kept on the stack for the dimensions used in practice.
class Scratch {
 public:
  explicit Scratch(std::size_t n, double fill = 0.0) : p_(n <= kSmall ? small_ : (big_.resize(n), big_.data())) {
    std::fill(p_, p_ + n, fill);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  double* data() { return p_; }
  double& operator[](std::size_t i) { return p_[i]; }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  static constexpr std::size_t kSmall = 160;
  double small_[kSmall];
  std::vector<double> big_;
  double* p_;
};

bool key_less(const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const long long ka = std::llround(a[i] * kGrid);
    const long long kb = std::llround(b[i] * kGrid);
    if (ka != kb) return ka < kb;
  }
  return false;
}

bool key_equal(const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (std::llround(a[i] * kGrid) != std::llround(b[i] * kGrid)) return false;
  }
  return true;
}

long long dist_key(double d) { return std::llround(d * 1e9); }

}  // namespace

void finish_list(const double* y, double radius_sq, bool filter, std::size_t cap, PointList& pts,
                 DecodeStats& st) {
  const std::size_t n = pts.dim();
  const std::size_t count = pts.size();
  if (count == 0) return;
  std::vector<double> dist(count);
  std::vector<std::size_t> idx;
  idx.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    dist[i] = sq_dist(y, pts[i], n);
    if (filter && dist[i] > radius_sq) {
      ++st.pruned;
      continue;
    }
    idx.push_back(i);
  }
  if (idx.size() > 1) {
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return key_less(pts[a], pts[b], n); });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](std::size_t a, std::size_t b) { return key_equal(pts[a], pts[b], n); }),
              idx.end());
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return dist_key(dist[a]) < dist_key(dist[b]);
    });
  }
  if (cap > 0 && idx.size() > cap) {
    st.pruned += idx.size() - cap;
    idx.resize(cap);
  }
  if (idx.size() == count && std::is_sorted(idx.begin(), idx.end())) return;
  PointList kept(n);
  for (std::size_t i : idx) kept.push(pts[i]);
  pts = std::move(kept);
}

// ---------------------------------------------------------------------------
// Sphere decoding

namespace {

bool is_identity(const Eigen::MatrixXd& g) {
  return g.rows() == g.cols() && g.isIdentity(0.0);
}

void integer_ball(const double* y, std::size_t n, std::size_t i, double rem, double* cur,
                  PointList& out) {
  if (i == n) {
    out.push(cur);
    return;
  }
  const double w = std::sqrt(std::max(rem, 0.0));
  const long lo = static_cast<long>(std::ceil(y[i] - w));
  const long hi = static_cast<long>(std::floor(y[i] + w));
  for (long v = lo; v <= hi; ++v) {
    const double d = static_cast<double>(v) - y[i];
    const double next = rem - d * d;
    if (next < 0) continue;
    cur[i] = static_cast<double>(v);
    integer_ball(y, n, i + 1, next, cur, out);
  }
}

}  // namespace

SphereDecoder::SphereDecoder(const LatticeBasis& lattice, std::uint64_t max_nodes)
    : enumerator_(lattice.generator_d()),
      d_(lattice.min_sq_norm() ? lattice.min_sq_norm_d() : min_distance(lattice).to_double()),
      name_(lattice.name()),
      max_nodes_(max_nodes),
      identity_(is_identity(lattice.generator_d())) {}

void SphereDecoder::ball(const double* y, double radius_sq, PointList& out) const {
  const std::size_t n = dim();
  if (radius_sq < 0) return;
  if (identity_) {
    std::vector<double> cur(n);
    integer_ball(y, n, 0, radius_sq, cur.data(), out);
    return;
  }
  std::vector<double> p(n);
  enumerator_.for_each_in_ball(y, radius_sq, max_nodes_, [&](const std::vector<long>& z, double) {
    enumerator_.point(z, p.data());
    out.push(p.data());
  });
}

void SphereDecoder::list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
                         PointList& out) const {
  st.count_call(0);
  out.reset(dim());
  const double r = delta * d_ + cfg.tie_epsilon * d_;
  ball(y, r, out);
  st.candidates += out.size();
  finish_list(y, r, true, cfg.aleph_cap(delta), out, st);
}

void SphereDecoder::nearest(const double* y, DecodeStats& st, double* out) const {
  st.count_call(0);
  const std::size_t n = dim();
  if (identity_) {
    // Ties at .5 go to the smaller integer (lexicographic tie-break).
    for (std::size_t i = 0; i < n; ++i) out[i] = std::ceil(y[i] - 0.5);
    return;
  }
  std::vector<long> z;
  enumerator_.closest(y, z);
  enumerator_.point(z, out);
}

// ---------------------------------------------------------------------------
// Linear transport

LinearMapDecoder::LinearMapDecoder(DecoderPtr inner, Eigen::MatrixXd map, double scale, std::string name)
    : inner_(std::move(inner)), map_(std::move(map)), scale_(scale), name_(std::move(name)) {
  const auto n = static_cast<Eigen::Index>(inner_->dim());
  if (map_.rows() != n || map_.cols() != n) throw ValidationError("linear map dimension mismatch");
  const Eigen::MatrixXd mmt = map_ * map_.transpose();
  if (!mmt.isApprox(scale_ * Eigen::MatrixXd::Identity(n, n), 1e-9)) {
    throw ValidationError("linear map is not a scaled isometry");
  }
  if (n % 2 == 0) {
    Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; i += 2) blocks.block(i, i, 2, 2) = map_.block(0, 0, 2, 2);
    if (blocks == map_) {
      block_diagonal_ = true;
      b_[0] = map_(0, 0);
      b_[1] = map_(0, 1);
      b_[2] = map_(1, 0);
      b_[3] = map_(1, 1);
    }
  }
}

void LinearMapDecoder::to_inner(const double* y, double* out) const {
  const auto n = map_.rows();
  if (block_diagonal_) {
    for (Eigen::Index i = 0; i < n; i += 2) {
      out[i] = (y[i] * b_[0] + y[i + 1] * b_[1]) / scale_;
      out[i + 1] = (y[i] * b_[2] + y[i + 1] * b_[3]) / scale_;
    }
    return;
  }
  Eigen::Map<const Eigen::RowVectorXd> yv(y, n);
  Eigen::Map<Eigen::RowVectorXd> ov(out, n);
  ov.noalias() = yv * map_.transpose();
  ov /= scale_;
}

void LinearMapDecoder::from_inner(const double* x, double* out) const {
  const auto n = map_.rows();
  if (block_diagonal_) {
    for (Eigen::Index i = 0; i < n; i += 2) {
      out[i] = x[i] * b_[0] + x[i + 1] * b_[2];
      out[i + 1] = x[i] * b_[1] + x[i + 1] * b_[3];
    }
    return;
  }
  Eigen::Map<const Eigen::RowVectorXd> xv(x, n);
  Eigen::Map<Eigen::RowVectorXd> ov(out, n);
  ov.noalias() = xv * map_;
}

void LinearMapDecoder::list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
                            PointList& out) const {
  const std::size_t n = dim();
  std::vector<double> yi(n);
  to_inner(y, yi.data());
  PointList inner(n);
  inner_->list(yi.data(), delta, cfg, st, inner);
  out.reset(n);
  for (std::size_t i = 0; i < inner.size(); ++i) from_inner(inner[i], out.push_uninit());
}

void LinearMapDecoder::nearest(const double* y, DecodeStats& st, double* out) const {
  const std::size_t n = dim();
  Scratch yi(n), xi(n);
  to_inner(y, yi.data());
  inner_->nearest(yi.data(), st, xi.data());
  from_inner(xi.data(), out);
}

// ---------------------------------------------------------------------------
// Parity-check lattices

ParityDecoder::ParityDecoder(DecoderPtr t, DecoderPtr v, std::size_t k, std::string name)
    : t_(std::move(t)), v_(std::move(v)), k_(k), name_(std::move(name)) {
  if (k_ < 2) throw ValidationError("parity decoder needs k >= 2");
  if (t_->dim() != v_->dim()) throw ValidationError("T and V decoders differ in dimension");
  d_ = std::min(v_->min_sq_norm(), 2.0 * t_->min_sq_norm());
  if (name_.empty()) name_ = "parity(" + t_->name() + ")";
}

void ParityDecoder::nearest(const double* y, DecodeStats& st, double* out) const {
  st.count_call(level());
  const std::size_t m = t_->dim();
  const std::size_t n = k_ * m;
  Scratch t(n), tdist(k_), sum(m), z(m), v(m), cand(n), best(n);
  for (std::size_t j = 0; j < k_; ++j) {
    t_->nearest(y + j * m, st, t.data() + j * m);
    tdist[j] = sq_dist(y + j * m, t.data() + j * m, m);
    for (std::size_t c = 0; c < m; ++c) sum[c] += t[j * m + c];
  }
  double total = 0.0;
  for (std::size_t j = 0; j < k_; ++j) total += tdist[j];
  double best_d = 0.0;
  for (std::size_t i = 0; i < k_; ++i) {
    // z = y_i + sum_{j != i} t_j, decoded in V; block i becomes v - sum_{j != i} t_j.
    for (std::size_t c = 0; c < m; ++c) z[c] = y[i * m + c] + sum[c] - t[i * m + c];
    v_->nearest(z.data(), st, v.data());
    const double d = total - tdist[i] + sq_dist(z.data(), v.data(), m);
    std::copy(t.data(), t.data() + n, cand.data());
    for (std::size_t c = 0; c < m; ++c) cand[i * m + c] = v[c] - (sum[c] - t[i * m + c]);
    ++st.candidates;
    if (i == 0 || dist_key(d) < dist_key(best_d) ||
        (dist_key(d) == dist_key(best_d) && key_less(cand.data(), best.data(), n))) {
      best_d = d;
      std::copy(cand.data(), cand.data() + n, best.data());
    }
  }
  std::copy(best.data(), best.data() + n, out);
}

namespace {

/// Lists for block j at a given tier, computed on first use.
class TierCache {
 public:
  TierCache(std::size_t k, std::size_t m) : k_(k), m_(m) {}

  template <class Compute>
  const PointList& get(double frac, std::size_t j, Compute&& compute) {
    for (auto& e : entries_) {
      if (e.frac == frac) {
        if (!e.done[j]) {
          compute(frac, j, e.lists[j]);
          e.done[j] = true;
        }
        return e.lists[j];
      }
    }
    entries_.push_back({frac, std::vector<PointList>(k_, PointList(m_)), std::vector<bool>(k_, false)});
    auto& e = entries_.back();
    compute(frac, j, e.lists[j]);
    e.done[j] = true;
    return e.lists[j];
  }

 private:
  struct Entry {
    double frac;
    std::vector<PointList> lists;
    std::vector<bool> done;
  };
  std::size_t k_, m_;
  std::vector<Entry> entries_;
};

}  // namespace

void ParityDecoder::list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
                         PointList& out) const {
  st.count_call(level());
  const std::size_t m = t_->dim();
  const std::size_t k = k_;
  const std::size_t n = k * m;
  const double r = delta * d_;
  const double dt = t_->min_sq_norm();
  const double dv = v_->min_sq_norm();
  out.reset(n);

  auto child_list = [&](const LatticeDecoder& dec, const double* point, double rel, PointList& res) {
    if (cfg.bdd_floor && rel <= 0.25 + 1e-12) {
      res.reset(dec.dim());
      dec.nearest(point, st, res.push_uninit());
      return;
    }
    dec.list(point, rel, cfg, st, res);
  };
  TierCache cache(k, m);
  auto t_compute = [&](double frac, std::size_t j, PointList& res) {
    // Tier frac of delta: absolute radius frac * r / 2 inside T.
    child_list(*t_, y + j * m, frac * r / (2.0 * dt), res);
  };

  std::vector<const PointList*> lists(k, nullptr);
  std::vector<std::size_t> pos(k, 0);
  std::vector<double> s(m), z(m);
  PointList vl(m);

  // Blocks j != i take tier fracs[j]; the V correction at block i uses vfrac.
  auto generate = [&](std::size_t i, const std::vector<double>& fracs, double vfrac) {
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      lists[j] = &cache.get(fracs[j], j, t_compute);
      if (lists[j]->empty()) return;
      pos[j] = 0;
    }
    const double vrel = vfrac * r / dv;
    while (true) {
      std::fill(s.begin(), s.end(), 0.0);
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        const double* tj = (*lists[j])[pos[j]];
        for (std::size_t c = 0; c < m; ++c) s[c] += tj[c];
      }
      for (std::size_t c = 0; c < m; ++c) z[c] = y[i * m + c] + s[c];
      child_list(*v_, z.data(), vrel, vl);
      for (std::size_t q = 0; q < vl.size(); ++q) {
        double* cand = out.push_uninit();
        for (std::size_t j = 0; j < k; ++j) {
          if (j == i) continue;
          std::copy((*lists[j])[pos[j]], (*lists[j])[pos[j]] + m, cand + j * m);
        }
        const double* v = vl[q];
        for (std::size_t c = 0; c < m; ++c) cand[i * m + c] = v[c] - s[c];
      }
      st.candidates += vl.size();
      if (out.size() > cfg.max_candidates) throw BudgetExceeded("list decoder candidate budget exceeded");
      // Odometer over the blocks j != i.
      std::size_t j = 0;
      for (; j < k; ++j) {
        if (j == i) continue;
        if (++pos[j] < lists[j]->size()) break;
        pos[j] = 0;
      }
      if (j == k) break;
    }
  };

  std::vector<double> fracs(k);
  if (!cfg.split1) {
    std::fill(fracs.begin(), fracs.end(), 1.0);
    for (std::size_t i = 0; i < k; ++i) generate(i, fracs, 1.0);
  } else {
    const double a = cfg.tiers[0];  // 2/3
    const double pass[2][2] = {{1.0, a}, {a, 1.0}};
    for (const auto& p : pass) {
      const double d1 = p[0];
      const double d2 = p[1];
      for (std::size_t i = 0; i < k; ++i) {
        if (!cfg.split2 || k == 2) {
          std::fill(fracs.begin(), fracs.end(), d1);
          generate(i, fracs, d2);
          continue;
        }
        // One block l at d1, the others at d1/2 (tiers 1/2 and 1/3 of delta).
        const double half = d1 == 1.0 ? cfg.tiers[1] : cfg.tiers[2];
        for (std::size_t l = 0; l < k; ++l) {
          if (l == i) continue;
          std::fill(fracs.begin(), fracs.end(), half);
          fracs[l] = d1;
          generate(i, fracs, d2);
        }
      }
    }
    if (cfg.split2 && k >= 3) {
      // Balanced errors: every block within r/2 and the off-block sum above
      // r/2. Then block i (the largest) needs V only at r/2, one block l may
      // reach r/2 and the rest stay within (k-1)/(2k) r.
      const double rest = static_cast<double>(k - 1) / static_cast<double>(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
          if (l == i) continue;
          std::fill(fracs.begin(), fracs.end(), rest);
          fracs[l] = 1.0;
          generate(i, fracs, 0.5);
        }
      }
    }
  }
  const double eps = cfg.tie_epsilon * d_;
  finish_list(y, r + eps, cfg.removing_step, cfg.aleph_cap(delta), out, st);
}

// ---------------------------------------------------------------------------
// k-ing lattices

KingDecoder::KingDecoder(std::vector<std::vector<double>> alpha, DecoderPtr inner, std::size_t k,
                         double min_sq_norm, std::string name)
    : alpha_(std::move(alpha)), inner_(std::move(inner)), k_(k), d_(min_sq_norm), name_(std::move(name)) {
  if (alpha_.empty()) throw ValidationError("k-ing decoder needs at least one coset");
  if (alpha_[0].size() * k_ != inner_->dim()) throw ValidationError("coset dimension mismatch");
  if (name_.empty()) name_ = "king(" + inner_->name() + ")";
}

void KingDecoder::nearest(const double* y, DecodeStats& st, double* out) const {
  st.count_call(level());
  const std::size_t n = dim();
  const std::size_t m = n / k_;
  Scratch shifted(n), x(n), best(n);
  double best_d = 0.0;
  bool first = true;
  for (const auto& rep : alpha_) {
    for (std::size_t b = 0; b < k_; ++b)
      for (std::size_t c = 0; c < m; ++c) shifted[b * m + c] = y[b * m + c] - rep[c];
    inner_->nearest(shifted.data(), st, x.data());
    for (std::size_t b = 0; b < k_; ++b)
      for (std::size_t c = 0; c < m; ++c) x[b * m + c] += rep[c];
    const double d = sq_dist(y, x.data(), n);
    if (first || dist_key(d) < dist_key(best_d) ||
        (dist_key(d) == dist_key(best_d) && key_less(x.data(), best.data(), n))) {
      first = false;
      best_d = d;
      std::copy(x.data(), x.data() + n, best.data());
    }
  }
  std::copy(best.data(), best.data() + n, out);
}

void KingDecoder::list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
                       PointList& out) const {
  st.count_call(level());
  const std::size_t n = dim();
  const std::size_t m = n / k_;
  const double r = delta * d_;
  const double inner_delta = r / inner_->min_sq_norm();
  std::vector<double> shifted(n);
  PointList part(n);
  out.reset(n);
  for (const auto& rep : alpha_) {
    for (std::size_t b = 0; b < k_; ++b)
      for (std::size_t c = 0; c < m; ++c) shifted[b * m + c] = y[b * m + c] - rep[c];
    inner_->list(shifted.data(), inner_delta, cfg, st, part);
    for (std::size_t q = 0; q < part.size(); ++q) {
      double* x = out.push_uninit();
      for (std::size_t b = 0; b < k_; ++b)
        for (std::size_t c = 0; c < m; ++c) x[b * m + c] = part[q][b * m + c] + rep[c];
    }
  }
  finish_list(y, r + cfg.tie_epsilon * d_, cfg.removing_step, cfg.aleph_cap(delta), out, st);
}

void ListNearestDecoder::list(const double* y, double delta, const ListConfig&, DecodeStats& st,
                              PointList& out) const {
  inner_->list(y, delta, cfg_, st, out);
}

void ListNearestDecoder::nearest(const double* y, DecodeStats& st, double* out) const {
  const std::size_t n = dim();
  PointList pts(n);
  inner_->list(y, cfg_.delta, cfg_, st, pts);
  if (pts.empty()) {
    inner_->nearest(y, st, out);
    return;
  }
  // finish_list already sorted by distance then coordinates.
  std::copy(pts[0], pts[0] + n, out);
}

// ---------------------------------------------------------------------------
// Outcomes

namespace {

DecodeOutcome outcome_from(const double* y, const PointList& pts, const DecodeStats& st) {
  DecodeOutcome o;
  const std::size_t n = pts.dim();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    o.candidates.push_back({std::vector<double>(pts[i], pts[i] + n), sq_dist(y, pts[i], n)});
  }
  std::stable_sort(o.candidates.begin(), o.candidates.end(), [&](const Candidate& a, const Candidate& b) {
    if (dist_key(a.dist_sq) != dist_key(b.dist_sq)) return dist_key(a.dist_sq) < dist_key(b.dist_sq);
    return key_less(a.point.data(), b.point.data(), n);
  });
  o.counters = st.as_map();
  return o;
}

}  // namespace

DecodeOutcome decode_list(const LatticeDecoder& dec, const std::vector<double>& y, const ListConfig& cfg) {
  cfg.validate();
  if (y.size() != dec.dim()) throw ValidationError("query dimension mismatch");
  DecodeStats st;
  PointList pts(dec.dim());
  dec.list(y.data(), cfg.delta, cfg, st, pts);
  return outcome_from(y.data(), pts, st);
}

DecodeOutcome decode_nearest(const LatticeDecoder& dec, const std::vector<double>& y) {
  if (y.size() != dec.dim()) throw ValidationError("query dimension mismatch");
  DecodeStats st;
  PointList pts(dec.dim());
  dec.nearest(y.data(), st, pts.push_uninit());
  return outcome_from(y.data(), pts, st);
}

DecodeOutcome sphere_list(const LatticeBasis& lattice, const std::vector<double>& y, double radius_sq,
                          double tie_epsilon) {
  if (radius_sq < 0) throw ValidationError("radius must be >= 0");
  if (y.size() != lattice.dim()) throw ValidationError("query dimension mismatch");
  const SphereDecoder dec(lattice);
  DecodeStats st;
  st.count_call(0);
  PointList pts(lattice.dim());
  const double r = radius_sq + tie_epsilon * dec.min_sq_norm();
  dec.ball(y.data(), r, pts);
  st.candidates = pts.size();
  finish_list(y.data(), r, true, 0, pts, st);
  return outcome_from(y.data(), pts, st);
}

// ---------------------------------------------------------------------------
// Builders

DecoderPtr parity_family_decoder(const ParityFamily& fam) {
  return parity_family_decoder(fam, std::make_shared<SphereDecoder>(fam.levels[0].lattice));
}

DecoderPtr parity_family_decoder(const ParityFamily& fam, DecoderPtr base) {
  DecoderPtr dec = std::move(base);
  for (std::size_t i = 1; i < fam.levels.size(); ++i) {
    const LatticeBasis& below = fam.levels[i - 1].lattice;
    const Eigen::MatrixXd rot = to_double(rotation_operator(below.dim(), fam.spec.ring, fam.spec.theta));
    const double s = ring_abs_sq(fam.spec.ring, fam.spec.theta).get_d();
    auto v = std::make_shared<LinearMapDecoder>(dec, rot, s, "theta*" + below.name());
    dec = std::make_shared<ParityDecoder>(dec, v, fam.spec.k, fam.levels[i].lattice.name());
  }
  return dec;
}

namespace {

/// Simple roots of an E8 copy, ordered branch node first, then the arms of
/// lengths 1, 2 and 4 walked outward.
Eigen::MatrixXd ordered_simple_roots(const LatticeBasis& lattice) {
  const QSqrt7 d = lattice.min_sq_norm() && lattice.min_sq_norm()->provenance == Provenance::Exact
                       ? lattice.min_sq_norm()->value
                       : min_distance(lattice);
  const ShellReport roots = shell(lattice, d, ShellMode::Shell, true);
  if (roots.count != 240 || lattice.dim() != 8) throw ValidationError("lattice is not a copy of E8");
  const Enumerator e(lattice.generator_d());
  // Generic direction splitting the roots into positive and negative ones.
  Eigen::VectorXd w(8);
  for (int i = 0; i < 8; ++i) w(i) = 1.0 + 0.1234567 * i + 0.0007 * i * i;
  std::vector<Eigen::VectorXd> pos;
  Eigen::VectorXd p(8);
  for (const auto& z : roots.coefficients) {
    e.point(z, p.data());
    if (p.dot(w) > 0) pos.push_back(p);
  }
  auto key = [](const Eigen::VectorXd& v) {
    std::string k;
    for (int i = 0; i < v.size(); ++i) k += std::to_string(std::llround(v(i) * 1e6)) + ",";
    return k;
  };
  std::unordered_set<std::string> sums;
  for (std::size_t a = 0; a < pos.size(); ++a)
    for (std::size_t b = a + 1; b < pos.size(); ++b) sums.insert(key(pos[a] + pos[b]));
  std::vector<Eigen::VectorXd> simple;
  for (const auto& v : pos)
    if (!sums.count(key(v))) simple.push_back(v);
  if (simple.size() != 8) throw ValidationError("simple root extraction failed");
  std::vector<std::vector<int>> adj(8);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (a != b && std::abs(simple[a].dot(simple[b])) > 1e-9) adj[a].push_back(b);
  int branch = -1;
  for (int a = 0; a < 8; ++a)
    if (adj[a].size() == 3) branch = a;
  if (branch < 0) throw ValidationError("Dynkin diagram has no branch node");
  std::vector<std::vector<int>> arms;
  for (int start : adj[branch]) {
    std::vector<int> arm{start};
    int prev = branch, cur = start;
    while (true) {
      int next = -1;
      for (int nb : adj[cur])
        if (nb != prev) next = nb;
      if (next < 0) break;
      arm.push_back(next);
      prev = cur;
      cur = next;
    }
    arms.push_back(arm);
  }
  std::sort(arms.begin(), arms.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
  if (arms.size() != 3 || arms[0].size() != 1 || arms[1].size() != 2 || arms[2].size() != 4) {
    throw ValidationError("Dynkin diagram is not E8");
  }
  std::vector<int> order{branch};
  for (const auto& arm : arms) order.insert(order.end(), arm.begin(), arm.end());
  Eigen::MatrixXd b(8, 8);
  for (int i = 0; i < 8; ++i) b.row(i) = simple[order[i]].transpose();
  return b;
}

}  // namespace

Eigen::MatrixXd e8_isometry(const LatticeBasis& from, const LatticeBasis& to, double* scale) {
  const Eigen::MatrixXd bf = ordered_simple_roots(from);
  const Eigen::MatrixXd bt = ordered_simple_roots(to);
  const double s = bt.row(0).squaredNorm() / bf.row(0).squaredNorm();
  const Eigen::MatrixXd m = bf.inverse() * bt;
  if (!(m * m.transpose()).isApprox(s * Eigen::MatrixXd::Identity(8, 8), 1e-9)) {
    throw ValidationError("E8 isometry is not orthogonal");
  }
  if (scale) *scale = s;
  return m;
}

DecoderPtr e8_decoder_via_bw8(const LatticeBasis& target) {
  const ParityFamily bw8 = barnes_wall_family(8);
  double s = 0;
  const Eigen::MatrixXd m = e8_isometry(bw8.top(), target, &s);
  return std::make_shared<LinearMapDecoder>(parity_family_decoder(bw8), m, s, "E8bdd");
}

DecoderPtr leech_qmld_decoder(const TurynStructure& st) {
  auto t = e8_decoder_via_bw8(st.spec.t);
  auto v = e8_decoder_via_bw8(st.spec.v);
  auto inner = std::make_shared<ParityDecoder>(t, v, 3, "Lambda24-parity");
  return std::make_shared<KingDecoder>(st.spec.alpha.reps_d(), inner, 3, 4.0, "Lambda24");
}

DecoderPtr leech_list_decoder(const TurynStructure& st) {
  auto t = std::make_shared<SphereDecoder>(st.spec.t);
  auto v = std::make_shared<SphereDecoder>(st.spec.v);
  auto inner = std::make_shared<ParityDecoder>(t, v, 3, "Lambda24-parity");
  return std::make_shared<KingDecoder>(st.spec.alpha.reps_d(), inner, 3, 4.0, "Lambda24");
}

DecoderPtr parity_leech_decoder(const ParityFamily& fam, const TurynStructure& leech, bool sphere_children) {
  DecoderPtr base = sphere_children ? DecoderPtr(std::make_shared<SphereDecoder>(fam.levels[0].lattice))
                                    : leech_qmld_decoder(leech);
  return parity_family_decoder(fam, base);
}

DecoderPtr nebe_decoder(const NebeStructure& ns, const DecoderPtr& leech_child, const LatticeBasis& leech_lattice) {
  const std::size_t n = leech_lattice.dim();
  const RingElement psi_over_lambda =
      ring_mul(RingTag::Lambda, psi_elem(), ring_inverse(RingTag::Lambda, lambda_elem()));
  auto t = std::make_shared<LinearMapDecoder>(
      leech_child, to_double(rotation_operator(n, RingTag::Lambda, psi_over_lambda)), 1.0, "psi*S");
  auto v = std::make_shared<LinearMapDecoder>(
      leech_child, to_double(rotation_operator(n, RingTag::Lambda, psi_elem())), 2.0, "2S");
  auto inner = std::make_shared<ParityDecoder>(t, v, 3, "N72-parity");
  return std::make_shared<KingDecoder>(ns.turyn.spec.alpha.reps_d(), inner, 3,
                                       ns.turyn.lattice.min_sq_norm_d(), "N72");
}

}  // namespace latdec
