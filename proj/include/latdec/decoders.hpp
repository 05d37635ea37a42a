#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "latdec/constructions.hpp"
#include "latdec/enumerate.hpp"

namespace latdec {

struct ListConfig {
  double delta = 0.5;          // relative radius, r = delta * d(lattice)
  bool removing_step = true;   // drop candidates farther than r at every level
  bool split1 = false;
  bool split2 = false;
  /// Cap on kept candidates per level, keyed by relative radius; a radius
  /// uses the entry with the smallest key >= radius.
  std::map<double, std::size_t> aleph;
  double tie_epsilon = 1e-9;   // relative to d(lattice)
  /// Splitting tiers as fractions of delta: {2/3, 1/2, 1/3}.
  std::array<double, 3> tiers = {2.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0};
  /// Modified decoding: child calls at relative radius <= 1/4 use BDD.
  bool bdd_floor = false;
  /// Candidate cap per list call; exceeding it raises BudgetExceeded.
  std::uint64_t max_candidates = 10'000'000;

  void validate() const;
  /// ℵ lookup; 0 means unbounded.
  std::size_t aleph_cap(double relative_radius) const;
};

/// Flat list of points of a fixed dimension.
class PointList {
 public:
  explicit PointList(std::size_t dim = 0) : dim_(dim) {}
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ ? data_.size() / dim_ : 0; }
  bool empty() const { return data_.empty(); }
  const double* operator[](std::size_t i) const { return data_.data() + i * dim_; }
  double* operator[](std::size_t i) { return data_.data() + i * dim_; }
  void push(const double* p) { data_.insert(data_.end(), p, p + dim_); }
  double* push_uninit() {
    data_.resize(data_.size() + dim_);
    return data_.data() + data_.size() - dim_;
  }
  void clear() { data_.clear(); }
  void reset(std::size_t dim) {
    dim_ = dim;
    data_.clear();
  }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// Work counters accumulated over a decode.
struct DecodeStats {
  std::vector<std::uint64_t> calls_per_level;  // index 0 = base decoder
  std::uint64_t candidates = 0;
  std::uint64_t pruned = 0;

  void count_call(std::size_t level) {
    if (calls_per_level.size() <= level) calls_per_level.resize(level + 1, 0);
    ++calls_per_level[level];
  }
  std::uint64_t calls(std::size_t level) const {
    return level < calls_per_level.size() ? calls_per_level[level] : 0;
  }
  std::map<std::string, std::uint64_t> as_map() const;
};

/// Decoder for a fixed lattice. Implementations are immutable and reentrant.
class LatticeDecoder {
 public:
  virtual ~LatticeDecoder() = default;
  virtual std::size_t dim() const = 0;
  virtual double min_sq_norm() const = 0;
  /// 0 for base decoders, children level + 1 for composites.
  virtual std::size_t level() const = 0;
  virtual std::string name() const = 0;

  /// Candidates for relative radius delta, deduplicated. Exactly the lattice
  /// points in the closed ball for regular decoders; a superset in modified
  /// mode (removing_step off).
  virtual void list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
                    PointList& out) const = 0;
  /// A single lattice point: the closest one whenever y lies within the
  /// packing radius.
  virtual void nearest(const double* y, DecodeStats& st, double* out) const = 0;
};

using DecoderPtr = std::shared_ptr<const LatticeDecoder>;

/// Sphere decoding over the lattice basis; the oracle for everything else.
class SphereDecoder final : public LatticeDecoder {
 public:
  explicit SphereDecoder(const LatticeBasis& lattice, std::uint64_t max_nodes = 100'000'000);
  std::size_t dim() const override { return enumerator_.dim(); }
  double min_sq_norm() const override { return d_; }
  std::size_t level() const override { return 0; }
  std::string name() const override { return "sphere(" + name_ + ")"; }
  void list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
            PointList& out) const override;
  void nearest(const double* y, DecodeStats& st, double* out) const override;

  /// All points with squared distance <= radius_sq (absolute).
  void ball(const double* y, double radius_sq, PointList& out) const;

 private:
  Enumerator enumerator_;
  double d_;
  std::string name_;
  std::uint64_t max_nodes_;
  bool identity_;
};

/// Decoder for Lambda * M from a decoder of Lambda, where M M^T = s I.
class LinearMapDecoder final : public LatticeDecoder {
 public:
  LinearMapDecoder(DecoderPtr inner, Eigen::MatrixXd map, double scale, std::string name = {});
  std::size_t dim() const override { return inner_->dim(); }
  double min_sq_norm() const override { return inner_->min_sq_norm() * scale_; }
  std::size_t level() const override { return inner_->level(); }
  std::string name() const override { return name_.empty() ? "map(" + inner_->name() + ")" : name_; }
  void list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
            PointList& out) const override;
  void nearest(const double* y, DecodeStats& st, double* out) const override;

 private:
  void to_inner(const double* y, double* out) const;
  void from_inner(const double* x, double* out) const;

  DecoderPtr inner_;
  Eigen::MatrixXd map_;
  bool block_diagonal_ = false;  // map = I (x) B with a 2x2 block B
  double b_[4] = {0, 0, 0, 0};
  double scale_;
  std::string name_;
};

/// Decoder for Gamma(V, beta, k)_P from decoders of T and V:
/// nearest() decodes each block in T and one corrected block in V,
/// list() combines T lists with V lists; split1 / split2 select the
/// radius-splitting variants.
class ParityDecoder final : public LatticeDecoder {
 public:
  ParityDecoder(DecoderPtr t, DecoderPtr v, std::size_t k, std::string name = {});
  std::size_t dim() const override { return k_ * t_->dim(); }
  double min_sq_norm() const override { return d_; }
  std::size_t level() const override { return t_->level() + 1; }
  std::string name() const override { return name_; }
  void list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
            PointList& out) const override;
  void nearest(const double* y, DecodeStats& st, double* out) const override;

  const DecoderPtr& t() const { return t_; }
  const DecoderPtr& v() const { return v_; }
  std::size_t k() const { return k_; }

 private:
  DecoderPtr t_;
  DecoderPtr v_;
  std::size_t k_;
  double d_;
  std::string name_;
};

/// Decoder for the k-ing lattice: the inner parity decoder over every shift
/// by (m, ..., m), m in alpha.
class KingDecoder final : public LatticeDecoder {
 public:
  KingDecoder(std::vector<std::vector<double>> alpha, DecoderPtr inner, std::size_t k,
              double min_sq_norm, std::string name = {});
  std::size_t dim() const override { return inner_->dim(); }
  double min_sq_norm() const override { return d_; }
  std::size_t level() const override { return inner_->level() + 1; }
  std::string name() const override { return name_; }
  void list(const double* y, double delta, const ListConfig& cfg, DecodeStats& st,
            PointList& out) const override;
  void nearest(const double* y, DecodeStats& st, double* out) const override;
  std::size_t alpha_size() const { return alpha_.size(); }

 private:
  std::vector<std::vector<double>> alpha_;
  DecoderPtr inner_;
  std::size_t k_;
  double d_;
  std::string name_;
};

/// nearest() as the closest point of a list decode under a fixed
/// configuration (e.g. Lambda24 CVP from its list decoder at delta = 1/2);
/// falls back to the inner nearest() when the list is empty. list() also
/// uses the fixed configuration.
class ListNearestDecoder final : public LatticeDecoder {
 public:
  ListNearestDecoder(DecoderPtr inner, ListConfig cfg) : inner_(std::move(inner)), cfg_(std::move(cfg)) {}
  std::size_t dim() const override { return inner_->dim(); }
  double min_sq_norm() const override { return inner_->min_sq_norm(); }
  std::size_t level() const override { return inner_->level(); }
  std::string name() const override { return inner_->name(); }
  void list(const double* y, double delta, const ListConfig&, DecodeStats& st,
            PointList& out) const override;
  void nearest(const double* y, DecodeStats& st, double* out) const override;

 private:
  DecoderPtr inner_;
  ListConfig cfg_;
};

// ---------------------------------------------------------------------------
// Outcome plumbing

struct Candidate {
  std::vector<double> point;
  double dist_sq = 0;
};

struct DecodeOutcome {
  std::vector<Candidate> candidates;  // ascending distance, then lexicographic
  std::map<std::string, std::uint64_t> counters;
};

double sq_dist(const double* a, const double* b, std::size_t n);

/// Sorts, deduplicates on a 1e-6 grid, optionally filters to the ball and
/// applies the ℵ cap; this is the per-level clean-up of the list decoders.
void finish_list(const double* y, double radius_sq, bool filter, std::size_t cap, PointList& pts,
                 DecodeStats& st);

DecodeOutcome decode_list(const LatticeDecoder& dec, const std::vector<double>& y,
                          const ListConfig& cfg);
DecodeOutcome decode_nearest(const LatticeDecoder& dec, const std::vector<double>& y);
DecodeOutcome sphere_list(const LatticeBasis& lattice, const std::vector<double>& y,
                          double radius_sq, double tie_epsilon = 1e-9);

// ---------------------------------------------------------------------------
// Builders

/// Recursive decoder for a parity family: sphere decoding on L_c, then
/// T = decoder of L_n and V = rotation of it, level by level.
DecoderPtr parity_family_decoder(const ParityFamily& fam);
DecoderPtr parity_family_decoder(const ParityFamily& fam, DecoderPtr base);

/// Matrix M with rows(a) * M generating b, M M^T = s I, for two copies of E8
/// (found by matching simple-root bases of their root systems).
Eigen::MatrixXd e8_isometry(const LatticeBasis& from, const LatticeBasis& to, double* scale = nullptr);

/// Decoder for a copy of E8 obtained from the recursive BW8 BDD.
DecoderPtr e8_decoder_via_bw8(const LatticeBasis& target);

/// Lambda24 decoders from the Turyn structure. BDD mode (nearest) is the
/// quasi-ML decoder over 16 cosets with E8 children via BW8; list mode
/// with exact sphere-decoded E8 children gives regular list decoding.
DecoderPtr leech_qmld_decoder(const TurynStructure& st);
DecoderPtr leech_list_decoder(const TurynStructure& st);

/// L_{3*24} decoders with Lambda24 children: nearest is the parity BDD
/// over Lambda24 QMLD children; list uses Lambda24 sphere decoding children.
DecoderPtr parity_leech_decoder(const ParityFamily& fam, const TurynStructure& leech, bool sphere_children);

/// N72 decoder: 2^12 cosets, inner parity decoder over Lambda24 children
/// transported by complex scalars.
DecoderPtr nebe_decoder(const NebeStructure& ns, const DecoderPtr& leech_child,
                        const LatticeBasis& leech_lattice);

}  // namespace latdec
