#pragma once

#include <cstdint>
#include <vector>

#include "latdec/hnf.hpp"
#include "latdec/lattice.hpp"

namespace latdec {

/// Coset representatives of super / sub. Each representative lies in the
/// half-open fundamental parallelepiped of sub's basis; reps[0] is zero.
class CosetSystem {
 public:
  CosetSystem() = default;
  /// Enumerates all representatives unless the index exceeds max_index, in
  /// which case BudgetExceeded is raised.
  /// With enumerate_reps off only labels are available.
  CosetSystem(LatticeBasis super, LatticeBasis sub, std::uint64_t max_index = 1u << 20,
              bool enumerate_reps = true);

  const LatticeBasis& super() const { return super_; }
  const LatticeBasis& sub() const { return sub_; }
  std::uint64_t index() const { return index_; }
  const std::vector<ExactVector>& reps() const { return reps_; }
  const std::vector<std::vector<double>>& reps_d() const { return reps_d_; }

  /// Canonical box label in [0, index) of the coset of z * super_basis.
  std::uint64_t label(const std::vector<long>& z) const;

  /// Reduces v (a point of super) into the fundamental parallelepiped of sub.
  ExactVector canonical(const ExactVector& v) const;

 private:
  LatticeBasis super_;
  LatticeBasis sub_;
  std::uint64_t index_ = 0;
  std::vector<std::vector<long>> hnf_;  // sub basis in super coordinates, HNF
  ExactMatrix sub_inverse_;
  std::vector<ExactVector> reps_;
  std::vector<std::vector<double>> reps_d_;
};

/// Integer index [super : sub] from volumes, exact; throws if not integral.
std::uint64_t quotient_order(const LatticeBasis& super, const LatticeBasis& sub);

}  // namespace latdec
