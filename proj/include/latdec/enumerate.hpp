#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "latdec/lattice.hpp"

namespace latdec {

/// Work caps for enumeration; exceeding them raises BudgetExceeded.
struct EnumBudget {
  std::uint64_t max_nodes = 200'000'000;
  std::size_t max_dim = 48;
  std::size_t max_kissing_dim = 32;
};

/// Fincke-Pohst enumeration over a fixed floating-point basis (rows are
/// basis vectors). Precomputes the QR factorization once; calls are
/// reentrant.
class Enumerator {
 public:
  explicit Enumerator(const Eigen::MatrixXd& generator);

  std::size_t dim() const { return n_; }
  const Eigen::MatrixXd& generator() const { return basis_; }

  /// Invokes visit(z, dist_sq) for every z with ||z*B - center||^2 <= radius_sq.
  /// Returns the number of tree nodes visited.
  std::uint64_t for_each_in_ball(
      const double* center, double radius_sq, std::uint64_t max_nodes,
      const std::function<void(const std::vector<long>&, double)>& visit) const;

  /// Closest lattice point; ties broken by the lexicographically smallest
  /// point coordinates. Returns squared distance and fills z.
  double closest(const double* center, std::vector<long>& z) const;

  void point(const std::vector<long>& z, double* out) const;

 private:
  std::size_t n_ = 0;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd r_;   // upper-triangular factor of basis^T
  Eigen::MatrixXd qt_;  // Q^T
};

/// Lattice points within (or exactly on) a sphere.
struct ShellReport {
  double radius_sq = 0;
  std::uint64_t count = 0;
  std::vector<std::vector<long>> coefficients;  // filled only when requested
};

enum class ShellMode { Ball, Shell };

/// Points of the lattice of squared norm <= radius_sq (Ball) or == radius_sq
/// (Shell, exact comparison through the Gram matrix).
ShellReport shell(const LatticeBasis& lattice, const QSqrt7& radius_sq, ShellMode mode,
                  bool keep_vectors, const EnumBudget& budget = {});

/// Exact minimum squared norm by enumeration.
QSqrt7 min_distance(const LatticeBasis& lattice, const EnumBudget& budget = {});

/// Number of minimal vectors by enumeration.
std::uint64_t kissing(const LatticeBasis& lattice, const EnumBudget& budget = {});

/// Returns the lattice with min_sq_norm and kissing set from enumeration.
LatticeBasis with_enumerated_figures(const LatticeBasis& lattice, const EnumBudget& budget = {});

}  // namespace latdec
