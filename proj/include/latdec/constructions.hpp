#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latdec/cosets.hpp"
#include "latdec/enumerate.hpp"
#include "latdec/lattice.hpp"

namespace latdec {

LatticeBasis integer_lattice(std::size_t n);
/// Z^{2m} carrying the identity Z[i]-structure.
LatticeBasis gaussian_integer_lattice(std::size_t m);

/// Gamma(V, beta, k)_P: k blocks of T whose sum lies in V. Rows: for each
/// block i < k-1 and each T row g, g in block i and -g in block k-1; then the
/// V rows in block k-1. Keeps a complex structure when T and V share one.
LatticeBasis parity_check_basis(const LatticeBasis& t, const LatticeBasis& v, std::size_t k);

/// Membership via blocks: every block in T and the block sum in V.
bool in_parity_lattice(const ExactVector& x, const LatticeBasis& t, const LatticeBasis& v,
                       std::size_t k);

/// Checkerboard lattice D_n = Gamma(2Z, beta, n)_P.
LatticeBasis checkerboard(std::size_t n);

struct KingSpec {
  LatticeBasis v;
  LatticeBasis t;
  LatticeBasis t_star;
  CosetSystem alpha;  // [T*/V], the m-offsets
  CosetSystem beta;   // [T/V]
  std::size_t k = 0;

  static KingSpec make(LatticeBasis v, LatticeBasis t, LatticeBasis t_star, std::size_t k,
                       std::uint64_t max_index = 1u << 16);
};

/// Basis of the union over m in alpha of Gamma(V,beta,k)_P + (m,...,m).
LatticeBasis king_basis(const KingSpec& spec);

struct ParityFamilySpec {
  LatticeBasis base;
  RingTag ring = RingTag::GaussianInt;
  RingElement theta;
  std::size_t k = 2;
  std::size_t depth = 0;
};

struct ParityFamilyLevel {
  LatticeBasis lattice;  // L_n
  LatticeBasis rotated;  // theta * L_n
  std::uint64_t beta_order = 0;  // 0 when the index needs more than 64 bits
  std::optional<CosetSystem> beta;  // [L_n / theta L_n] when affordable
};

/// Chain L_c, L_{ck}, ..., L_{ck^t}; levels[i] holds L_{ck^i}.
struct ParityFamily {
  ParityFamilySpec spec;
  std::vector<ParityFamilyLevel> levels;
  const LatticeBasis& top() const { return levels.back().lattice; }
};

/// Builds the recursion L_{kn} = Gamma(theta L_n, beta, k)_P. Coset systems
/// larger than coset_budget are left unenumerated, unless require_cosets is
/// set, in which case BudgetExceeded is raised.
ParityFamily parity_family(const ParityFamilySpec& spec, std::uint64_t coset_budget = 1u << 12,
                           bool require_cosets = false);

/// BW_n from (Z^2, phi, 2, log2(n/2)); with d(Z^2) = 1 this gives d(BW_n) = n/2.
ParityFamily barnes_wall_family(std::size_t n);
LatticeBasis barnes_wall(std::size_t n);

struct PolarisationTriple {
  LatticeBasis s;
  LatticeBasis t;         // real(lambda * G_S)
  LatticeBasis t_2theta;  // real(psi * G_S)
};

struct PolarizeOptions {
  bool check_shells = true;
  EnumBudget budget;
};

/// T = lambda S, T_2theta = psi S with all polarisation identities verified:
/// T + T_2theta = S, T meet T_2theta = 2S, and equal Gram determinant,
/// minimum (= 2 d(S)) and first-shell size for T and T_2theta.
PolarisationTriple polarize(const LatticeBasis& s, const PolarizeOptions& opt = {});

/// Z[lambda]-basis of a copy of E8 / sqrt(2) (minimum 1, volume 1/16).
ComplexBasis e8_half_lambda_basis();
/// lambda * (E8 / sqrt 2): E8 with minimum 2 and volume 1.
LatticeBasis e8();

/// Turyn-type assembly Pb (x) G_S with Pb = [[l,l,l],[p,p,0],[0,p,p]].
ComplexBasis turyn_assemble(const ComplexBasis& s);

struct TurynStructure {
  PolarisationTriple pol;
  KingSpec spec;          // V = 2S, T = psi S, T* = lambda S, k = 3
  LatticeBasis lattice;   // realified Pb (x) G_S
};

/// Leech lattice from S = E8/sqrt2; checks even, volume 1 and minimum 4.
TurynStructure leech_structure();
LatticeBasis leech_turyn();
/// The Z[lambda]-basis of leech_turyn (12 x 12).
ComplexBasis leech_lambda_basis();

struct NebeReport {
  bool even = false;
  bool unimodular = false;
  /// Whether a norm-6 vector exists (decided exactly, see
  /// turyn_has_minimal_triple); unset when not computed.
  std::optional<bool> has_norm6;
};

struct NebeStructure {
  TurynStructure turyn;
  NebeReport report;
};

/// 72-dimensional Turyn-type lattice over the Z[lambda]-structure of a
/// unimodular Lambda24 given by its Z[lambda]-basis. Uses S = lambda^{-1}
/// Lambda24, T_2theta = lambda S, T = psi S, V = 2S.
NebeStructure nebe_structure(const ComplexBasis& z_lambda_basis_of_leech,
                             bool decide_minimum = false, const EnumBudget& budget = {});
LatticeBasis nebe(const ComplexBasis& z_lambda_basis_of_leech);

/// Exact decision whether the Turyn-type lattice has a vector whose three
/// blocks are all minimal vectors of S. Such triples lie in one coset of T
/// and are found from the minimal vectors of S alone. For S of minimum 2
/// with T, V of minimum 4 and 8 these are exactly the norm-6 vectors.
bool turyn_has_minimal_triple(const TurynStructure& st, const EnumBudget& budget = {});

struct ParityLeechKissing {
  std::uint64_t leech_kissing = 0;   // enumerated
  std::uint64_t class_size = 0;      // minimal vectors per nonzero class mod lambda*Lambda24
  std::uint64_t nonzero_classes = 0;
  std::uint64_t single_block = 0;    // (a,0,0)-type count
  std::uint64_t two_block = 0;       // (n1,n2,0)-type count
  std::uint64_t total = 0;
};

/// Kissing number of L_{3*24} = Gamma(lambda Lambda24, beta, 3)_P from the
/// minimal vectors of Lambda24 and their classes modulo lambda Lambda24.
ParityLeechKissing kissing_3parity_leech_report(const EnumBudget& budget = {});
std::uint64_t kissing_3parity_leech(const EnumBudget& budget = {});

/// L_{3*24}: parity_family(Lambda24, lambda, 3, 1).
ParityFamily parity_leech_family();

}  // namespace latdec
