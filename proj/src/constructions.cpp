#include "latdec/constructions.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "latdec/errors.hpp"
#include "latdec/hnf.hpp"

namespace latdec {
namespace {

template <class X, class Neg>
Matrix<X> parity_block_rows(const Matrix<X>& t, const Matrix<X>& v, std::size_t k, Neg neg) {
  const std::size_t n = t.rows();
  Matrix<X> out(k * n, k * n);
  std::size_t r = 0;
  for (std::size_t b = 0; b + 1 < k; ++b) {
    for (std::size_t i = 0; i < n; ++i, ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        out(r, b * n + j) = t(i, j);
        out(r, (k - 1) * n + j) = neg(t(i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i, ++r)
    for (std::size_t j = 0; j < n; ++j) out(r, (k - 1) * n + j) = v(i, j);
  return out;
}

ExactMatrix stack_rows(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

QSqrt7 qpow(const QSqrt7& x, std::size_t e) {
  QSqrt7 r(1);
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

LatticeBasis integer_lattice(std::size_t n) {
  return LatticeBasis(ExactMatrix::identity(n), "Z" + std::to_string(n))
      .with_min_sq_norm(QSqrt7(1), Provenance::Exact)
      .with_kissing(2 * n, Provenance::Exact);
}

LatticeBasis gaussian_integer_lattice(std::size_t m) {
  ComplexBasis c{RingTag::GaussianInt, Matrix<RingElement>(m, m)};
  for (std::size_t i = 0; i < m; ++i) c.entries(i, i) = RingElement{1, 0};
  return LatticeBasis::from_complex(c, "Z" + std::to_string(2 * m))
      .with_min_sq_norm(QSqrt7(1), Provenance::Exact)
      .with_kissing(4 * m, Provenance::Exact);
}

LatticeBasis parity_check_basis(const LatticeBasis& t, const LatticeBasis& v, std::size_t k) {
  if (k < 2) throw ValidationError("parity check construction needs k >= 2");
  if (t.dim() != v.dim()) throw ValidationError("T and V dimensions differ");
  if (!lattice_contains(t, v)) throw ValidationError("V is not a sublattice of T");
  LatticeBasis out;
  const auto& ct = t.complex_basis();
  const auto& cv = v.complex_basis();
  if (ct && cv && ct->ring == cv->ring) {
    const RingTag ring = ct->ring;
    ComplexBasis c{ring, parity_block_rows(ct->entries, cv->entries, k, [](const RingElement& x) {
                     return RingElement{-x.p, -x.q};
                   })};
    out = LatticeBasis::from_complex(c);
  } else {
    out = LatticeBasis(parity_block_rows(t.generator(), v.generator(), k,
                                         [](const QSqrt7& x) { return -x; }));
  }
  if (out.volume_sq() != qpow(t.volume_sq(), k - 1) * v.volume_sq()) {
    throw ValidationError("parity check basis volume mismatch");
  }
  if (t.min_sq_norm() && v.min_sq_norm()) {
    const QSqrt7 two_t = QSqrt7(2) * t.min_sq_norm()->value;
    const QSqrt7 d = v.min_sq_norm()->value < two_t ? v.min_sq_norm()->value : two_t;
    out = out.with_min_sq_norm(d, Provenance::Asserted);
  }
  return out;
}

bool in_parity_lattice(const ExactVector& x, const LatticeBasis& t, const LatticeBasis& v,
                       std::size_t k) {
  const std::size_t n = t.dim();
  if (x.size() != k * n) throw ValidationError("vector dimension mismatch");
  const ExactMatrix tinv = inverse(t.generator());
  ExactVector sum(n);
  for (std::size_t b = 0; b < k; ++b) {
    ExactVector block(x.begin() + b * n, x.begin() + (b + 1) * n);
    if (!integral_coordinates(block, tinv)) return false;
    for (std::size_t j = 0; j < n; ++j) sum[j] += block[j];
  }
  return integral_coordinates(sum, inverse(v.generator()));
}

LatticeBasis checkerboard(std::size_t n) {
  const LatticeBasis z = integer_lattice(1);
  const LatticeBasis two_z = scale_lattice(z, QSqrt7(2));
  return parity_check_basis(z, two_z, n).with_name("D" + std::to_string(n));
}

KingSpec KingSpec::make(LatticeBasis v, LatticeBasis t, LatticeBasis t_star, std::size_t k,
                        std::uint64_t max_index) {
  if (!lattice_contains(t, v)) throw ValidationError("V is not contained in T");
  if (!lattice_contains(t_star, v)) throw ValidationError("V is not contained in T*");
  KingSpec spec;
  spec.alpha = CosetSystem(t_star, v, max_index);
  spec.beta = CosetSystem(t, v, max_index);
  spec.v = std::move(v);
  spec.t = std::move(t);
  spec.t_star = std::move(t_star);
  spec.k = k;
  return spec;
}

LatticeBasis king_basis(const KingSpec& spec) {
  const std::size_t n = spec.t.dim();
  const std::size_t k = spec.k;
  const LatticeBasis parity = parity_check_basis(spec.t, spec.v, k);
  ExactMatrix reps(n, k * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t j = 0; j < n; ++j) reps(i, b * n + j) = spec.t_star.generator()(i, j);
  LatticeBasis out(lattice_from_generators(stack_rows(parity.generator(), reps)));
  const QSqrt7 a(static_cast<long>(spec.alpha.index()));
  const QSqrt7 b(static_cast<long>(spec.beta.index()));
  const QSqrt7 expect = qpow(spec.v.volume_sq(), k) / (a * a * qpow(b * b, k - 1));
  if (out.volume_sq() != expect) {
    throw ValidationError("k-ing basis volume disagrees with the coset systems");
  }
  return out;
}

ParityFamily parity_family(const ParityFamilySpec& spec, std::uint64_t coset_budget,
                           bool require_cosets) {
  if (spec.k < 2) throw ValidationError("parity family needs k >= 2");
  if (spec.base.dim() % 2 != 0) throw ValidationError("parity family base must have even dimension");
  ParityFamily fam;
  fam.spec = spec;
  LatticeBasis l = spec.base;
  for (std::size_t level = 0; level <= spec.depth; ++level) {
    ParityFamilyLevel lv;
    lv.lattice = l;
    lv.rotated = scale_rotate(l, spec.ring, spec.theta);
    try {
      lv.beta_order = quotient_order(lv.lattice, lv.rotated);
    } catch (const BudgetExceeded&) {
      lv.beta_order = 0;
    }
    if (lv.beta_order != 0 && lv.beta_order <= coset_budget) {
      lv.beta = CosetSystem(lv.lattice, lv.rotated, coset_budget);
    } else if (require_cosets) {
      throw BudgetExceeded("coset enumeration at level " + std::to_string(level) + " needs " +
                           (lv.beta_order ? std::to_string(lv.beta_order) : std::string(">= 2^64")) +
                           " representatives");
    }
    fam.levels.push_back(lv);
    if (level < spec.depth) l = parity_check_basis(lv.lattice, lv.rotated, spec.k);
  }
  return fam;
}

ParityFamily barnes_wall_family(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0) throw ValidationError("BW_n needs n a power of two");
  std::size_t depth = 0;
  while ((std::size_t{2} << depth) < n) ++depth;
  ParityFamily fam = parity_family({gaussian_integer_lattice(1), RingTag::GaussianInt, phi_elem(), 2, depth});
  for (std::size_t i = 0; i < fam.levels.size(); ++i) {
    auto& lv = fam.levels[i];
    lv.lattice = lv.lattice.with_name("BW" + std::to_string(lv.lattice.dim()));
  }
  return fam;
}

LatticeBasis barnes_wall(std::size_t n) { return barnes_wall_family(n).top(); }

PolarisationTriple polarize(const LatticeBasis& s, const PolarizeOptions& opt) {
  const auto& c = s.complex_basis();
  if (!c || c->ring != RingTag::Lambda) {
    throw ValidationError("polarize needs a Z[lambda] complex basis of S");
  }
  PolarisationTriple p;
  p.s = s;
  p.t = LatticeBasis::from_complex(scale(*c, lambda_elem()));
  p.t_2theta = LatticeBasis::from_complex(scale(*c, psi_elem()));

  const ExactMatrix sum = lattice_from_generators(stack_rows(p.t.generator(), p.t_2theta.generator()));
  if (!same_lattice(sum, s.generator())) throw ValidationError("polarisation: T + T_2theta != S");
  const LatticeBasis two_s = scale_lattice(s, QSqrt7(2));
  if (!lattice_contains(p.t, two_s) || !lattice_contains(p.t_2theta, two_s)) {
    throw ValidationError("polarisation: 2S not contained in T and T_2theta");
  }
  // vol(T) vol(T2) = vol(T + T2) vol(T meet T2); with 2S inside the meet,
  // equal volumes force equality.
  if (p.t.volume_sq() * p.t_2theta.volume_sq() != s.volume_sq() * two_s.volume_sq()) {
    throw ValidationError("polarisation: T meet T_2theta != 2S");
  }
  const QSqrt7 scale_n = qpow(QSqrt7(2), s.dim());
  if (p.t.volume_sq() != p.t_2theta.volume_sq() || p.t.volume_sq() != scale_n * s.volume_sq()) {
    throw ValidationError("polarisation: Gram determinants of T, T_2theta, 2^{n/2} S differ");
  }
  if (opt.check_shells) {
    LatticeBasis se = s;
    if (!s.min_sq_norm() || s.min_sq_norm()->provenance != Provenance::Exact) {
      se = s.with_min_sq_norm(min_distance(s, opt.budget), Provenance::Exact);
    }
    const QSqrt7 dt = min_distance(p.t, opt.budget);
    const QSqrt7 dt2 = min_distance(p.t_2theta, opt.budget);
    const QSqrt7 want = QSqrt7(2) * se.min_sq_norm()->value;
    if (dt != want || dt2 != want) throw ValidationError("polarisation: minimum of T is not 2 d(S)");
    p.t = p.t.with_min_sq_norm(dt, Provenance::Exact);
    p.t_2theta = p.t_2theta.with_min_sq_norm(dt2, Provenance::Exact);
    const std::uint64_t kt = kissing(p.t, opt.budget);
    const std::uint64_t kt2 = kissing(p.t_2theta, opt.budget);
    if (kt != kt2) throw ValidationError("polarisation: first shells of T and T_2theta differ");
    p.t = p.t.with_kissing(kt, Provenance::Exact);
    p.t_2theta = p.t_2theta.with_kissing(kt2, Provenance::Exact);
    p.s = se;
  }
  return p;
}

ComplexBasis e8_half_lambda_basis() {
  // S = Z[lambda]^4 + pi^{-1} C, C the [4,2] code over F_7 = Z[lambda]/pi
  // generated by (1,0,2,3), (0,1,3,-2); pi = 2 lambda - 1, pi^{-1} = (1 - 2 lambda)/7.
  ComplexBasis c{RingTag::Lambda, Matrix<RingElement>(4, 4)};
  const long code[2][4] = {{1, 0, 2, 3}, {0, 1, 3, -2}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) c.entries(i, j) = RingElement{frac(code[i][j], 7), frac(-2 * code[i][j], 7)};
  c.entries(2, 2) = RingElement{1, 0};
  c.entries(3, 3) = RingElement{1, 0};
  return c;
}

LatticeBasis e8() {
  return with_enumerated_figures(LatticeBasis::from_complex(scale(e8_half_lambda_basis(), lambda_elem()), "E8"));
}

ComplexBasis turyn_assemble(const ComplexBasis& s) {
  if (s.ring != RingTag::Lambda) throw ValidationError("Turyn assembly needs a Z[lambda] basis");
  const std::size_t m = s.complex_dim();
  const RingElement zero{0, 0};
  const RingElement l = lambda_elem();
  const RingElement p = psi_elem();
  const RingElement pb[3][3] = {{l, l, l}, {p, p, zero}, {zero, p, p}};
  ComplexBasis out{RingTag::Lambda, Matrix<RingElement>(3 * m, 3 * m)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          out.entries(a * m + i, b * m + j) = ring_mul(RingTag::Lambda, pb[a][b], s.entries(i, j));
  return out;
}

namespace {

TurynStructure assemble_structure(const LatticeBasis& s, const PolarizeOptions& opt,
                                  std::uint64_t max_index, std::string name) {
  TurynStructure st;
  st.pol = polarize(s, opt);
  st.spec = KingSpec::make(scale_lattice(st.pol.s, QSqrt7(2)), st.pol.t_2theta, st.pol.t, 3, max_index);
  st.lattice = LatticeBasis::from_complex(turyn_assemble(*s.complex_basis()), std::move(name));
  if (!same_lattice(king_basis(st.spec), st.lattice)) {
    throw ValidationError("Turyn generator disagrees with the k-ing construction");
  }
  return st;
}

}  // namespace

TurynStructure leech_structure() {
  LatticeBasis s = LatticeBasis::from_complex(e8_half_lambda_basis(), "E8/sqrt2");
  s = with_enumerated_figures(s);
  TurynStructure st = assemble_structure(s, {}, 1u << 16, "Leech");
  const LatticeBasis& l = st.lattice;
  if (!l.is_even()) throw ValidationError("Leech: Gram matrix is not even");
  if (l.volume_sq() != QSqrt7(1)) throw ValidationError("Leech: volume is not 1");
  // Lower bound min{d(V), 2 d(T), 3 d(S)} = 3 and evenness give d >= 4; a
  // basis vector of norm 4 gives equality.
  const QSqrt7 dv = QSqrt7(4) * st.pol.s.min_sq_norm()->value;
  const QSqrt7 two_dt = QSqrt7(2) * st.pol.t_2theta.min_sq_norm()->value;
  const QSqrt7 three_ds = QSqrt7(3) * st.pol.s.min_sq_norm()->value;
  QSqrt7 bound = dv;
  if (two_dt < bound) bound = two_dt;
  if (three_ds < bound) bound = three_ds;
  if (!(QSqrt7(2) < bound)) throw ValidationError("Leech: minimum lower bound too small");
  bool witness = false;
  for (std::size_t i = 0; i < l.dim(); ++i) witness = witness || l.gram()(i, i) == QSqrt7(4);
  if (!witness) throw ValidationError("Leech: no norm-4 basis vector");
  st.lattice = l.with_min_sq_norm(QSqrt7(4), Provenance::Exact);
  return st;
}

LatticeBasis leech_turyn() { return leech_structure().lattice; }

ComplexBasis leech_lambda_basis() { return turyn_assemble(e8_half_lambda_basis()); }

bool turyn_has_minimal_triple(const TurynStructure& st, const EnumBudget& budget) {
  const LatticeBasis& s = st.pol.s;
  const QSqrt7 ds = s.min_sq_norm() ? s.min_sq_norm()->value : min_distance(s, budget);
  const ShellReport mins = shell(s, ds, ShellMode::Shell, true, budget);
  if (s.dim() > 32) throw BudgetExceeded("residue masks limited to 32 coordinates");
  // Classes of S modulo T, residues modulo V = 2S as bit masks of S-coordinates.
  const CosetSystem mod_t(s, st.spec.t, 0, false);
  auto residue = [](const std::vector<long>& z) {
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < z.size(); ++i) r |= static_cast<std::uint32_t>(z[i] & 1) << i;
    return r;
  };
  // Representative m of each class inside T*, via the alpha coset reps.
  const ExactMatrix sinv = inverse(s.generator());
  std::map<std::uint64_t, std::uint32_t> m_residue;
  for (const ExactVector& m : st.spec.alpha.reps()) {
    std::vector<Integer> zi;
    if (!integral_coordinates(m, sinv, &zi)) throw ValidationError("alpha rep outside S");
    std::vector<long> z(zi.size());
    for (std::size_t i = 0; i < zi.size(); ++i) z[i] = zi[i].get_si();
    m_residue[mod_t.label(z)] = residue(z);
  }
  std::map<std::uint64_t, std::vector<std::uint32_t>> classes;
  for (const auto& z : mins.coefficients) classes[mod_t.label(z)].push_back(residue(z));
  for (const auto& [label, res] : classes) {
    auto it = m_residue.find(label);
    if (it == m_residue.end()) throw ValidationError("class without T* representative");
    // Need b1 + b2 + b3 - 3m in V, i.e. r1 ^ r2 ^ r3 == r(m) modulo 2S.
    const std::unordered_set<std::uint32_t> present(res.begin(), res.end());
    for (std::uint32_t r1 : res)
      for (std::uint32_t r2 : res)
        if (present.count(r1 ^ r2 ^ it->second)) return true;
  }
  return false;
}

NebeStructure nebe_structure(const ComplexBasis& c24, bool decide_minimum, const EnumBudget& budget) {
  if (c24.ring != RingTag::Lambda || c24.complex_dim() != 12) {
    throw ValidationError("nebe needs a 12 x 12 Z[lambda] basis of Lambda24");
  }
  const LatticeBasis leech = LatticeBasis::from_complex(c24);
  if (!leech.is_even() || leech.volume_sq() != QSqrt7(1)) {
    throw ValidationError("supplied Z[lambda] lattice is not even unimodular");
  }
  const ComplexBasis sc = scale(c24, ring_inverse(RingTag::Lambda, lambda_elem()));
  const LatticeBasis s = LatticeBasis::from_complex(sc, "Lambda24/lambda");
  PolarizeOptions opt;
  opt.budget = budget;
  NebeStructure ns;
  ns.turyn = assemble_structure(s, opt, 1u << 12, "N72");
  const LatticeBasis& l = ns.turyn.lattice;
  ns.report.even = l.is_even();
  ns.report.unimodular = l.volume_sq() == QSqrt7(1);
  if (!ns.report.even) throw ValidationError("N72: Gram matrix is not even");
  if (!ns.report.unimodular) throw ValidationError("N72: volume is not 1");
  if (decide_minimum) {
    ns.report.has_norm6 = turyn_has_minimal_triple(ns.turyn, budget);
    ns.turyn.lattice = l.with_min_sq_norm(QSqrt7(*ns.report.has_norm6 ? 6 : 8), Provenance::Exact);
  } else {
    ns.turyn.lattice = l.with_min_sq_norm(QSqrt7(8), Provenance::Asserted);
  }
  return ns;
}

LatticeBasis nebe(const ComplexBasis& c24) { return nebe_structure(c24).turyn.lattice; }

ParityLeechKissing kissing_3parity_leech_report(const EnumBudget& budget) {
  const LatticeBasis l = leech_turyn();
  const ShellReport mins = shell(l, QSqrt7(4), ShellMode::Shell, true, budget);
  const LatticeBasis v = scale_rotate(l, RingTag::Lambda, lambda_elem());
  const CosetSystem mod_v(l, v, 0, false);
  std::map<std::uint64_t, std::uint64_t> size;
  for (const auto& z : mins.coefficients) ++size[mod_v.label(z)];
  ParityLeechKissing rep;
  rep.leech_kissing = mins.count;
  if (size.count(0)) throw ValidationError("minimal vector of Lambda24 inside lambda*Lambda24");
  rep.nonzero_classes = size.size();
  rep.class_size = size.begin()->second;
  for (const auto& kv : size) {
    if (kv.second != rep.class_size) rep.class_size = 0;  // non-uniform classes
  }
  // (a,0,0): a in lambda*Lambda24 of norm 8, in bijection with Lambda24's shell 4.
  rep.single_block = 3 * mins.count;
  // (n1,n2,0): n1, n2 minimal with n1 + n2 in lambda*Lambda24.
  std::uint64_t pairs = 0;
  std::vector<long> neg(l.dim());
  for (const auto& z : mins.coefficients) {
    for (std::size_t i = 0; i < z.size(); ++i) neg[i] = -z[i];
    pairs += size[mod_v.label(neg)];
  }
  rep.two_block = 3 * pairs;
  rep.total = rep.single_block + rep.two_block;
  return rep;
}

std::uint64_t kissing_3parity_leech(const EnumBudget& budget) {
  return kissing_3parity_leech_report(budget).total;
}

ParityFamily parity_leech_family() {
  ParityFamily fam = parity_family({leech_turyn(), RingTag::Lambda, lambda_elem(), 3, 1}, 16);
  fam.levels[0].lattice = fam.levels[0].lattice.with_name("Lambda24");
  fam.levels[1].lattice = fam.levels[1].lattice.with_name("L3x24");
  return fam;
}

}  // namespace latdec
