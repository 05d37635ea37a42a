#include "latdec/registry.hpp"

#include <cmath>

#include "latdec/errors.hpp"
#include "latdec/hnf.hpp"

namespace latdec {

namespace {

LatticeBasis maybe_enumerate(const LatticeBasis& l, const BuildOptions& opt) {
  if (!opt.enumerate || l.dim() > opt.budget.max_kissing_dim) return l;
  return with_enumerated_figures(l, opt.budget);
}

RingElement parse_theta(const std::string& s, RingTag& tag) {
  if (s == "phi") {
    tag = RingTag::GaussianInt;
    return phi_elem();
  }
  if (s == "lambda") {
    tag = RingTag::Lambda;
    return lambda_elem();
  }
  throw ValidationError("theta must be phi or lambda");
}

ParityFamily custom_family(const BuildOptions& opt) {
  if (!opt.parity_base) throw ValidationError("parity family needs a base lattice");
  ParityFamilySpec spec;
  spec.base = *opt.parity_base;
  spec.theta = parse_theta(opt.theta, spec.ring);
  spec.k = opt.k;
  spec.depth = opt.depth;
  if (!spec.base.complex_basis() || spec.base.complex_basis()->ring != spec.ring) {
    throw ValidationError("parity base must carry a complex basis over the ring of theta");
  }
  if (!spec.base.min_sq_norm()) spec.base = with_enumerated_figures(spec.base, opt.budget);
  return parity_family(spec, 1u << 12);
}

}  // namespace

BuiltLattice build_lattice(const std::string& family, std::size_t n, const BuildOptions& opt) {
  BuiltLattice b;
  b.construction = {{"family", family}};
  if (family == "Z") {
    if (n < 1) throw ValidationError("Z needs n >= 1");
    b.lattice = integer_lattice(n);
    b.construction["n"] = n;
  } else if (family == "D") {
    if (n < 2) throw ValidationError("D needs n >= 2");
    b.lattice = maybe_enumerate(checkerboard(n), opt);
    b.construction["n"] = n;
  } else if (family == "BW") {
    b.lattice = maybe_enumerate(barnes_wall(n), opt);
    b.construction["n"] = n;
  } else if (family == "E8") {
    b.lattice = e8().with_name("E8");
  } else if (family == "Leech") {
    const TurynStructure st = leech_structure();
    b.lattice = st.lattice.with_name("Lambda24");
    if (opt.enumerate) b.lattice = b.lattice.with_kissing(kissing(b.lattice, opt.budget), Provenance::Exact);
  } else if (family == "L3x24") {
    b.lattice = parity_leech_family().top();
    if (opt.enumerate) b.lattice = b.lattice.with_kissing(kissing_3parity_leech(opt.budget), Provenance::Exact);
    b.construction["kissing_method"] = "combinatorial, from the minimal vectors of Lambda24";
  } else if (family == "N72") {
    const ComplexBasis basis = opt.nebe_basis ? *opt.nebe_basis : leech_lambda_basis();
    const NebeStructure ns = nebe_structure(basis, opt.decide_minimum, opt.budget);
    b.lattice = ns.turyn.lattice.with_name("N72");
    b.construction["even"] = ns.report.even;
    b.construction["unimodular"] = ns.report.unimodular;
    if (ns.report.has_norm6) b.construction["has_norm6"] = *ns.report.has_norm6;
    if (opt.nebe_basis) b.construction["leech_basis"] = "supplied";
  } else if (family == "parity") {
    const ParityFamily fam = custom_family(opt);
    b.lattice = maybe_enumerate(fam.top(), opt);
    b.construction["theta"] = opt.theta;
    b.construction["k"] = opt.k;
    b.construction["depth"] = opt.depth;
    b.construction["base"] = {{"ring", opt.theta == "phi" ? "gaussian" : "lambda"}};
  } else {
    throw ValidationError("unknown family '" + family + "'");
  }
  return b;
}

Strategy parse_strategy(const std::string& s) {
  static const std::pair<const char*, Strategy> names[] = {
      {"SphereEnum", Strategy::SphereEnum},       {"ParityBDD", Strategy::ParityBDD},
      {"ParityList", Strategy::ParityList},       {"ParityListSplit", Strategy::ParityListSplit},
      {"KingBDD", Strategy::KingBDD},             {"KingList", Strategy::KingList},
      {"RecursiveList", Strategy::RecursiveList}, {"BWRecursiveBDD", Strategy::BWRecursiveBDD},
      {"LeechCVP", Strategy::LeechCVP},           {"NebeQMLD", Strategy::NebeQMLD}};
  for (const auto& [name, st] : names) {
    if (s == name) return st;
  }
  throw ValidationError("unknown strategy '" + s + "'");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::SphereEnum: return "SphereEnum";
    case Strategy::ParityBDD: return "ParityBDD";
    case Strategy::ParityList: return "ParityList";
    case Strategy::ParityListSplit: return "ParityListSplit";
    case Strategy::KingBDD: return "KingBDD";
    case Strategy::KingList: return "KingList";
    case Strategy::RecursiveList: return "RecursiveList";
    case Strategy::BWRecursiveBDD: return "BWRecursiveBDD";
    case Strategy::LeechCVP: return "LeechCVP";
    case Strategy::NebeQMLD: return "NebeQMLD";
  }
  return "?";
}

namespace {

void require_same(const LatticeBasis& file, const LatticeBasis& built) {
  if (file.dim() != built.dim()) throw ValidationError("lattice dimension disagrees with its construction record");
  if (file.generator() == built.generator()) return;
  if (!same_lattice(file, built)) throw ValidationError("lattice differs from its construction record");
}

[[noreturn]] void unsupported(Strategy s, const std::string& family) {
  throw ValidationError("strategy " + strategy_name(s) + " is not available for family '" + family + "'");
}

DecoderPtr one_level_parity(const ParityFamily& fam) {
  if (fam.levels.size() < 2) throw ValidationError("parity list decoding needs depth >= 1");
  const auto& below = fam.levels[fam.levels.size() - 2];
  return std::make_shared<ParityDecoder>(std::make_shared<SphereDecoder>(below.lattice),
                                         std::make_shared<SphereDecoder>(below.rotated), fam.spec.k,
                                         fam.top().name());
}

DecoderPtr checkerboard_decoder(std::size_t n) {
  auto t = std::make_shared<SphereDecoder>(integer_lattice(1));
  auto v = std::make_shared<SphereDecoder>(scale_lattice(integer_lattice(1), QSqrt7(2)));
  return std::make_shared<ParityDecoder>(t, v, n, "D" + std::to_string(n));
}

}  // namespace

DecoderHandle make_decoder(const LatticeBasis& lattice, const nlohmann::json& construction, Strategy strategy,
                           const ListConfig& cfg, const EnumBudget& budget, const std::string& nebe_child) {
  cfg.validate();
  DecoderHandle h;
  h.config = cfg;
  h.strategy = strategy_name(strategy);
  const std::string family = construction.is_object() && construction.contains("family")
                                 ? construction["family"].get<std::string>()
                                 : std::string();
  const bool list_strategy = strategy == Strategy::SphereEnum || strategy == Strategy::ParityList ||
                             strategy == Strategy::ParityListSplit || strategy == Strategy::KingList ||
                             strategy == Strategy::RecursiveList || strategy == Strategy::LeechCVP;
  h.list_mode = list_strategy;
  if (strategy == Strategy::ParityListSplit) h.config.split1 = true;
  if (strategy == Strategy::LeechCVP) {
    h.config.delta = 0.5;
    h.config.removing_step = true;
  }
  if (strategy == Strategy::SphereEnum) {
    h.decoder = std::make_shared<SphereDecoder>(lattice, budget.max_nodes);
    return h;
  }
  const std::size_t n = construction.contains("n") ? construction["n"].get<std::size_t>() : 0;
  if (family == "D") {
    require_same(lattice, checkerboard(n));
    if (strategy != Strategy::ParityBDD && strategy != Strategy::ParityList && strategy != Strategy::ParityListSplit &&
        strategy != Strategy::RecursiveList) {
      unsupported(strategy, family);
    }
    h.decoder = checkerboard_decoder(n);
  } else if (family == "BW" || family == "parity") {
    ParityFamily fam;
    if (family == "BW") {
      fam = barnes_wall_family(n);
    } else {
      throw ValidationError("custom parity families are decoded by SphereEnum only from files");
    }
    require_same(lattice, fam.top());
    switch (strategy) {
      case Strategy::ParityBDD:
      case Strategy::BWRecursiveBDD:
      case Strategy::RecursiveList:
        h.decoder = parity_family_decoder(fam);
        break;
      case Strategy::ParityList:
      case Strategy::ParityListSplit:
        h.decoder = one_level_parity(fam);
        break;
      default:
        unsupported(strategy, family);
    }
  } else if (family == "E8") {
    require_same(lattice, e8());
    if (strategy != Strategy::BWRecursiveBDD && strategy != Strategy::RecursiveList) unsupported(strategy, family);
    h.decoder = e8_decoder_via_bw8(lattice);
  } else if (family == "Leech") {
    const TurynStructure st = leech_structure();
    require_same(lattice, st.lattice);
    switch (strategy) {
      case Strategy::KingBDD:
        h.decoder = leech_qmld_decoder(st);
        break;
      case Strategy::KingList:
      case Strategy::LeechCVP:
        h.decoder = leech_list_decoder(st);
        break;
      default:
        unsupported(strategy, family);
    }
  } else if (family == "L3x24") {
    const ParityFamily fam = parity_leech_family();
    require_same(lattice, fam.top());
    const TurynStructure st = leech_structure();
    switch (strategy) {
      case Strategy::ParityBDD:
        h.decoder = parity_leech_decoder(fam, st, false);
        break;
      case Strategy::RecursiveList:
      case Strategy::ParityList:
      case Strategy::ParityListSplit:
        h.decoder = parity_leech_decoder(fam, st, true);
        break;
      default:
        unsupported(strategy, family);
    }
  } else if (family == "N72") {
    if (construction.contains("leech_basis")) {
      throw ValidationError("N72 decoding from a supplied Lambda24 basis is not supported by the CLI");
    }
    const NebeStructure ns = nebe_structure(leech_lambda_basis(), false, budget);
    require_same(lattice, ns.turyn.lattice);
    if (strategy != Strategy::NebeQMLD && strategy != Strategy::KingBDD && strategy != Strategy::KingList) {
      unsupported(strategy, family);
    }
    const TurynStructure st = leech_structure();
    DecoderPtr child;
    if (nebe_child == "qmld") {
      child = leech_qmld_decoder(st);
    } else if (nebe_child == "cvp") {
      // Exact Lambda24 CVP: list decoding at delta = 1/2 then the closest candidate.
      child = std::make_shared<ListNearestDecoder>(leech_list_decoder(st), [] {
        ListConfig c;
        c.delta = 0.5;
        return c;
      }());
    } else {
      throw ValidationError("nebe child must be qmld or cvp");
    }
    h.decoder = nebe_decoder(ns, child, st.lattice);
    h.list_mode = strategy == Strategy::KingList;
  } else {
    throw ValidationError("strategy " + strategy_name(strategy) + " needs a construction record (sidecar)");
  }
  return h;
}

nlohmann::json decode_json(const DecoderHandle& h, const std::vector<double>& y) {
  const DecodeOutcome o = h.list_mode ? decode_list(*h.decoder, y, h.config) : decode_nearest(*h.decoder, y);
  nlohmann::json j;
  j["point"] = y;
  if (o.candidates.empty()) {
    j["nearest"] = nullptr;
    j["dist_sq"] = nullptr;
  } else {
    j["nearest"] = o.candidates[0].point;
    j["dist_sq"] = o.candidates[0].dist_sq;
  }
  j["list_size"] = o.candidates.size();
  j["counters"] = o.counters;
  j["strategy"] = h.strategy;
  return j;
}

}  // namespace latdec
