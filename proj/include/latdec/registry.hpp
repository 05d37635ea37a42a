#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "latdec/decoders.hpp"

namespace latdec {

struct BuildOptions {
  EnumBudget budget;
  bool enumerate = false;        // compute min norm and kissing by enumeration when affordable
  bool decide_minimum = false;   // N72: decide norm 6 exactly
  std::optional<ComplexBasis> nebe_basis;  // N72: Z[lambda]-basis of Lambda24
  std::optional<LatticeBasis> parity_base; // parity: L_c
  std::string theta = "phi";
  std::size_t k = 2;
  std::size_t depth = 1;
};

/// A constructed lattice with its construction record (stored in the
/// sidecar so that decoders can be rebuilt from a file).
struct BuiltLattice {
  LatticeBasis lattice;
  nlohmann::json construction;
};

/// family: Z, D, BW, E8, Leech, L3x24, N72, parity. n is the dimension for
/// Z, D and BW and ignored otherwise.
BuiltLattice build_lattice(const std::string& family, std::size_t n, const BuildOptions& opt);

enum class Strategy {
  SphereEnum,
  ParityBDD,
  ParityList,
  ParityListSplit,
  KingBDD,
  KingList,
  RecursiveList,
  BWRecursiveBDD,
  LeechCVP,
  NebeQMLD
};

Strategy parse_strategy(const std::string& s);
std::string strategy_name(Strategy s);

struct DecoderHandle {
  DecoderPtr decoder;
  bool list_mode = false;
  ListConfig config;
  std::string strategy;
};

/// Decoder for a lattice read from a file. The construction record selects
/// the structure; the file's lattice must equal the rebuilt one exactly.
/// nebe_child selects the Lambda24 child for NebeQMLD: "qmld" or "cvp".
DecoderHandle make_decoder(const LatticeBasis& lattice, const nlohmann::json& construction, Strategy strategy,
                           const ListConfig& cfg, const EnumBudget& budget = {},
                           const std::string& nebe_child = "qmld");

/// Decodes y and returns {point, nearest, dist_sq, list_size, counters}.
nlohmann::json decode_json(const DecoderHandle& h, const std::vector<double>& y);

}  // namespace latdec
