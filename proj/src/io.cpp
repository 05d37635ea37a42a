#include "latdec/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "latdec/errors.hpp"

namespace latdec {

std::string format_lattice(const LatticeBasis& lattice) {
  std::ostringstream os;
  os << "dim " << lattice.dim() << "\n";
  const auto& c = lattice.complex_basis();
  if (c) {
    os << "ring " << (c->ring == RingTag::GaussianInt ? "gaussian" : "lambda") << "\n";
    for (std::size_t i = 0; i < c->entries.rows(); ++i) {
      for (std::size_t j = 0; j < c->entries.cols(); ++j) {
        os << (j ? " " : "") << format_ring_element(c->ring, c->entries(i, j));
      }
      os << "\n";
    }
  } else {
    os << "ring none\n";
    const ExactMatrix& g = lattice.generator();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t j = 0; j < g.cols(); ++j) os << (j ? " " : "") << g(i, j).str();
      os << "\n";
    }
  }
  return os.str();
}

namespace {

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

LatticeBasis parse_lattice(const std::string& text, const std::string& name) {
  const auto lines = content_lines(text);
  if (lines.size() < 2) throw ValidationError("lattice file needs a dim line and a ring line");
  const auto d = tokens(lines[0]);
  if (d.size() != 2 || d[0] != "dim") throw ValidationError("first line must be 'dim n'");
  std::size_t n = 0;
  try {
    std::size_t pos = 0;
    n = std::stoul(d[1], &pos);
    if (pos != d[1].size()) throw std::invalid_argument(d[1]);
  } catch (const std::exception&) {
    throw ValidationError("bad dimension '" + d[1] + "'");
  }
  if (n == 0) throw ValidationError("dimension must be positive");
  const auto r = tokens(lines[1]);
  if (r.size() != 2 || r[0] != "ring") throw ValidationError("second line must be 'ring none|gaussian|lambda'");
  const std::string ring = r[1];
  if (ring == "none") {
    if (lines.size() != 2 + n) throw ValidationError("expected " + std::to_string(n) + " basis rows");
    ExactMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = tokens(lines[2 + i]);
      if (row.size() != n) throw ValidationError("row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < n; ++j) g(i, j) = QSqrt7::parse(row[j]);
    }
    return LatticeBasis(std::move(g), name);
  }
  RingTag tag;
  if (ring == "gaussian") {
    tag = RingTag::GaussianInt;
  } else if (ring == "lambda") {
    tag = RingTag::Lambda;
  } else {
    throw ValidationError("unknown ring '" + ring + "'");
  }
  if (n % 2 != 0) throw ValidationError("complex lattices need an even dimension");
  const std::size_t m = n / 2;
  if (lines.size() != 2 + m) throw ValidationError("expected " + std::to_string(m) + " complex basis rows");
  ComplexBasis c{tag, Matrix<RingElement>(m, m)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = tokens(lines[2 + i]);
    if (row.size() != m) throw ValidationError("row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < m; ++j) c.entries(i, j) = parse_ring_element(tag, row[j]);
  }
  return LatticeBasis::from_complex(c, name);
}

nlohmann::json lattice_metadata(const LatticeBasis& lattice) {
  nlohmann::json j;
  j["name"] = lattice.name();
  j["dim"] = lattice.dim();
  j["volume"] = lattice.volume();
  j["volume_sq"] = lattice.volume_sq().str();
  if (lattice.min_sq_norm()) {
    j["min_sq_norm"] = {{"value", lattice.min_sq_norm()->value.str()},
                        {"provenance", std::string(provenance_name(lattice.min_sq_norm()->provenance))}};
    j["coding_gain_db"] = lattice.coding_gain_db();
  } else {
    j["min_sq_norm"] = nullptr;
    j["coding_gain_db"] = nullptr;
  }
  if (lattice.kissing()) {
    j["kissing"] = {{"value", lattice.kissing()->value},
                    {"provenance", std::string(provenance_name(lattice.kissing()->provenance))}};
  } else {
    j["kissing"] = nullptr;
  }
  if (lattice.covering_radius()) {
    j["covering_radius"] = *lattice.covering_radius();
  } else {
    j["covering_radius"] = nullptr;
  }
  return j;
}

namespace {
Provenance parse_provenance(const std::string& s) {
  if (s == provenance_name(Provenance::Exact)) return Provenance::Exact;
  if (s == provenance_name(Provenance::Asserted)) return Provenance::Asserted;
  throw ValidationError("unknown provenance '" + s + "'");
}
}  // namespace

LatticeBasis apply_metadata(const LatticeBasis& lattice, const nlohmann::json& meta) {
  LatticeBasis out = lattice;
  try {
    if (meta.contains("dim") && meta["dim"].get<std::size_t>() != lattice.dim()) {
      throw ValidationError("metadata dimension disagrees with the lattice file");
    }
    if (meta.contains("name") && meta["name"].is_string()) out = out.with_name(meta["name"].get<std::string>());
    if (meta.contains("min_sq_norm") && meta["min_sq_norm"].is_object()) {
      const auto& m = meta["min_sq_norm"];
      out = out.with_min_sq_norm(QSqrt7::parse(m["value"].get<std::string>()),
                                 parse_provenance(m["provenance"].get<std::string>()));
    }
    if (meta.contains("kissing") && meta["kissing"].is_object()) {
      const auto& k = meta["kissing"];
      out = out.with_kissing(k["value"].get<std::uint64_t>(), parse_provenance(k["provenance"].get<std::string>()));
    }
    if (meta.contains("covering_radius") && meta["covering_radius"].is_number()) {
      out = out.with_covering_radius(meta["covering_radius"].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad lattice metadata: ") + e.what());
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

LatticeBasis read_lattice_file(const std::string& path) {
  const std::string stem = std::filesystem::path(path).stem().string();
  LatticeBasis l = parse_lattice(read_text_file(path), stem);
  const std::string side = path + ".json";
  if (std::filesystem::exists(side)) {
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(read_text_file(side));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("cannot parse " + side + ": " + e.what());
    }
    l = apply_metadata(l, meta);
  }
  return l;
}

void write_lattice_files(const std::string& path, const LatticeBasis& lattice) {
  write_text_file(path, format_lattice(lattice));
  write_text_file(path + ".json", lattice_metadata(lattice).dump(2) + "\n");
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace latdec
