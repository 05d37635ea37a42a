#pragma once

#include <json.hpp>
#include <string>

#include "latdec/lattice.hpp"

namespace latdec {

/// Plain-text lattice file: "dim n", "ring none|gaussian|lambda", then the
/// rows. Real entries are "a" or "a+b*r7" (a + b sqrt 7, a and b rational);
/// complex entries are "a+bi" or "p+q*l". A lattice with a complex basis is
/// written in complex form.
std::string format_lattice(const LatticeBasis& lattice);
LatticeBasis parse_lattice(const std::string& text, const std::string& name = {});

/// Metadata sidecar: name, dim, volume, min_sq_norm, kissing, coding_gain_db.
nlohmann::json lattice_metadata(const LatticeBasis& lattice);
/// Restores name and asserted or exact figures from a sidecar.
LatticeBasis apply_metadata(const LatticeBasis& lattice, const nlohmann::json& meta);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Reads path and, when present, path + ".json".
LatticeBasis read_lattice_file(const std::string& path);
/// Writes path and path + ".json".
void write_lattice_files(const std::string& path, const LatticeBasis& lattice);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

}  // namespace latdec
