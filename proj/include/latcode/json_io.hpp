#pragma once

#include <string>

#include <json.hpp>

#include "latcode/css.hpp"
#include "latcode/lattice.hpp"
#include "latcode/lda.hpp"

namespace latcode {

using Json = nlohmann::ordered_json;

// Deterministic serialization: insertion-ordered keys, LF line ends, doubles
// printed with 17 significant digits. Byte-stable for fixed inputs.
std::string stable_dump(const Json& j);

Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

Json lda_to_json(const LdaLattice& l, std::uint64_t seed);

Json code_to_json(const CssCode& c);
CssCode code_from_json(const Json& j);

// MacKay-style alist of a check matrix (rows = checks, cols = qubits),
// 1-indexed, no zero padding: dims, max degrees, per-column and per-row
// degrees, then per-column and per-row index lists.
std::string alist_export(const SparseMat& checks_by_column);

// the two parity-check exports of a CSS code: d2 transposed and d1
std::string alist_export_z(const CssCode& c);
std::string alist_export_x(const CssCode& c);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

} // namespace latcode
