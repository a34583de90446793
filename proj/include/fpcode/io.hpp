// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fpcode/core.hpp"

namespace fpcode::io {

// Code file layout: {"q", "n", "M1", "M2", "codewords", ["provenance"]} with
// codewords row-major (user (g, m) at position g*M2 + m, 0-based internally).
// Serialization is canonical (fixed key order, compact separators), so
// parse(serialize(code)) == code and serialize(parse(bytes)) == bytes.

std::string serialize_code(const TwoLevelCode& code);
TwoLevelCode parse_code(std::string_view bytes);

void save_code(const TwoLevelCode& code, const std::string& path);
TwoLevelCode load_code(const std::string& path);

// Every verb that writes an artifact also writes <artifact>.manifest.json;
// replaying the recorded argv must reproduce the artifact byte for byte.
struct RunManifest {
  std::string verb;
  std::string version;
  std::map<std::string, std::string> flags;  // resolved flag -> value
  std::map<std::string, std::string> input_digests;   // path -> sha256
  std::map<std::string, std::string> output_digests;  // path -> sha256

  bool operator==(const RunManifest&) const = default;
};

std::string serialize_manifest(const RunManifest& m);
RunManifest parse_manifest(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);
std::string file_sha256(const std::string& path);

// Shortest decimal that round-trips the exact double; used for CSV cells
// so emitted tables are byte-stable.
std::string format_double(double x);

}  // namespace fpcode::io
