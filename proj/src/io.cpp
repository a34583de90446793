// SPDX-License-Identifier: Apache-2.0
#include "fpcode/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fpcode/kernels.hpp"
#include "fpcode/sha256.hpp"

namespace fpcode::io {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json rows_to_json(const std::vector<std::uint8_t>& flat,
                          std::size_t rows, std::size_t n) {
  ordered_json out = ordered_json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) row.push_back(flat[r * n + i]);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::uint8_t> rows_from_json(const ordered_json& j,
                                         std::size_t rows, std::size_t n,
                                         unsigned q, const char* what) {
  if (!j.is_array() || j.size() != rows)
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(rows) + " rows");
  std::vector<std::uint8_t> flat;
  flat.reserve(rows * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n)
      throw std::invalid_argument(std::string(what) +
                                  ": row length mismatch");
    for (const auto& v : row) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= q)
        throw std::invalid_argument(std::string(what) +
                                    ": symbol out of range");
      flat.push_back(static_cast<std::uint8_t>(v.get<std::uint64_t>()));
    }
  }
  return flat;
}

}  // namespace

std::string serialize_code(const TwoLevelCode& code) {
  ordered_json j;
  j["q"] = code.q();
  j["n"] = code.n();
  j["M1"] = code.m1();
  j["M2"] = code.m2();
  j["codewords"] = rows_to_json(code.flat(), code.user_count(), code.n());
  if (code.provenance()) {
    const auto& p = *code.provenance();
    ordered_json pj;
    pj["omega"] = p.omega;
    pj["w"] = p.w;
    pj["seed"] = p.seed;
    pj["centers"] = rows_to_json(p.centers, code.m1(), code.n());
    j["provenance"] = std::move(pj);
  }
  return j.dump();
}

TwoLevelCode parse_code(std::string_view bytes) {
  ordered_json j;
  try {
    j = ordered_json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed code file: ") +
                                e.what());
  }
  for (const char* key : {"q", "n", "M1", "M2", "codewords"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("code file missing field: ") +
                                  key);
  auto get_uint = [&](const char* key, std::uint64_t lo,
                      std::uint64_t hi) -> std::uint64_t {
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() < lo ||
        v.get<std::uint64_t>() > hi)
      throw std::invalid_argument(std::string("code file field ") + key +
                                  " out of range");
    return v.get<std::uint64_t>();
  };
  auto q = static_cast<std::uint16_t>(get_uint("q", 2, 256));
  auto n = static_cast<std::uint32_t>(get_uint("n", 1, 1u << 20));
  auto m1 = static_cast<std::uint32_t>(get_uint("M1", 1, 1u << 24));
  auto m2 = static_cast<std::uint32_t>(get_uint("M2", 1, 1u << 24));

  auto flat = rows_from_json(j.at("codewords"),
                             static_cast<std::size_t>(m1) * m2, n, q,
                             "codewords");

  std::optional<Provenance> prov;
  if (j.contains("provenance")) {
    const auto& pj = j.at("provenance");
    for (const char* key : {"omega", "w", "seed", "centers"})
      if (!pj.contains(key))
        throw std::invalid_argument(
            std::string("provenance missing field: ") + key);
    Provenance p;
    p.omega = pj.at("omega").get<double>();
    p.w = pj.at("w").get<std::uint32_t>();
    p.seed = pj.at("seed").get<std::uint64_t>();
    p.centers = rows_from_json(pj.at("centers"), m1, n, q, "centers");
    if (!(p.omega >= 0.0 && p.omega <= 1.0))
      throw std::invalid_argument("provenance omega out of [0, 1]");
    if (std::fabs(p.omega * n - p.w) > 1e-9)
      throw std::invalid_argument("provenance w does not equal omega*n");
    // Construction identity: codeword = center + offset with offset of
    // weight w. Recompute the offset and check.
    std::vector<std::uint8_t> neg_center(n);
    for (std::uint32_t g = 0; g < m1; ++g) {
      const std::uint8_t* center = p.centers.data() + std::size_t(g) * n;
      for (std::uint32_t i = 0; i < n; ++i)
        neg_center[i] = static_cast<std::uint8_t>(
            center[i] == 0 ? 0 : q - center[i]);
      std::vector<std::uint8_t> offset(n);
      for (std::uint32_t m = 0; m < m2; ++m) {
        const std::uint8_t* cw =
            flat.data() + (std::size_t(g) * m2 + m) * n;
        kernels::add_mod(cw, neg_center.data(), offset.data(), n, q);
        if (kernels::weight(offset.data(), n) != p.w)
          throw std::invalid_argument(
              "provenance inconsistent: offset weight != w for group " +
              std::to_string(g + 1) + ", member " + std::to_string(m + 1));
      }
    }
    prov = std::move(p);
  }
  return TwoLevelCode(q, n, m1, m2, std::move(flat), std::move(prov));
}

void save_code(const TwoLevelCode& code, const std::string& path) {
  write_file(path, serialize_code(code));
}

TwoLevelCode load_code(const std::string& path) {
  return parse_code(read_file(path));
}

std::string serialize_manifest(const RunManifest& m) {
  ordered_json j;
  j["verb"] = m.verb;
  j["version"] = m.version;
  ordered_json flags = ordered_json::object();
  for (const auto& [k, v] : m.flags) flags[k] = v;
  j["flags"] = std::move(flags);
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : m.input_digests) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  ordered_json outputs = ordered_json::object();
  for (const auto& [k, v] : m.output_digests) outputs[k] = v;
  j["outputs"] = std::move(outputs);
  return j.dump();
}

RunManifest parse_manifest(std::string_view bytes) {
  ordered_json j;
  try {
    j = ordered_json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed manifest: ") +
                                e.what());
  }
  RunManifest m;
  m.verb = j.at("verb").get<std::string>();
  m.version = j.at("version").get<std::string>();
  for (const auto& [k, v] : j.at("flags").items())
    m.flags[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("inputs").items())
    m.input_digests[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("outputs").items())
    m.output_digests[k] = v.get<std::string>();
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

std::string file_sha256(const std::string& path) {
  return sha256_hex(read_file(path));
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return {buf, end};
}

}  // namespace fpcode::io
