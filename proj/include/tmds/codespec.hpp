// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "tmds/transform.hpp"
#include "tmds/vbk.hpp"

namespace tmds {

// Parsed `key=value` lines; `#` starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);

struct BuildConfig {
  std::size_t n = 0, k = 0;
  unsigned delta0 = 2;
  std::vector<unsigned> degrees;
  std::uint32_t q = 0;      // 0 picks the default field
  std::uint64_t seed = 1;

  static BuildConfig parse(const std::string& text);
  VbkParams params() const;
};

// Sizes of the final code, computable without building anything.
struct CodeShape {
  std::size_t n = 0, k = 0, r = 0;
  std::uint64_t L = 0;      // saturates at UINT64_MAX
  std::uint32_t q = 0;
  std::string subpacketization;  // symbolic, "6^12"
  bool materializable() const;   // L <= 2^16 and r L <= 2^18
};
CodeShape shape_of(const BuildConfig& cfg);

// Canonical description of a built code: parameters plus the constants
// actually chosen, so rebuilding never re-runs the constant search.
struct CodeSpec {
  VbkParams params;
  VbkConstants constants;
  PartSplit split = PartSplit::GoalAxis;

  std::string body() const;      // canonical key=value lines
  std::string digest() const;    // SHA-256 of body(), lowercase hex
  std::string to_text() const;   // body plus a digest line
  // Throws ParameterError when the digest line is missing or wrong.
  static CodeSpec parse(const std::string& text);
};

// Runs the constant search with validation. Refuses codes beyond the
// materialization guard unless `force`.
CodeSpec make_spec(const BuildConfig& cfg, bool force = false);
// Base code and the transformed code for a spec.
CodePtr materialize_base(const CodeSpec& spec);
CodePtr materialize(const CodeSpec& spec, bool force = false);

std::string sha256_hex(const void* data, std::size_t len);
std::array<unsigned char, 32> sha256(const void* data, std::size_t len);
std::array<unsigned char, 32> digest_bytes(const std::string& hex);

}  // namespace tmds
