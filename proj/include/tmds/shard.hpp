// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmds/codec.hpp"
#include "tmds/repair.hpp"

namespace tmds {

class ShardError : public std::runtime_error {
 public:
  ShardError(std::size_t node, const std::string& what)
      : std::runtime_error("shard " + std::to_string(node) + ": " + what), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

// Fixed little-endian layout, 68 bytes.
struct ShardHeader {
  static constexpr char kMagic[4] = {'M', 'D', 'S', 'A'};
  static constexpr std::uint16_t kVersion = 1;
  static constexpr std::size_t kSize = 68;

  std::uint16_t version = kVersion;
  std::array<unsigned char, 32> digest{};
  std::uint16_t node = 0;
  std::uint32_t q = 0;
  std::uint64_t L = 0;
  std::uint64_t stripes = 0;
  std::uint64_t original_length = 0;

  std::vector<unsigned char> pack() const;
  // `node_hint` labels errors before the node field is known.
  static ShardHeader unpack(const unsigned char* p, std::size_t len, std::size_t node_hint);
  bool same_code(const ShardHeader& o) const;
};

inline std::size_t symbol_width(std::uint32_t q) { return q <= 256 ? 1 : 2; }

// Header, L * stripes symbols in stripe-major order, then a SHA-256 of all
// preceding bytes.
std::vector<unsigned char> serialize_shard(const ShardHeader& h, const Matrix& fragment);
// Checks layout, trailer and symbol range; the fragment's field is `f`.
Matrix deserialize_shard(const std::vector<unsigned char>& bytes, const FieldPtr& f, ShardHeader* header,
                         std::size_t node_hint);

void write_file(const std::string& path, const std::vector<unsigned char>& bytes);
std::vector<unsigned char> read_file(const std::string& path);

// Data bits carried per symbol: floor(log2 q).
unsigned bits_per_symbol(std::uint32_t q);
// Packs bytes into k fragments of L x stripes symbols (at least one stripe).
Fragments pack_data(const std::vector<unsigned char>& bytes, const ArrayCode& code);
std::vector<unsigned char> unpack_data(const Fragments& data, const ArrayCode& code, std::uint64_t length);

using Blob = std::vector<unsigned char>;

// n shard files for `bytes`; `digest` is the code spec digest (hex).
std::vector<Blob> encode_bytes(const ArrayCode& code, const std::string& digest, const Blob& bytes);

// Needs at least k valid shards from the same encoding; extra shards are
// checked against the parity equations.
Blob decode_shards(const ArrayCode& code, const std::string& digest, const std::vector<Blob>& shards);

struct ShardRepair {
  Blob shard;
  RepairTranscript transcript;
  AuditReport audit;
};
// Rebuilds node `failed` from exactly d = k + delta - 1 helper shards.
ShardRepair repair_shard(const ArrayCode& code, const std::string& digest, const std::vector<Blob>& helpers,
                         std::size_t failed);

std::string shard_name(std::size_t node);

}  // namespace tmds
