// SPDX-License-Identifier: Apache-2.0
#include "tmds/shard.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include "tmds/codespec.hpp"

namespace tmds {
namespace {

template <class T>
void put_le(std::vector<unsigned char>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

template <class T>
T get_le(const unsigned char*& p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(p[i]) << (8 * i));
  p += sizeof(T);
  return v;
}

}  // namespace

std::vector<unsigned char> ShardHeader::pack() const {
  std::vector<unsigned char> out(kMagic, kMagic + 4);
  put_le(out, version);
  out.insert(out.end(), digest.begin(), digest.end());
  put_le(out, node);
  put_le(out, q);
  put_le(out, L);
  put_le(out, stripes);
  put_le(out, original_length);
  return out;
}

ShardHeader ShardHeader::unpack(const unsigned char* p, std::size_t len, std::size_t node_hint) {
  if (len < kSize) throw ShardError(node_hint, "truncated header");
  if (std::memcmp(p, kMagic, 4) != 0) throw ShardError(node_hint, "bad magic");
  p += 4;
  ShardHeader h;
  h.version = get_le<std::uint16_t>(p);
  if (h.version != kVersion) throw ShardError(node_hint, "unsupported version " + std::to_string(h.version));
  std::copy(p, p + 32, h.digest.begin());
  p += 32;
  h.node = get_le<std::uint16_t>(p);
  h.q = get_le<std::uint32_t>(p);
  h.L = get_le<std::uint64_t>(p);
  h.stripes = get_le<std::uint64_t>(p);
  h.original_length = get_le<std::uint64_t>(p);
  return h;
}

bool ShardHeader::same_code(const ShardHeader& o) const {
  return digest == o.digest && q == o.q && L == o.L && stripes == o.stripes && original_length == o.original_length;
}

std::vector<unsigned char> serialize_shard(const ShardHeader& h, const Matrix& fragment) {
  if (fragment.rows() != h.L || fragment.cols() != h.stripes) throw DimensionError("fragment shape disagrees with header");
  std::vector<unsigned char> out = h.pack();
  const std::size_t w = symbol_width(h.q);
  out.reserve(out.size() + h.L * h.stripes * w + 32);
  for (std::size_t s = 0; s < h.stripes; ++s)
    for (std::size_t a = 0; a < h.L; ++a) {
      const Elem e = fragment(a, s);
      out.push_back(static_cast<unsigned char>(e & 0xFF));
      if (w == 2) out.push_back(static_cast<unsigned char>(e >> 8));
    }
  const auto sum = sha256(out.data(), out.size());
  out.insert(out.end(), sum.begin(), sum.end());
  return out;
}

Matrix deserialize_shard(const std::vector<unsigned char>& bytes, const FieldPtr& f, ShardHeader* header,
                         std::size_t node_hint) {
  ShardHeader h = ShardHeader::unpack(bytes.data(), bytes.size(), node_hint);
  const std::size_t node = h.node;
  if (h.q != f->q()) throw ShardError(node, "field size " + std::to_string(h.q) + " does not match the code");
  const std::size_t w = symbol_width(h.q);
  const std::uint64_t payload = h.L * h.stripes * w;
  if (bytes.size() != ShardHeader::kSize + payload + 32) throw ShardError(node, "payload length mismatch");
  const auto sum = sha256(bytes.data(), bytes.size() - 32);
  if (!std::equal(sum.begin(), sum.end(), bytes.end() - 32)) throw ShardError(node, "checksum mismatch");
  Matrix m(f, h.L, h.stripes);
  const unsigned char* p = bytes.data() + ShardHeader::kSize;
  for (std::size_t s = 0; s < h.stripes; ++s)
    for (std::size_t a = 0; a < h.L; ++a) {
      Elem e = *p++;
      if (w == 2) e = static_cast<Elem>(e | (*p++ << 8));
      if (e >= h.q) throw ShardError(node, "symbol outside the field");
      m(a, s) = e;
    }
  if (header) *header = h;
  return m;
}

void write_file(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

unsigned bits_per_symbol(std::uint32_t q) {
  unsigned b = 0;
  while ((std::uint64_t(2) << b) <= q) ++b;
  return b;
}

Fragments pack_data(const std::vector<unsigned char>& bytes, const ArrayCode& code) {
  const unsigned b = bits_per_symbol(code.field->q());
  const std::uint64_t per_stripe = code.k * code.L * b;  // bits
  const std::uint64_t total = bytes.size() * 8ull;
  const std::size_t stripes = std::max<std::uint64_t>(1, (total + per_stripe - 1) / per_stripe);
  Fragments data(code.k, Matrix(code.field, code.L, stripes));
  std::uint64_t bit = 0;
  for (std::size_t s = 0; s < stripes; ++s)
    for (std::size_t i = 0; i < code.k; ++i)
      for (std::size_t a = 0; a < code.L; ++a) {
        Elem e = 0;
        for (unsigned j = 0; j < b; ++j, ++bit)
          if (bit < total && (bytes[bit >> 3] >> (bit & 7)) & 1) e = static_cast<Elem>(e | (1u << j));
        data[i](a, s) = e;
      }
  return data;
}

std::vector<unsigned char> unpack_data(const Fragments& data, const ArrayCode& code, std::uint64_t length) {
  const unsigned b = bits_per_symbol(code.field->q());
  std::vector<unsigned char> out(length, 0);
  const std::uint64_t total = length * 8ull;
  const std::size_t stripes = data.at(0).cols();
  std::uint64_t bit = 0;
  for (std::size_t s = 0; s < stripes && bit < total; ++s)
    for (std::size_t i = 0; i < code.k && bit < total; ++i)
      for (std::size_t a = 0; a < code.L && bit < total; ++a) {
        const Elem e = data[i](a, s);
        if (e >> b) throw DimensionError("data symbol " + std::to_string(e) + " exceeds the packing width");
        for (unsigned j = 0; j < b && bit < total; ++j, ++bit)
          if ((e >> j) & 1) out[bit >> 3] = static_cast<unsigned char>(out[bit >> 3] | (1u << (bit & 7)));
      }
  if (bit < total) throw DimensionError("not enough stripes for the recorded length");
  return out;
}

}  // namespace tmds

namespace tmds {
namespace {

struct Loaded {
  std::map<std::size_t, Matrix> frags;
  ShardHeader first;
};

Loaded load_all(const ArrayCode& code, const std::string& digest, const std::vector<Blob>& shards) {
  const auto want = digest_bytes(digest);
  Loaded out;
  bool have = false;
  for (std::size_t s = 0; s < shards.size(); ++s) {
    ShardHeader h;
    Matrix m = deserialize_shard(shards[s], code.field, &h, s);
    if (h.digest != want) throw ShardError(h.node, "code digest does not match the spec");
    if (h.node >= code.n) throw ShardError(h.node, "node index out of range");
    if (h.L != code.L) throw ShardError(h.node, "sub-packetization does not match the code");
    if (have && !h.same_code(out.first)) throw ShardError(h.node, "header disagrees with the other shards");
    if (!out.frags.emplace(h.node, std::move(m)).second) throw ShardError(h.node, "duplicate shard");
    if (!have) out.first = h;
    have = true;
  }
  return out;
}

}  // namespace

std::string shard_name(std::size_t node) { return "node_" + std::to_string(node) + ".shard"; }

std::vector<Blob> encode_bytes(const ArrayCode& code, const std::string& digest, const Blob& bytes) {
  if (code.n > 0xFFFF) throw ParameterError("too many nodes for the shard format");
  const Fragments word = encode(code, pack_data(bytes, code));
  ShardHeader h;
  h.digest = digest_bytes(digest);
  h.q = code.field->q();
  h.L = code.L;
  h.stripes = word.front().cols();
  h.original_length = bytes.size();
  std::vector<Blob> out;
  for (std::size_t i = 0; i < code.n; ++i) {
    h.node = static_cast<std::uint16_t>(i);
    out.push_back(serialize_shard(h, word[i]));
  }
  return out;
}

Blob decode_shards(const ArrayCode& code, const std::string& digest, const std::vector<Blob>& shards) {
  Loaded in = load_all(code, digest, shards);
  if (in.frags.size() < code.k)
    throw ParameterError("need " + std::to_string(code.k) + " shards, got " + std::to_string(in.frags.size()));
  Fragments word(code.n);
  std::vector<std::size_t> present;
  for (auto& [node, m] : in.frags) {
    word[node] = m;
    if (present.size() < code.k) present.push_back(node);
  }
  const Fragments full = reconstruct(code, word, present, DecodeMethod::Induction);
  for (const auto& [node, m] : in.frags)
    if (full[node] != m) throw ShardError(node, "inconsistent with the other shards (parity check failed)");
  Fragments data(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(code.k));
  return unpack_data(data, code, in.first.original_length);
}

ShardRepair repair_shard(const ArrayCode& code, const std::string& digest, const std::vector<Blob>& helpers,
                         std::size_t failed) {
  Loaded in = load_all(code, digest, helpers);
  if (in.frags.count(failed)) throw ShardError(failed, "the failed node is among the helpers");
  const std::size_t z = degree_index_for(code, in.frags.size());
  RepairPlan plan;
  plan.failed = failed;
  plan.z = z;
  Fragments word(code.n);
  for (auto& [node, m] : in.frags) {
    plan.helpers.push_back(node);
    word[node] = m;
  }
  ShardRepair out;
  RepairResult res = repair(code, word, plan);
  out.transcript = std::move(res.transcript);
  out.audit = transcript_audit(out.transcript, code, plan);
  ShardHeader h = in.first;
  h.node = static_cast<std::uint16_t>(failed);
  out.shard = serialize_shard(h, res.fragment);
  return out;
}

}  // namespace tmds
