// SPDX-License-Identifier: Apache-2.0
#include "tmds/codespec.hpp"

#include <openssl/evp.h>

#include <limits>
#include <sstream>

#include "tmds/compare.hpp"
#include "tmds/indexing.hpp"

namespace tmds {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParameterError("missing key '" + key + "'");
  try {
    std::size_t used = 0;
    const auto v = std::stoull(it->second, &used, 0);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw ParameterError("key '" + key + "' is not an unsigned integer: " + it->second);
  }
}

std::vector<std::uint64_t> to_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stoull(item));
    } catch (const std::logic_error&) {
      throw ParameterError("bad list entry '" + item + "'");
    }
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// "0,1;2,3;4,5": goal nodes of each lifting round.
std::string goal_sets_text(const VbkParams& p) {
  std::string out;
  for (const auto& J : goal_partition(p.n, p.delta0)) out += (out.empty() ? "" : ";") + join(J);
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParameterError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty() || kv.count(key)) throw ParameterError("line " + std::to_string(lineno) + ": bad or repeated key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

BuildConfig BuildConfig::parse(const std::string& text) {
  const auto kv = parse_key_values(text);
  BuildConfig c;
  c.n = to_u64(kv, "n");
  c.k = to_u64(kv, "k");
  c.delta0 = static_cast<unsigned>(to_u64(kv, "delta0"));
  auto it = kv.find("degrees");
  if (it == kv.end()) throw ParameterError("missing key 'degrees'");
  for (auto d : to_list(it->second)) c.degrees.push_back(static_cast<unsigned>(d));
  if (kv.count("q")) c.q = static_cast<std::uint32_t>(to_u64(kv, "q"));
  if (kv.count("seed")) c.seed = to_u64(kv, "seed");
  for (const auto& [key, value] : kv)
    if (key != "n" && key != "k" && key != "delta0" && key != "degrees" && key != "q" && key != "seed")
      throw ParameterError("unknown key '" + key + "'");
  return c;
}

VbkParams BuildConfig::params() const {
  if (k == 0 || k >= n) throw ParameterError("need 0 < k < n");
  VbkParams p;
  p.n = n;
  p.k = k;
  p.delta0 = delta0;
  p.degrees = DegreeSet::make(degrees, n - k);
  p.q = q ? q : vbk_default_field(n, delta0);
  return p;
}

bool CodeShape::materializable() const { return L <= (1u << 16) && sat_mul(r, L) <= (1u << 18); }

CodeShape shape_of(const BuildConfig& cfg) {
  const VbkParams p = cfg.params();
  validate_params(p);
  CodeShape s;
  s.n = p.n;
  s.k = p.k;
  s.r = p.r();
  s.q = p.q;
  const std::uint64_t side = lcm_of(cfg.degrees);
  s.L = 1;
  for (std::size_t x = 0; x < p.tau(); ++x) s.L = sat_mul(s.L, side);
  s.subpacketization = Power{side, p.tau()}.str();
  return s;
}

std::string CodeSpec::body() const {
  std::ostringstream os;
  os << "format=tmds-codespec-1\n";
  os << "n=" << params.n << "\n";
  os << "k=" << params.k << "\n";
  os << "delta0=" << params.delta0 << "\n";
  os << "degrees=" << join(params.degrees.degrees) << "\n";
  os << "q=" << params.q << "\n";
  os << "modulus=" << join(build_field(params.q)->modulus()) << "\n";
  os << "seed=" << constants.seed << "\n";
  os << "split=" << (split == PartSplit::GoalAxis ? "goal-axis" : "contiguous") << "\n";
  os << "round_goal_sets=" << goal_sets_text(params) << "\n";
  os << "epsilon=" << constants.epsilon << "\n";
  for (std::size_t x = 0; x < constants.theta.size(); ++x) {
    const std::size_t used = params.delta0 == 2 ? 2 : 4;
    std::vector<Elem> row(constants.theta[x].begin(), constants.theta[x].begin() + static_cast<std::ptrdiff_t>(used));
    os << "theta" << x << "=" << join(row) << "\n";
  }
  os << "zeta=" << join(constants.zeta) << "\n";
  return os.str();
}

std::string CodeSpec::digest() const {
  const std::string b = body();
  return sha256_hex(b.data(), b.size());
}

std::string CodeSpec::to_text() const { return body() + "sha256=" + digest() + "\n"; }

CodeSpec CodeSpec::parse(const std::string& text) {
  const auto kv = parse_key_values(text);
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParameterError("code spec lacks '" + key + "'");
    return it->second;
  };
  if (get("format") != "tmds-codespec-1") throw ParameterError("unknown code spec format");
  CodeSpec s;
  s.params.n = to_u64(kv, "n");
  s.params.k = to_u64(kv, "k");
  s.params.delta0 = static_cast<unsigned>(to_u64(kv, "delta0"));
  std::vector<unsigned> deg;
  for (auto d : to_list(get("degrees"))) deg.push_back(static_cast<unsigned>(d));
  if (s.params.k == 0 || s.params.k >= s.params.n) throw ParameterError("need 0 < k < n");
  s.params.degrees = DegreeSet::make(deg, s.params.n - s.params.k);
  s.params.q = static_cast<std::uint32_t>(to_u64(kv, "q"));
  const std::string& split = get("split");
  if (split == "goal-axis") s.split = PartSplit::GoalAxis;
  else if (split == "contiguous") s.split = PartSplit::Contiguous;
  else throw ParameterError("unknown split '" + split + "'");
  s.constants.delta0 = s.params.delta0;
  s.constants.seed = to_u64(kv, "seed");
  s.constants.epsilon = static_cast<Elem>(to_u64(kv, "epsilon"));
  for (std::size_t x = 0; x < s.params.tau(); ++x) {
    const auto row = to_list(get("theta" + std::to_string(x)));
    std::array<Elem, 4> th{0, 0, 0, 0};
    if (row.size() > 4) throw ParameterError("theta row too long");
    for (std::size_t i = 0; i < row.size(); ++i) th[i] = static_cast<Elem>(row[i]);
    s.constants.theta.push_back(th);
  }
  for (auto z : to_list(kv.count("zeta") ? kv.at("zeta") : std::string())) s.constants.zeta.push_back(static_cast<Elem>(z));
  // Derived records must agree with the parameters they were written from.
  if (get("modulus") != join(build_field(s.params.q)->modulus())) throw ParameterError("code spec modulus mismatch");
  if (get("round_goal_sets") != goal_sets_text(s.params)) throw ParameterError("code spec goal sets mismatch");
  const std::string& want = get("sha256");
  if (want != s.digest()) throw ParameterError("code spec digest mismatch");
  return s;
}

CodeSpec make_spec(const BuildConfig& cfg, bool force) {
  const CodeShape shape = shape_of(cfg);
  if (!shape.materializable() && !force)
    throw ParameterError("refusing to materialize L = " + shape.subpacketization + " (limits L <= 2^16, r L <= 2^18)");
  CodeSpec s;
  s.params = cfg.params();
  s.constants = *build_vbk(s.params, cfg.seed)->constants;
  return s;
}

CodePtr materialize_base(const CodeSpec& spec) {
  const FieldPtr f = build_field(spec.params.q);
  for (Elem z : spec.constants.zeta)
    if (z == 0) throw ParameterError("key constants must be nonzero");
  return build_vbk_with(spec.params, f, spec.constants);
}

CodePtr materialize(const CodeSpec& spec, bool force) {
  BuildConfig cfg;
  cfg.n = spec.params.n;
  cfg.k = spec.params.k;
  cfg.delta0 = spec.params.delta0;
  cfg.degrees = spec.params.degrees.degrees;
  cfg.q = spec.params.q;
  if (!shape_of(cfg).materializable() && !force) throw ParameterError("refusing to materialize without force");
  return algorithm2(materialize_base(spec), spec.split);
}

std::array<unsigned char, 32> sha256(const void* data, std::size_t len) {
  std::array<unsigned char, 32> out{};
  unsigned int outlen = 0;
  if (EVP_Digest(data, len, out.data(), &outlen, EVP_sha256(), nullptr) != 1 || outlen != 32)
    throw std::runtime_error("SHA-256 failed");
  return out;
}

std::string sha256_hex(const void* data, std::size_t len) {
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned char c : sha256(data, len)) {
    s += hex[c >> 4];
    s += hex[c & 15];
  }
  return s;
}

std::array<unsigned char, 32> digest_bytes(const std::string& h) {
  if (h.size() != 64) throw ParameterError("digest must be 64 hex digits");
  std::array<unsigned char, 32> out{};
  for (std::size_t i = 0; i < 32; ++i) out[i] = static_cast<unsigned char>(std::stoul(h.substr(2 * i, 2), nullptr, 16));
  return out;
}

}  // namespace tmds
