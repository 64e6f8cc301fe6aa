// SPDX-License-Identifier: Apache-2.0
#include "tmds/vbk.hpp"

#include <algorithm>
#include <set>

#include "tmds/indexing.hpp"

namespace tmds {
namespace {

// Theta_x(v, y) = eps^{[v < y]} * theta_{kThetaIndex[v][y], x}.
constexpr unsigned kThetaIndex2[2][2] = {{0, 1}, {1, 0}};
constexpr unsigned kThetaIndex3[3][3] = {{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
constexpr unsigned kThetaIndex4[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

unsigned theta_index(unsigned delta0, unsigned v, unsigned y) {
  switch (delta0) {
    case 2: return kThetaIndex2[v][y];
    case 3: return kThetaIndex3[v][y];
    case 4: return kThetaIndex4[v][y];
  }
  throw ParameterError("delta0 must be 2, 3 or 4");
}

// Row pattern shared by the parity blocks and the projected blocks: the
// digit at `pos` selects the coefficient, rows whose digit equals y mix in
// the other digit values.
Matrix digit_block(const FieldPtr& f, const VbkConstants& c, std::size_t node, std::size_t t,
                   std::size_t pos, unsigned y, std::size_t width) {
  const unsigned s = c.delta0;
  const std::size_t size = ipow(s, width);
  std::vector<Elem> pw(s);
  for (unsigned u = 0; u < s; ++u) pw[u] = f->pow(vbk_lambda(*f, c, node, u), t);
  Matrix m(f, size, size);
  for (std::size_t a = 0; a < size; ++a) {
    const unsigned d = digit(a, s, pos);
    m(a, a) = pw[d];
    if (d != y) continue;
    for (unsigned u = 0; u < s; ++u) {
      if (u == y) continue;
      const Elem coef = u < y ? c.epsilon : Elem(1);
      m(a, pi_index(a, s, pos, u)) = f->mul(coef, pw[u]);
    }
  }
  return m;
}

}  // namespace

std::uint32_t vbk_field_bound(std::size_t n, unsigned delta0) {
  if (delta0 == 2) return static_cast<std::uint32_t>(6 * ((n + 1) / 2) + 2);
  return static_cast<std::uint32_t>(18 * ((n + delta0 - 1) / delta0) + 2);
}

std::uint32_t vbk_default_field(std::size_t n, unsigned delta0) {
  std::uint32_t q = 2;
  while (q < vbk_field_bound(n, delta0)) q <<= 1;
  return q;
}

void validate_params(const VbkParams& p, bool allow_small_r) {
  if (p.delta0 < 2 || p.delta0 > 4) throw ParameterError("delta0 must be 2, 3 or 4");
  if (p.k == 0 || p.k >= p.n) throw ParameterError("need 0 < k < n");
  if (p.r() <= p.delta0 && !allow_small_r)
    throw ParameterError("r = " + std::to_string(p.r()) + " must exceed delta0 = " + std::to_string(p.delta0));
  if (p.degrees.m() == 0 || p.degrees.delta0() != p.delta0)
    throw ParameterError("degree set must start at delta0");
  if (p.degrees.degrees.back() > p.r()) throw ParameterError("largest degree exceeds r");
  if (p.q && p.q < vbk_field_bound(p.n, p.delta0))
    throw ParameterError("field size " + std::to_string(p.q) + " below bound " +
                         std::to_string(vbk_field_bound(p.n, p.delta0)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
  std::uint64_t x;
  do x = engine_(); while (x >= limit);
  return x % bound;
}

VbkConstants choose_constants(const VbkParams& p, const FieldPtr& f, std::uint64_t seed) {
  const std::uint32_t q = f->q();
  if (q < 4) throw ParameterError("field too small to satisfy distinctness");
  Rng rng(seed);
  VbkConstants c;
  c.delta0 = p.delta0;
  c.seed = seed;

  std::vector<Elem> eps_pool;
  for (std::uint32_t e = 2; e < q; ++e) eps_pool.push_back(static_cast<Elem>(e));
  rng.shuffle(eps_pool);
  c.epsilon = eps_pool.front();

  std::vector<Elem> pool;
  for (std::uint32_t e = 1; e < q; ++e) pool.push_back(static_cast<Elem>(e));
  rng.shuffle(pool);
  std::vector<bool> used(q, false);
  auto take = [&](bool paired) -> Elem {
    for (Elem e : pool) {
      if (used[e]) continue;
      if (paired) {
        const Elem pe = f->mul(c.epsilon, e);
        if (used[pe] || pe == e) continue;
        used[pe] = true;
      }
      used[e] = true;
      return e;
    }
    throw ParameterError("field GF(" + std::to_string(q) + ") too small to satisfy distinctness");
  };

  const unsigned extra = p.delta0 == 2 ? 1 : 3;
  c.theta.assign(p.tau(), {0, 0, 0, 0});
  for (std::size_t x = 0; x < p.tau(); ++x) {
    c.theta[x][0] = take(false);
    for (unsigned i = 1; i <= extra; ++i) c.theta[x][i] = take(true);
  }
  for (std::size_t v = 0; v < p.degrees.key_count(); ++v) c.zeta.push_back(take(false));
  return c;
}

Elem vbk_lambda(const Field& f, const VbkConstants& c, std::size_t node, unsigned v) {
  const std::size_t x = node / c.delta0;
  const unsigned y = static_cast<unsigned>(node % c.delta0);
  const Elem th = c.theta.at(x)[theta_index(c.delta0, v, y)];
  return v < y ? f.mul(c.epsilon, th) : th;
}

Matrix vbk_parity_block(const VbkParams& p, const FieldPtr& f, const VbkConstants& c, std::size_t t,
                        std::size_t i) {
  if (t >= p.r() || i >= p.n) throw DimensionError("parity block index out of range");
  return digit_block(f, c, i, t, i / p.delta0, static_cast<unsigned>(i % p.delta0), p.tau());
}

std::vector<std::vector<std::size_t>> goal_partition(std::size_t n, unsigned delta0) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s * delta0 < n; ++s) {
    std::vector<std::size_t> J;
    for (std::size_t i = s * delta0; i < std::min<std::size_t>(n, (s + 1) * delta0); ++i) J.push_back(i);
    out.push_back(J);
  }
  return out;
}

CodePtr build_vbk_with(const VbkParams& p, const FieldPtr& f, const VbkConstants& c, bool allow_small_r) {
  validate_params(p, allow_small_r);
  if (c.theta.size() != p.tau() || c.zeta.size() != p.degrees.key_count() || c.delta0 != p.delta0)
    throw ParameterError("constants do not match parameters");
  auto code = std::make_shared<ArrayCode>();
  code->n = p.n;
  code->k = p.k;
  code->r = p.r();
  code->N = ipow(p.delta0, p.tau());
  code->L = code->N;
  code->alpha = 1;
  code->field = f;
  code->degrees = p.degrees;
  code->constants = c;
  for (std::size_t t = 0; t < code->r; ++t)
    for (std::size_t i = 0; i < p.n; ++i) code->parity.push_back(vbk_parity_block(p, f, c, t, i));
  code->repair.assign(p.n, std::vector<Matrix>(p.degrees.m()));
  code->select.assign(p.n, std::vector<Matrix>(p.degrees.m()));
  code->keys.assign(p.n, {});
  for (std::size_t i = 0; i < p.n; ++i) {
    Matrix v = v_matrix(f, i / p.delta0, static_cast<unsigned>(i % p.delta0), p.delta0, p.tau());
    Matrix vt = v.transpose();
    code->repair[i][0] = v;
    code->select[i][0] = v;
    code->keys[i].assign(code->r, {});
    for (std::size_t t = 0; t < code->r; ++t)
      for (Elem z : c.zeta) code->keys[i][t].push_back(vt.scaled(f->pow(z, t)));
  }
  code->partition = goal_partition(p.n, p.delta0);
  code->goal_round.assign(p.n, -1);
  return code;
}

std::vector<std::vector<std::size_t>> mds_check_sets(std::size_t n, std::size_t r, std::size_t sample,
                                                     std::uint64_t seed, bool* exhaustive) {
  const bool all = binomial(n, r) <= 500;
  if (exhaustive) *exhaustive = all;
  if (all) return subsets(n, r);
  Rng rng(seed);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (out.size() < sample) {
    rng.shuffle(idx);
    std::vector<std::size_t> s(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(r));
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) out.push_back(s);
  }
  return out;
}

std::optional<std::vector<std::size_t>> first_mds_failure(const ArrayCode& code,
                                                          const std::vector<std::vector<std::size_t>>& sets) {
  for (const auto& s : sets)
    if (!nonsingular(erasure_matrix(code, s))) return s;
  return std::nullopt;
}

CodePtr build_vbk(const VbkParams& params, std::uint64_t seed, const VbkOptions& opt) {
  VbkParams p = params;
  if (p.q == 0) p.q = vbk_default_field(p.n, p.delta0);
  validate_params(p, opt.allow_small_r);
  FieldPtr f = build_field(p.q);
  for (std::uint32_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
    VbkConstants c = choose_constants(p, f, seed + attempt);
    CodePtr code = build_vbk_with(p, f, c, opt.allow_small_r);
    if (!opt.validate) return code;
    auto sets = mds_check_sets(p.n, p.r(), opt.mds_sample, seed);
    if (!first_mds_failure(*code, sets)) return code;
  }
  throw ParameterError("no MDS constants found after " + std::to_string(opt.max_attempts) + " attempts");
}

Matrix vbk_projection_closed_form(const ArrayCode& code, std::size_t t, std::size_t j, std::size_t i) {
  if (!code.constants) throw ParameterError("code has no base constants");
  const VbkConstants& c = *code.constants;
  const unsigned s = c.delta0;
  const std::size_t x = j / s, x2 = i / s;
  const unsigned y = static_cast<unsigned>(j % s), y2 = static_cast<unsigned>(i % s);
  const std::size_t width = c.theta.size() - 1;
  if (x == x2) {
    Matrix m = Matrix::identity(code.field, ipow(s, width));
    return m.scaled(code.field->pow(vbk_lambda(*code.field, c, j, y2), t));
  }
  return digit_block(code.field, c, j, t, x < x2 ? x : x - 1, y, width);
}

}  // namespace tmds
