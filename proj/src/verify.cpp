// SPDX-License-Identifier: Apache-2.0
#include "tmds/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tmds/codec.hpp"
#include "tmds/indexing.hpp"
#include "tmds/repair.hpp"

namespace tmds {
namespace {

// k-subsets of `universe`: all of them, or `count` distinct random ones.
std::vector<std::vector<std::size_t>> choose_sets(const std::vector<std::size_t>& universe, std::size_t k,
                                                  const CheckOptions& opt, Rng& rng, bool* exhaustive) {
  const std::uint64_t total = binomial(universe.size(), k);
  std::vector<std::vector<std::size_t>> out;
  if (!opt.force_sample && total <= opt.exhaustive_limit) {
    *exhaustive = true;
    for (const auto& s : subsets(universe.size(), k)) {
      std::vector<std::size_t> m;
      for (std::size_t x : s) m.push_back(universe[x]);
      out.push_back(std::move(m));
    }
    return out;
  }
  *exhaustive = false;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> idx = universe;
  const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(opt.sample, total));
  while (out.size() < want) {
    rng.shuffle(idx);
    std::vector<std::size_t> s(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> others(std::size_t n, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j)
    if (j != i) out.push_back(j);
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

void absorb(PropertyReport& into, const PropertyReport& part) {
  into.checked += part.checked;
  into.total += part.total;
  into.exhaustive = into.exhaustive && part.exhaustive;
  if (!part.pass) into.fail(part.counterexample, part.property + ": " + part.detail);
}

bool in_block(const std::vector<std::size_t>& block, std::size_t i) {
  return std::find(block.begin(), block.end(), i) != block.end();
}

}  // namespace

std::string PropertyReport::scope() const {
  if (exhaustive) return "exhaustive " + std::to_string(checked);
  return "sampled " + std::to_string(checked) + " of " + std::to_string(total);
}

void PropertyReport::fail(std::vector<std::size_t> where, std::string why) {
  if (!pass) return;
  pass = false;
  counterexample = std::move(where);
  detail = std::move(why);
}

Fragments random_codeword(const ArrayCode& code, std::size_t stripes, std::uint64_t seed) {
  Rng rng(seed);
  Fragments data;
  for (std::size_t i = 0; i < code.k; ++i) {
    Matrix m(code.field, code.L, stripes);
    for (Elem& e : m.data()) e = static_cast<Elem>(rng.below(code.field->q()));
    data.push_back(std::move(m));
  }
  return encode(code, data);
}

PropertyReport check_mds(const ArrayCode& code, const CheckOptions& opt) {
  PropertyReport rep;
  rep.property = "mds";
  Rng rng(opt.seed);
  std::vector<std::size_t> all(code.n);
  for (std::size_t i = 0; i < code.n; ++i) all[i] = i;
  const auto sets = choose_sets(all, code.r, opt, rng, &rep.exhaustive);
  rep.total = binomial(code.n, code.r);
  for (const auto& s : sets) {
    ++rep.checked;
    if (!nonsingular(erasure_matrix(code, s))) {
      rep.fail(s, "erasure block singular for erased set {" + join(s) + "}");
      break;
    }
  }
  return rep;
}

PropertyReport check_c1(const ArrayCode& code, const std::vector<std::size_t>& block) {
  PropertyReport rep;
  rep.property = "c1";
  for (std::size_t i : block) {
    if (!code.has_keys(i)) {
      rep.fail({i}, "node " + std::to_string(i) + " has no key matrices");
      return rep;
    }
    for (std::size_t j : block) {
      if (i == j) continue;
      if (!code.supports(j, 0)) {
        rep.fail({j}, "node " + std::to_string(j) + " has no select matrix");
        return rep;
      }
      for (std::size_t t = 0; t < code.r; ++t)
        for (std::size_t v = 0; v < code.keys[i][t].size(); ++v) {
          ++rep.checked;
          if (!(code.select[j][0] * code.keys[i][t][v]).is_zero())
            rep.fail({i, j, t, v}, "S_j K_{t,i,v} != 0");
        }
    }
  }
  rep.total = rep.checked;
  return rep;
}

PropertyReport check_c2(const ArrayCode& code, const std::vector<std::size_t>& block, const CheckOptions& opt) {
  PropertyReport rep;
  rep.property = "c2";
  Rng rng(opt.seed);
  const std::size_t rows = code.N * code.alpha / code.degrees.delta0();
  for (std::size_t i : block)
    for (std::size_t z = 1; z < code.degrees.m(); ++z) {
      const std::size_t dsize = code.r - code.degrees[z];
      bool exh = true;
      const auto sets = choose_sets(others(code.n, i), dsize, opt, rng, &exh);
      rep.exhaustive = rep.exhaustive && exh;
      rep.total += binomial(code.n - 1, dsize);
      for (const auto& D : sets) {
        ++rep.checked;
        GnSystem g;
        try {
          g = gn_system(code, i, z, D);
        } catch (const std::exception& e) {
          rep.fail({i, z}, e.what());
          return rep;
        }
        // With delta_z = r the excluded set is empty and the key blocks fill
        // the remaining r - delta_0 block columns.
        if (g.M.cols() != code.L + (dsize + code.degrees[z] - code.degrees.delta0()) * rows ||
            g.M.rows() != g.M.cols()) {
          rep.fail({i, z}, "M_{i,D} is not square");
          return rep;
        }
        if (!nonsingular(g.M)) {
          std::vector<std::size_t> where{i, z};
          where.insert(where.end(), D.begin(), D.end());
          rep.fail(where, "M singular for node " + std::to_string(i) + ", z=" + std::to_string(z) + ", D={" +
                              join(D) + "}");
          return rep;
        }
      }
    }
  return rep;
}

PropertyReport check_c3(const ArrayCode& code, const std::vector<std::size_t>& block, std::size_t z,
                        PartSplit split) {
  PropertyReport rep;
  rep.property = "c3";
  const unsigned d0 = code.degrees.delta0();
  const std::size_t Np = code.N / d0;
  std::size_t width = 0;
  while (ipow(d0, width) < code.N) ++width;
  std::vector<Matrix> parts;
  for (unsigned u = 0; u < d0; ++u) {
    if (split == PartSplit::Contiguous) {
      parts.push_back(phi_matrix(code.field, code.alpha, u, Np, d0));
    } else {
      if (ipow(d0, width) != code.N) throw ParameterError("GoalAxis split needs N to be a power of delta_0");
      parts.push_back(blkdiag_repeat(v_matrix(code.field, block.front() / d0, u, d0, width), code.alpha));
    }
  }
  for (std::size_t i = 0; i < code.n; ++i) {
    if (in_block(block, i) || !code.supports(i, z)) continue;
    const Matrix& R = code.repair[i][z];
    const Matrix& S = code.select[i][z];
    for (std::size_t j : block) {
      if (!code.has_keys(j)) {
        rep.fail({j}, "node " + std::to_string(j) + " has no key matrices");
        return rep;
      }
      for (std::size_t t = 0; t < code.r; ++t)
        for (std::size_t v = 0; v < code.keys[j][t].size(); ++v) {
          const Matrix SK = S * code.keys[j][t][v];
          for (unsigned u = 0; u < d0; ++u) {
            ++rep.checked;
            if (rank(vstack({R, SK * parts[u]})) != R.rows())
              rep.fail({i, j, t, v, u}, "rank exceeds the rows of R_i for i=" + std::to_string(i) +
                                            ", j=" + std::to_string(j) + ", t=" + std::to_string(t) +
                                            ", v=" + std::to_string(v) + ", u=" + std::to_string(u));
          }
        }
    }
  }
  rep.total = rep.checked;
  return rep;
}

std::vector<PropertyReport> tmds_suite(const ArrayCode& code, const CheckOptions& opt) {
  std::vector<PropertyReport> out;
  PropertyReport pre;
  pre.property = "tmds.preconditions";
  ++pre.checked;
  if (code.partition.empty()) pre.fail({}, "no goal partition");
  for (std::size_t i = 0; i < code.n && pre.pass; ++i)
    if (!code.has_keys(i)) pre.fail({i}, "no key matrices on node " + std::to_string(i));
  if (pre.pass && code.r <= code.degrees.delta0())
    pre.fail({code.r}, "r = " + std::to_string(code.r) + " must exceed delta_0 = " +
                           std::to_string(code.degrees.delta0()));
  pre.total = pre.checked;
  out.push_back(pre);
  if (!pre.pass) return out;

  out.push_back(check_mds(code, opt));

  PropertyReport rep;
  rep.property = "tmds.base_repair";
  const Fragments word = random_codeword(code, 1, opt.seed);
  for (std::size_t i = 0; i < code.n; ++i) {
    ++rep.checked;
    const RepairPlan plan = RepairPlan::first_helpers(code, i, 0);
    try {
      const RepairResult res = dense_repair(code, word, plan);
      const AuditReport a = transcript_audit(res.transcript, code, plan);
      if (res.fragment != word[i]) rep.fail({i}, "wrong fragment for node " + std::to_string(i));
      else if (!a.optimal_repair || !a.optimal_access) rep.fail({i}, a.summary());
    } catch (const std::exception& e) {
      rep.fail({i}, e.what());
    }
  }
  rep.total = rep.checked;
  out.push_back(rep);

  for (std::size_t b = 0; b < code.partition.size(); ++b) {
    const auto& J = code.partition[b];
    for (PropertyReport r : {check_c1(code, J), check_c2(code, J, opt), check_c3(code, J, 0)}) {
      r.property += "[J" + std::to_string(b) + "]";
      out.push_back(std::move(r));
    }
  }
  return out;
}

PropertyReport check_tmds(const ArrayCode& code, const CheckOptions& opt) {
  PropertyReport rep;
  rep.property = "tmds";
  for (const auto& r : tmds_suite(code, opt)) absorb(rep, r);
  return rep;
}

PropertyReport check_repair_bound(const ArrayCode& code, const CheckOptions& opt) {
  PropertyReport rep;
  rep.property = "repair_bound";
  Rng rng(opt.seed);
  const Fragments word = random_codeword(code, 1, opt.seed);
  for (std::size_t i = 0; i < code.n; ++i)
    for (std::size_t z = 0; z < code.degrees.m(); ++z) {
      if (!code.supports(i, z)) continue;
      const std::size_t d = code.k + code.degrees[z] - 1;
      bool exh = true;
      const auto sets = choose_sets(others(code.n, i), d, opt, rng, &exh);
      rep.exhaustive = rep.exhaustive && exh;
      rep.total += binomial(code.n - 1, d);
      for (const auto& H : sets) {
        ++rep.checked;
        RepairPlan plan{i, z, H};
        std::vector<std::size_t> where{i, z};
        where.insert(where.end(), H.begin(), H.end());
        try {
          const RepairResult res = repair(code, word, plan);
          const AuditReport a = transcript_audit(res.transcript, code, plan);
          if (res.fragment != word[i]) rep.fail(where, "node " + std::to_string(i) + " recovered incorrectly");
          else if (!a.above_bound) rep.fail(where, "download below the cut-set bound: " + a.summary());
          else if (!a.optimal_repair || !a.optimal_access)
            rep.fail(where, "node " + std::to_string(i) + " d=" + std::to_string(d) + ": " + a.summary());
        } catch (const std::exception& e) {
          rep.fail(where, e.what());
        }
        if (!rep.pass) return rep;
      }
    }
  return rep;
}

PropertyReport check_lemma5(unsigned s, std::size_t w) {
  PropertyReport rep;
  rep.property = "selector_identities";
  if (s < 2 || s > 4 || w < 2 || w > 4) throw ParameterError("check_lemma5 needs s in [2,4] and w in [2,4]");
  const FieldPtr f = build_field(16);
  const std::size_t Np = ipow(s, w - 1);
  const Matrix I = Matrix::identity(f, Np);
  for (std::size_t x = 0; x < w; ++x)
    for (unsigned u = 0; u < s; ++u)
      for (unsigned v = 0; v < s; ++v) {
        ++rep.checked;
        const Matrix p = v_matrix(f, x, u, s, w) * v_matrix(f, x, v, s, w).transpose();
        if (u == v ? p != I : !p.is_zero()) rep.fail({x, u, v}, "orthogonality fails at x=" + std::to_string(x));
      }

  std::size_t failures = 0, failures_low = 0, no_solution = 0;
  std::vector<std::size_t> first;
  for (std::size_t x = 0; x < w; ++x)
    for (std::size_t x2 = 0; x2 < w; ++x2) {
      if (x == x2) continue;
      for (unsigned u = 0; u < s; ++u) {
        const Matrix V = v_matrix(f, x, u, s, w);
        for (unsigned v = 0; v < s; ++v)
          for (unsigned h = 0; h < s; ++h) {
            ++rep.checked;
            const Matrix lhs = V * (v_matrix(f, x2, v, s, w).transpose() * delta_matrix(f, h, Np, s));
            const Matrix T = t_matrix(f, x, x2, v, h, s, w);
            bool ok = lhs == T * V;
            const std::size_t pos = x < x2 ? x2 - 1 : x2;
            for (std::size_t a = 0; a < Np && ok; ++a)
              if (digit(a, s, pos) != v)
                for (std::size_t c = 0; c < Np; ++c) ok = ok && T(a, c) == 0;
            if (ok) continue;
            ++failures;
            if (x2 < x) ++failures_low;
            if (rank(vstack({V, lhs})) > V.rows()) ++no_solution;
            if (first.empty()) first = {x, x2, u, v, h};
          }
      }
    }
  rep.total = rep.checked;
  if (failures) {
    std::ostringstream os;
    os << "commutation fails for " << failures << " tuples (" << failures_low << " with x2 < x); " << no_solution
       << " of them admit no T at all since the stacked rank exceeds " << Np << "; first (x,x2,u,v,h)=(" << join(first)
       << ")";
    rep.fail(first, os.str());
  }
  return rep;
}

PropertyReport check_lemma5_axis(unsigned s, std::size_t w) {
  PropertyReport rep;
  rep.property = "selector_commutation_axis_parts";
  if (s < 2 || s > 4 || w < 2 || w > 4) throw ParameterError("check_lemma5_axis needs s in [2,4] and w in [2,4]");
  const FieldPtr f = build_field(16);
  for (std::size_t x = 0; x < w; ++x)
    for (std::size_t x2 = 0; x2 < w; ++x2) {
      if (x == x2) continue;
      for (unsigned u = 0; u < s; ++u) {
        const Matrix V = v_matrix(f, x, u, s, w);
        const Matrix Vt = V.transpose();
        for (unsigned v = 0; v < s; ++v)
          for (unsigned h = 0; h < s; ++h) {
            ++rep.checked;
            const Matrix lhs = V * (v_matrix(f, x2, v, s, w).transpose() * v_matrix(f, x2, h, s, w));
            // Rows of V are orthonormal, so T = lhs V^T whenever a T exists.
            if ((lhs * Vt) * V != lhs) rep.fail({x, x2, u, v, h}, "no commuting T");
          }
      }
    }
  rep.total = rep.checked;
  return rep;
}

PropertyReport check_projection_closed_form(const ArrayCode& code) {
  PropertyReport rep;
  rep.property = "projection_closed_form";
  for (std::size_t i = 0; i < code.n; ++i)
    for (std::size_t j = 0; j < code.n; ++j) {
      if (i == j) continue;
      for (std::size_t t = 0; t < code.r; ++t) {
        ++rep.checked;
        const Matrix X = interference_projection(code.select[i][0], code.A(t, j), code.repair[i][0]);
        if (X != vbk_projection_closed_form(code, t, j, i)) rep.fail({i, j, t}, "closed form mismatch");
      }
    }
  rep.total = rep.checked;
  return rep;
}

CodePtr fixture_zeroed_parity(const ArrayCode& code, std::size_t t, std::size_t i) {
  auto c = std::make_shared<ArrayCode>(code);
  c->A(t, i) = Matrix(code.field, code.L, code.L);
  return c;
}

CodePtr fixture_without_keys(const ArrayCode& code) {
  auto c = std::make_shared<ArrayCode>(code);
  c->keys.assign(code.n, {});
  return c;
}

CodePtr fixture_zeta_collision(const VbkParams& params, std::uint64_t seed) {
  VbkParams p = params;
  if (p.q == 0) p.q = vbk_default_field(p.n, p.delta0);
  const FieldPtr f = build_field(p.q);
  VbkConstants c = choose_constants(p, f, seed);
  if (c.zeta.empty()) throw ParameterError("degree set has no key constants to collide");
  c.zeta[0] = vbk_lambda(*f, c, 0, 0);
  return build_vbk_with(p, f, c);
}

CodePtr fixture_small_r() {
  VbkParams p;
  p.n = 4;
  p.k = 2;
  p.delta0 = 2;
  p.degrees = DegreeSet::make({2}, 2);
  VbkOptions opt;
  opt.allow_small_r = true;
  return build_vbk(p, 1, opt);
}

std::string render_text(const std::vector<PropertyReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.pass ? "PASS " : "FAIL ") << r.property << " (" << r.scope() << ")";
    if (!r.pass) os << " counterexample [" << join(r.counterexample) << "]: " << r.detail;
    os << "\n";
  }
  return os.str();
}

std::string render_json(const std::vector<PropertyReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    nlohmann::json j{{"property", r.property},       {"scope", r.exhaustive ? "exhaustive" : "sampled"},
                     {"checked", r.checked},         {"total", r.total},
                     {"verdict", r.pass ? "pass" : "fail"}, {"counterexample", r.counterexample},
                     {"detail", r.detail}};
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace tmds
