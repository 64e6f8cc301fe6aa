// SPDX-License-Identifier: Apache-2.0
#include "tmds/repair.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tmds {
namespace {

std::string tag(std::size_t a) { return "f" + std::to_string(a); }
std::string tag(const PartRef& p) { return "f" + std::to_string(p.instance) + "[" + std::to_string(p.part) + "]"; }

void check_plan(const ArrayCode& code, const RepairPlan& plan) {
  if (plan.failed >= code.n) throw DimensionError("failed node out of range");
  if (plan.z >= code.degrees.m()) throw ParameterError("degree index out of range");
  const std::size_t d = code.k + code.degrees[plan.z] - 1;
  std::set<std::size_t> h(plan.helpers.begin(), plan.helpers.end());
  if (h.size() != plan.helpers.size() || h.size() != d || h.count(plan.failed) || *h.rbegin() >= code.n)
    throw ParameterError("repair needs " + std::to_string(d) + " distinct helpers other than node " +
                         std::to_string(plan.failed));
}

std::vector<std::size_t> row_support(const Matrix& R) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < R.cols(); ++c)
    for (std::size_t r = 0; r < R.rows(); ++r)
      if (R(r, c)) {
        cols.push_back(c);
        break;
      }
  return cols;
}

void record_downloads(RepairTranscript& tr, const Matrix& R, const std::vector<std::size_t>& helpers) {
  const auto support = row_support(R);
  for (std::size_t j : helpers) {
    tr.downloaded[j] = R.rows();
    tr.accessed[j] = support;
  }
}

// Interference blocks for every j != i and every t.
std::map<std::size_t, std::vector<Matrix>> projections(const ArrayCode& c, std::size_t i, const Matrix& R,
                                                       const Matrix& S) {
  std::map<std::size_t, std::vector<Matrix>> out;
  for (std::size_t j = 0; j < c.n; ++j) {
    if (j == i) continue;
    for (std::size_t t = 0; t < c.r; ++t) out[j].push_back(interference_projection(S, c.A(t, j), R));
  }
  return out;
}

// Coefficient matrix [S A_{t,i} | X_{t,j}, j in D] stacked over t.
Matrix lemma2_matrix(const ArrayCode& c, std::size_t i, const Matrix& S,
                     const std::map<std::size_t, std::vector<Matrix>>& proj, const std::vector<std::size_t>& D) {
  const std::size_t rows = S.rows();
  Matrix M(c.field, c.r * rows, c.L + D.size() * rows);
  for (std::size_t t = 0; t < c.r; ++t) {
    M.set_block(t * rows, 0, S * c.A(t, i));
    for (std::size_t d = 0; d < D.size(); ++d) M.set_block(t * rows, c.L + d * rows, proj.at(D[d])[t]);
  }
  return M;
}

// rhs -= sum_{j in H} X_{t,j} y_j, with y_j sliced at row offset.
void subtract_helpers(const std::map<std::size_t, std::vector<Matrix>>& proj, const std::vector<std::size_t>& H,
                      const std::map<std::size_t, Matrix>& y, std::size_t offset, std::size_t rows, Matrix& acc) {
  for (std::size_t j : H) {
    const auto& X = proj.at(j);
    for (std::size_t t = 0; t < X.size(); ++t) mul_add_block(X[t], 0, 0, rows, rows, y.at(j), offset, acc, t * rows);
  }
}

// Part u of an instance vector of length alpha N: rows beta N + part_row(u, o).
Matrix extract_part(const ArrayCode& code, const Matrix& f, unsigned u) {
  const ArrayCode& base = *code.base;
  const std::size_t Np = base.N / code.degrees.delta0();
  Matrix out(f.field(), base.alpha * Np, f.cols());
  for (std::size_t beta = 0; beta < base.alpha; ++beta)
    for (std::size_t o = 0; o < Np; ++o) std::copy_n(f.row(beta * base.N + code.part_row(u, o)), f.cols(), out.row(beta * Np + o));
  return out;
}

void place_part(const ArrayCode& code, const Matrix& part, unsigned u, std::size_t row0, Matrix& f) {
  const ArrayCode& base = *code.base;
  const std::size_t Np = base.N / code.degrees.delta0();
  for (std::size_t beta = 0; beta < base.alpha; ++beta)
    for (std::size_t o = 0; o < Np; ++o) std::copy_n(part.row(beta * Np + o), part.cols(), f.row(row0 + beta * base.N + code.part_row(u, o)));
}

std::vector<PartRef> sorted_union(const PSchedule& p, std::size_t a, std::size_t u_lo, std::size_t u_hi) {
  std::set<PartRef> s;
  for (std::size_t u = u_lo; u <= u_hi && u < p.parts.size(); ++u)
    if (a < p.parts[u].size()) s.insert(p.parts[u][a].begin(), p.parts[u][a].end());
  return {s.begin(), s.end()};
}

}  // namespace

RepairPlan RepairPlan::first_helpers(const ArrayCode& code, std::size_t failed, std::size_t z) {
  RepairPlan p;
  p.failed = failed;
  p.z = z;
  const std::size_t d = code.k + code.degrees[z] - 1;
  for (std::size_t j = 0; j < code.n && p.helpers.size() < d; ++j)
    if (j != failed) p.helpers.push_back(j);
  return p;
}

std::vector<std::size_t> RepairPlan::excluded(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j)
    if (j != failed && std::find(helpers.begin(), helpers.end(), j) == helpers.end()) out.push_back(j);
  return out;
}

std::size_t RepairTranscript::total_downloaded() const {
  std::size_t s = 0;
  for (const auto& [j, c] : downloaded) s += c;
  return s;
}

std::size_t RepairTranscript::total_accessed() const {
  std::size_t s = 0;
  for (const auto& [j, c] : accessed) s += c.size();
  return s;
}

Matrix interference_projection(const Matrix& S, const Matrix& A, const Matrix& R) {
  const Matrix SA = S * A;
  const auto piv = pivot_columns(R);
  if (piv.size() != R.rows()) throw ParameterError("interference_projection: repair matrix not full row rank");
  const Matrix X = SA.select_cols(piv) * inverse(R.select_cols(piv));
  if (X * R != SA) throw ParameterError("interference_projection: S A is not in the row space of R");
  return X;
}

GnSystem gn_system(const ArrayCode& base, std::size_t i, std::size_t z, const std::vector<std::size_t>& D) {
  if (!base.has_keys(i)) throw ParameterError("node " + std::to_string(i) + " has no key matrices");
  const DegreeSet& deg = base.degrees;
  if (z >= deg.m()) throw ParameterError("degree index out of range");
  if (D.size() != base.r - deg[z])
    throw ParameterError("excluded set must have r - delta_z = " + std::to_string(base.r - deg[z]) + " nodes");
  const Matrix& R = base.repair[i][0];
  const Matrix& S = base.select[i][0];
  const std::size_t rows = S.rows();
  const std::size_t keys = deg[z] - deg.delta0();
  GnSystem g;
  g.M = Matrix(base.field, base.r * rows, base.L + (D.size() + keys) * rows);
  for (std::size_t t = 0; t < base.r; ++t) {
    g.M.set_block(t * rows, 0, S * base.A(t, i));
    for (std::size_t d = 0; d < D.size(); ++d)
      g.M.set_block(t * rows, base.L + d * rows, interference_projection(S, base.A(t, D[d]), R));
    for (std::size_t v = 0; v < keys; ++v)
      g.M.set_block(t * rows, base.L + (D.size() + v) * rows, S * base.keys[i][t][v]);
  }
  g.gamma.assign(deg.m(), {});
  for (std::size_t u = 1; u < deg.m(); ++u) {
    const std::size_t v0 = deg[u - 1] - deg.delta0(), width = deg[u] - deg[u - 1];
    Matrix G(base.field, base.r * rows, width * rows);
    for (std::size_t t = 0; t < base.r; ++t)
      for (std::size_t e = 0; e < width; ++e) G.set_block(t * rows, e * rows, S * base.keys[i][t][v0 + e]);
    g.gamma[u] = std::move(G);
  }
  return g;
}

std::vector<SolveStep> gn_schedule(const DegreeSet& degrees, std::size_t z) {
  const PSchedule p = build_pschedule(degrees);
  std::vector<SolveStep> steps;
  for (std::size_t w = z; w < degrees.m(); ++w)
    for (std::size_t a = p.l[w]; a-- > p.l[w + 1];) {
      SolveStep s;
      s.w = w;
      s.a = a;
      s.unknown.push_back(tag(a));
      s.solved.push_back(tag(a));
      for (const auto& e : sorted_union(p, a, 1, w)) s.unknown.push_back(tag(e));
      for (const auto& e : sorted_union(p, a, z + 1, w)) s.eliminated.push_back(tag(e));
      for (const auto& e : sorted_union(p, a, 1, z)) s.solved.push_back(tag(e));
      steps.push_back(std::move(s));
    }
  return steps;
}

RepairResult dense_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan) {
  check_plan(code, plan);
  const std::size_t i = plan.failed;
  if (!code.supports(i, plan.z)) throw ParameterError("degree not supported for node " + std::to_string(i));
  const Matrix& R = code.repair[i][plan.z];
  const Matrix& S = code.select[i][plan.z];
  const auto D = plan.excluded(code.n);
  const auto proj = projections(code, i, R, S);
  const Matrix inv = inverse(lemma2_matrix(code, i, S, proj, D));

  RepairResult res;
  res.transcript.method = "dense";
  record_downloads(res.transcript, R, plan.helpers);
  std::map<std::size_t, Matrix> y;
  for (std::size_t j : plan.helpers) y[j] = R * word.at(j);
  const std::size_t Scols = word.at(plan.helpers.front()).cols();
  Matrix acc(code.field, code.r * R.rows(), Scols);
  subtract_helpers(proj, plan.helpers, y, 0, R.rows(), acc);
  res.fragment = (inv * acc.negated()).block(0, 0, code.L, Scols);
  return res;
}

RepairResult instancewise_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan) {
  check_plan(code, plan);
  if (!code.base) throw ParameterError("instancewise repair needs a lifted code");
  const ArrayCode& base = *code.base;
  const std::size_t i = plan.failed, z = plan.z;
  const bool self_goal = code.is_goal(i);
  if (self_goal && z != 0) throw ParameterError("instancewise repair of a goal node only at the smallest degree");
  if (!self_goal && !base.supports(i, z)) throw ParameterError("degree not supported for node " + std::to_string(i));
  const Matrix& Rb = base.repair[i][z];
  const Matrix& Sb = base.select[i][z];
  const Matrix& R = code.repair[i][z];
  const std::size_t rows = Rb.rows(), Lb = base.L;
  const auto l = lvalues(code.degrees);
  const auto D = plan.excluded(code.n);
  const auto proj = projections(base, i, Rb, Sb);
  const Matrix inv = inverse(lemma2_matrix(base, i, Sb, proj, D));
  const std::size_t Scols = word.at(plan.helpers.front()).cols();

  RepairResult res;
  res.transcript.method = self_goal ? "instancewise" : "remainder";
  record_downloads(res.transcript, R, plan.helpers);
  // Rb g_j^{(b)} stacked over b: downloaded for helpers, solved for D, computed for i.
  std::map<std::size_t, Matrix> y;
  for (std::size_t j : plan.helpers) y[j] = R * word.at(j);
  for (std::size_t j : D) y[j] = Matrix(code.field, l[0] * rows, Scols);
  y[i] = Matrix(code.field, l[0] * rows, Scols);
  Matrix f(code.field, code.L, Scols);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, Matrix> xcache;

  for (std::size_t w = 0; w < code.degrees.m(); ++w)
    for (std::size_t a = l[w + 1]; a < l[w]; ++a) {
      Matrix acc(code.field, code.r * rows, Scols);
      subtract_helpers(proj, plan.helpers, y, a * rows, rows, acc);
      for (std::size_t j : code.goal)
        for (std::size_t t = 0; t < code.r; ++t)
          for (std::size_t b = l[w]; b < l[0]; ++b) {
            const Matrix blk = code.A(t, j).block(a * Lb, b * Lb, Lb, Lb);
            if (blk.is_zero()) continue;
            if (j == i) {
              mul_add_block(Sb * blk, 0, 0, rows, Lb, f, b * Lb, acc, t * rows);
              continue;
            }
            auto key = std::make_tuple(t, j, a, b);
            auto it = xcache.find(key);
            if (it == xcache.end()) it = xcache.emplace(key, interference_projection(Sb, blk, Rb)).first;
            mul_add_block(it->second, 0, 0, rows, rows, y.at(j), b * rows, acc, t * rows);
          }
      const Matrix x = inv * acc.negated();
      f.set_block(a * Lb, 0, x.block(0, 0, Lb, Scols));
      y[i].set_block(a * rows, 0, Rb * x.block(0, 0, Lb, Scols));
      for (std::size_t d = 0; d < D.size(); ++d) y[D[d]].set_block(a * rows, 0, x.block(Lb + d * rows, 0, rows, Scols));
      SolveStep s;
      s.w = w;
      s.a = a;
      s.unknown = s.solved = {tag(a)};
      res.transcript.solve_order.push_back(std::move(s));
    }
  res.fragment = std::move(f);
  return res;
}

RepairResult rn_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan) {
  if (code.is_goal(plan.failed)) throw ParameterError("node " + std::to_string(plan.failed) + " is a goal node");
  return instancewise_repair(code, word, plan);
}

RepairResult gn_repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan) {
  check_plan(code, plan);
  const std::size_t i = plan.failed, z = plan.z;
  if (!code.base || !code.is_goal(i)) throw ParameterError("node " + std::to_string(i) + " is not a goal node");
  const ArrayCode& base = *code.base;
  const Matrix& Rb = base.repair[i][0];
  const Matrix& Sb = base.select[i][0];
  const Matrix& R = code.repair[i][z];
  const std::size_t rows = Rb.rows(), Lb = base.L;
  const PSchedule sched = build_pschedule(code.degrees);
  const auto& l = sched.l;
  const auto D = plan.excluded(code.n);
  const GnSystem sys = gn_system(base, i, z, D);
  const Matrix inv = inverse(sys.M);
  std::map<std::size_t, std::vector<Matrix>> proj;
  for (std::size_t j : plan.helpers)
    for (std::size_t t = 0; t < code.r; ++t) proj[j].push_back(interference_projection(Sb, base.A(t, j), Rb));
  const std::size_t Scols = word.at(plan.helpers.front()).cols();

  RepairResult res;
  res.transcript.method = "goal";
  record_downloads(res.transcript, R, plan.helpers);
  std::map<std::size_t, Matrix> y;
  for (std::size_t j : plan.helpers) y[j] = R * word.at(j);

  std::map<PartRef, Matrix> known;
  Matrix f(code.field, code.L, Scols);
  for (SolveStep step : gn_schedule(code.degrees, z)) {
    const std::size_t a = step.a, w = step.w;
    Matrix acc(code.field, code.r * rows, Scols);
    subtract_helpers(proj, plan.helpers, y, a * rows, rows, acc);
    for (std::size_t u = z + 1; u <= w; ++u) {
      const auto& part = sched.parts[u][a];
      for (std::size_t e = 0; e < part.size(); ++e) {
        auto it = known.find(part[e]);
        if (it == known.end()) throw ParameterError("goal repair: " + tag(part[e]) + " needed before it was solved");
        mul_add_block(sys.gamma[u], 0, e * rows, code.r * rows, rows, it->second, 0, acc, 0);
      }
    }
    const Matrix x = inv * acc.negated();
    const Matrix fa = x.block(0, 0, Lb, Scols);
    f.set_block(a * Lb, 0, fa);
    for (unsigned u = 0; u < code.degrees.delta0(); ++u)
      known[{a, u}] = extract_part(code, fa, u);
    std::size_t off = Lb + D.size() * rows;
    for (std::size_t u = 1; u <= z; ++u)
      for (const PartRef& e : sched.parts[u][a]) {
        known[e] = x.block(off, 0, rows, Scols);
        off += rows;
      }
    res.transcript.solve_order.push_back(std::move(step));
  }
  for (std::size_t b = l[z]; b < l[0]; ++b)
    for (unsigned u = 0; u < code.degrees.delta0(); ++u) {
      auto it = known.find({b, u});
      if (it == known.end()) throw ParameterError("goal repair: " + tag(PartRef{b, u}) + " never recovered");
      place_part(code, it->second, u, b * Lb, f);
    }
  res.fragment = std::move(f);
  return res;
}

RepairResult repair(const ArrayCode& code, const Fragments& word, const RepairPlan& plan) {
  if (code.is_goal(plan.failed)) return gn_repair(code, word, plan);
  if (code.base) return rn_repair(code, word, plan);
  return dense_repair(code, word, plan);
}

std::string AuditReport::summary() const {
  std::ostringstream os;
  os << downloaded << "/" << bound << " symbols, accessed " << accessed << ", optimal repair: "
     << (optimal_repair ? "yes" : "no") << ", optimal access: " << (optimal_access ? "yes" : "no");
  return os.str();
}

AuditReport transcript_audit(const RepairTranscript& t, const ArrayCode& code, const RepairPlan& plan) {
  AuditReport r;
  const std::size_t d = plan.helpers.size();
  const std::size_t delta = d + 1 - code.k;
  r.downloaded = t.total_downloaded();
  r.accessed = t.total_accessed();
  r.bound = d * code.L / delta;
  r.optimal_repair = (d * code.L) % delta == 0 && r.downloaded == r.bound;
  r.optimal_access = r.accessed == r.downloaded;
  r.above_bound = r.downloaded * delta >= d * code.L;
  return r;
}

std::size_t degree_index_for(const ArrayCode& code, std::size_t d) {
  if (d < code.k) throw ParameterError("need at least k helpers");
  const auto z = code.degrees.index_of(static_cast<unsigned>(d - code.k + 1));
  if (!z)
    throw ParameterError("degree d - k + 1 = " + std::to_string(d - code.k + 1) + " is not in the degree set");
  return *z;
}

}  // namespace tmds
