// SPDX-License-Identifier: Apache-2.0
#include "tmds/transform.hpp"

#include <algorithm>
#include <set>

#include "tmds/indexing.hpp"

namespace tmds {

std::size_t PSchedule::band(std::size_t a) const {
  for (std::size_t w = 0; w + 1 < l.size(); ++w)
    if (a >= l[w + 1] && a < l[w]) return w;
  throw DimensionError("instance " + std::to_string(a) + " outside [0, l_0)");
}

PSchedule build_pschedule(const DegreeSet& degrees) {
  PSchedule p;
  p.degrees = degrees;
  p.l = lvalues(degrees);
  const std::size_t m = degrees.m();
  const unsigned d0 = degrees.delta0();
  p.sets.assign(m, {});
  p.parts.assign(m, {});
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t a = p.l[j]; a < p.l[j - 1]; ++a)
      for (unsigned u = 0; u < d0; ++u) p.sets[j].push_back({a, u});

  auto split = [&](std::size_t j) {
    auto& s = p.sets[j];
    std::sort(s.begin(), s.end());
    const std::size_t count = p.l[j];
    if (count == 0 || s.size() % count)
      throw ParameterError("P-set " + std::to_string(j) + " of size " + std::to_string(s.size()) +
                           " does not split into " + std::to_string(count) + " parts");
    const std::size_t size = s.size() / count;
    p.parts[j].assign(count, {});
    for (std::size_t a = 0; a < count; ++a)
      p.parts[j][a].assign(s.begin() + static_cast<std::ptrdiff_t>(a * size),
                           s.begin() + static_cast<std::ptrdiff_t>((a + 1) * size));
  };

  if (m >= 2) split(1);
  for (std::size_t j = 2; j < m; ++j) {
    for (std::size_t a = p.l[j]; a < p.l[j - 1]; ++a)
      for (std::size_t jj = 1; jj < j; ++jj)
        p.sets[j].insert(p.sets[j].end(), p.parts[jj][a].begin(), p.parts[jj][a].end());
    split(j);
  }
  return p;
}

std::string check_property1(const PSchedule& p) {
  const std::size_t m = p.degrees.m();
  const unsigned d0 = p.degrees.delta0();
  auto band_set = [&](std::size_t lo, std::size_t hi) {
    std::set<PartRef> out;
    for (std::size_t a = lo; a < hi; ++a)
      for (unsigned u = 0; u < d0; ++u) out.insert({a, u});
    return out;
  };
  for (std::size_t j = 1; j < m; ++j) {
    // P3
    const std::size_t width = p.degrees[j] - p.degrees[j - 1];
    if (std::set<PartRef>(p.sets[j].begin(), p.sets[j].end()).size() != p.sets[j].size())
      return "P3: P_" + std::to_string(j) + " has repeated elements";
    if (p.sets[j].size() != width * p.l[j]) return "P3: |P_" + std::to_string(j) + "| != (d_j - d_{j-1}) l_j";
    for (std::size_t a = 0; a < p.l[j]; ++a)
      if (p.parts[j][a].size() != width)
        return "P3: |P_" + std::to_string(j) + "^(" + std::to_string(a) + ")| != d_j - d_{j-1}";
    // P1
    std::set<PartRef> sets_union, parts_union;
    for (std::size_t jj = 1; jj <= j; ++jj) {
      sets_union.insert(p.sets[jj].begin(), p.sets[jj].end());
      for (std::size_t a = 0; a < p.l[j]; ++a) parts_union.insert(p.parts[jj][a].begin(), p.parts[jj][a].end());
    }
    const auto expect = band_set(p.l[j], p.l[0]);
    if (sets_union != expect) return "P1: union of P_1..P_" + std::to_string(j) + " mismatch";
    if (parts_union != expect) return "P1: union of partitions up to " + std::to_string(j) + " mismatch";
    // P2
    if (j >= 2) {
      for (std::size_t z = 1; z < j; ++z) {
        auto allowed = band_set(p.l[j], p.l[z]);
        for (std::size_t a = p.l[j]; a < p.l[z]; ++a)
          for (std::size_t jj = 1; jj <= z; ++jj) allowed.insert(p.parts[jj][a].begin(), p.parts[jj][a].end());
        for (const PartRef& e : p.sets[j])
          if (!allowed.count(e))
            return "P2: P_" + std::to_string(j) + " element outside the bound for z=" + std::to_string(z);
      }
    }
  }
  return {};
}

namespace {

void check_goal(const ArrayCode& base, const std::vector<std::size_t>& goal) {
  if (goal.empty()) return;
  const std::vector<std::size_t>* block = nullptr;
  for (const auto& J : base.partition)
    if (std::find(J.begin(), J.end(), goal.front()) != J.end()) block = &J;
  if (!block) throw ParameterError("goal node " + std::to_string(goal.front()) + " is in no partition block");
  for (std::size_t i : goal) {
    if (std::find(block->begin(), block->end(), i) == block->end())
      throw ParameterError("goal set spans several partition blocks");
    if (!base.has_keys(i) || base.keys[i].size() != base.r ||
        base.keys[i][0].size() != base.degrees.key_count())
      throw ParameterError("goal node " + std::to_string(i) + " has no key matrices");
    if (!base.supports(i, 0)) throw ParameterError("goal node " + std::to_string(i) + " lacks base repair");
  }
  if (std::set<std::size_t>(goal.begin(), goal.end()).size() != goal.size())
    throw ParameterError("goal set has repeated nodes");
}

// Adds K_{t,i,v} Phi_{alpha,u} into out at (row0, instance b).
void scatter_key(const ArrayCode& base, const Matrix& key, const std::vector<std::size_t>& part_rows,
                 std::size_t row0, std::size_t b, unsigned u, Matrix& out) {
  const std::size_t N = base.N, Np = base.N / base.degrees.delta0();
  const Field& f = *base.field;
  for (std::size_t r = 0; r < key.rows(); ++r) {
    const Elem* kr = key.row(r);
    Elem* dst = out.row(row0 + r);
    for (std::size_t beta = 0; beta < base.alpha; ++beta)
      for (std::size_t o = 0; o < Np; ++o) {
        const Elem v = kr[beta * Np + o];
        if (!v) continue;
        const std::size_t pos = part_rows.empty() ? u * Np + o : part_rows[u * Np + o];
        Elem& cell = dst[b * base.L + beta * N + pos];
        cell = f.add(cell, v);
      }
  }
}

void add_appended(const ArrayCode& base, const PSchedule& sched, const std::vector<std::size_t>& part_rows,
                  std::size_t t, std::size_t i, std::size_t a, std::size_t row0, Matrix& out) {
  const std::size_t w = sched.band(a);
  for (std::size_t j = 1; j <= w; ++j) {
    const auto& part = sched.parts[j][a];
    const std::size_t v0 = sched.degrees[j - 1] - sched.degrees.delta0();
    for (std::size_t e = 0; e < part.size(); ++e)
      scatter_key(base, base.keys[i][t][v0 + e], part_rows, row0, part[e].instance, part[e].part, out);
  }
}

}  // namespace

Matrix appended_data_matrix(const ArrayCode& base, const PSchedule& sched, std::size_t t, std::size_t i,
                            std::size_t a, const std::vector<std::size_t>& part_rows) {
  if (a >= sched.l[0]) throw DimensionError("instance out of range");
  Matrix out(base.field, base.L, sched.l[0] * base.L);
  if (!base.has_keys(i)) throw ParameterError("node has no key matrices");
  add_appended(base, sched, part_rows, t, i, a, 0, out);
  return out;
}

std::vector<std::size_t> axis_part_rows(unsigned delta0, std::size_t w, std::size_t axis) {
  if (w == 0 || axis >= w) throw DimensionError("axis outside the index width");
  const std::size_t Np = ipow(delta0, w - 1);
  std::vector<std::size_t> out(Np * delta0);
  for (unsigned u = 0; u < delta0; ++u)
    for (std::size_t o = 0; o < Np; ++o) out[u * Np + o] = phi_index(o, delta0, axis, u);
  return out;
}

CodePtr lift_code(const CodePtr& basep, const std::vector<std::size_t>& goal_in, PartSplit split) {
  const ArrayCode& base = *basep;
  std::vector<std::size_t> goal = goal_in;
  std::sort(goal.begin(), goal.end());
  check_goal(base, goal);
  const PSchedule sched = build_pschedule(base.degrees);
  const auto& l = sched.l;
  const std::size_t l0 = l[0], Lb = base.L, m = base.degrees.m();
  auto is_goal = [&](std::size_t i) { return std::binary_search(goal.begin(), goal.end(), i); };

  auto code = std::make_shared<ArrayCode>();
  code->n = base.n;
  code->k = base.k;
  code->r = base.r;
  code->N = base.N;
  code->alpha = base.alpha * l0;
  code->L = Lb * l0;
  code->field = base.field;
  code->degrees = base.degrees;
  code->partition = base.partition;
  code->constants = base.constants;
  code->base = basep;
  code->goal = goal;
  code->round = base.round + 1;
  code->goal_round = base.goal_round;
  if (code->goal_round.size() != base.n) code->goal_round.assign(base.n, -1);
  for (std::size_t i : goal) code->goal_round[i] = static_cast<int>(base.round);
  for (std::size_t i = base.n; i-- > 0 && code->rset.size() < base.r;)
    if (!is_goal(i)) code->rset.insert(code->rset.begin(), i);

  if (split == PartSplit::GoalAxis && !goal.empty()) {
    // Axis of the goal block: nodes delta_0 x + y share axis x.
    const unsigned d0 = base.degrees.delta0();
    std::size_t w = 0;
    while (ipow(d0, w) < base.N) ++w;
    if (ipow(d0, w) != base.N) throw ParameterError("GoalAxis split needs N to be a power of delta_0");
    const std::size_t axis = goal.front() / d0;
    if (axis < w) code->part_rows = axis_part_rows(d0, w, axis);
  }

  code->parity.reserve(base.parity.size());
  for (std::size_t t = 0; t < base.r; ++t)
    for (std::size_t i = 0; i < base.n; ++i) {
      Matrix a = blkdiag_repeat(base.A(t, i), l0);
      if (is_goal(i))
        for (std::size_t inst = 0; inst < l0; ++inst) add_appended(base, sched, code->part_rows, t, i, inst, inst * Lb, a);
      code->parity.push_back(std::move(a));
    }

  code->repair.assign(base.n, std::vector<Matrix>(m));
  code->select.assign(base.n, std::vector<Matrix>(m));
  code->keys.assign(base.n, {});
  for (std::size_t i = 0; i < base.n; ++i) {
    if (is_goal(i)) {
      for (std::size_t z = 0; z < m; ++z) {
        Matrix R(base.field, l[z] * base.repair[i][0].rows(), code->L);
        Matrix S(base.field, l[z] * base.select[i][0].rows(), code->L);
        R.set_block(0, 0, blkdiag_repeat(base.repair[i][0], l[z]));
        S.set_block(0, 0, blkdiag_repeat(base.select[i][0], l[z]));
        code->repair[i][z] = std::move(R);
        code->select[i][z] = std::move(S);
      }
      continue;
    }
    for (std::size_t z = 0; z < m; ++z)
      if (base.supports(i, z)) {
        code->repair[i][z] = blkdiag_repeat(base.repair[i][z], l0);
        code->select[i][z] = blkdiag_repeat(base.select[i][z], l0);
      }
    if (base.has_keys(i)) {
      code->keys[i].assign(base.r, {});
      for (std::size_t t = 0; t < base.r; ++t)
        for (const Matrix& K : base.keys[i][t]) code->keys[i][t].push_back(blkdiag_repeat(K, l0));
    }
  }
  return code;
}

CodePtr algorithm2(const CodePtr& base, PartSplit split) {
  CodePtr code = base;
  for (const auto& J : base->partition) code = lift_code(code, J, split);
  return code;
}

std::uint64_t final_subpacketization(std::size_t n, unsigned delta0, const DegreeSet& degrees) {
  const std::size_t tau = (n + delta0 - 1) / delta0;
  const std::uint64_t l0 = degrees.lcm() / delta0;
  std::uint64_t out = 1;
  for (std::size_t s = 0; s < tau; ++s) out *= l0 * delta0;
  return out;
}

}  // namespace tmds
