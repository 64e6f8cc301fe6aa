// SPDX-License-Identifier: Apache-2.0
#include "tmds/code.hpp"

#include <algorithm>
#include <numeric>

namespace tmds {

DegreeSet DegreeSet::make(std::vector<unsigned> degrees, std::size_t r) {
  if (degrees.empty()) throw ParameterError("degree set is empty");
  for (std::size_t z = 0; z < degrees.size(); ++z) {
    if (degrees[z] < 2 || degrees[z] > r)
      throw ParameterError("degree " + std::to_string(degrees[z]) + " outside [2, " + std::to_string(r) + "]");
    if (z && degrees[z] <= degrees[z - 1]) throw ParameterError("degrees must be strictly increasing");
  }
  return DegreeSet{std::move(degrees)};
}

std::uint64_t DegreeSet::lcm() const {
  std::uint64_t out = 1;
  for (unsigned d : degrees) out = std::lcm(out, std::uint64_t(d));
  return out;
}

std::optional<std::size_t> DegreeSet::index_of(unsigned degree) const {
  for (std::size_t z = 0; z < degrees.size(); ++z)
    if (degrees[z] == degree) return z;
  return std::nullopt;
}

std::vector<std::size_t> lvalues(const DegreeSet& d) {
  const std::uint64_t delta = d.lcm();
  std::vector<std::size_t> l;
  for (unsigned deg : d.degrees) l.push_back(static_cast<std::size_t>(delta / deg));
  l.push_back(0);
  return l;
}

bool ArrayCode::is_goal(std::size_t i) const {
  return std::find(goal.begin(), goal.end(), i) != goal.end();
}

std::size_t ArrayCode::part_row(unsigned u, std::size_t o) const {
  if (!base) throw ParameterError("part_row: code has no base");
  const std::size_t Np = base->N / degrees.delta0();
  return part_rows.empty() ? u * Np + o : part_rows.at(u * Np + o);
}

std::vector<const ArrayCode*> ArrayCode::chain() const {
  std::vector<const ArrayCode*> out;
  for (const ArrayCode* c = this; c; c = c->base.get()) out.push_back(c);
  std::reverse(out.begin(), out.end());
  return out;
}

Matrix ArrayCode::erasure_inverse(const std::vector<std::size_t>& erased) const {
  {
    std::lock_guard<std::mutex> lock(cache_.mu);
    auto it = cache_.inverses.find(erased);
    if (it != cache_.inverses.end()) return it->second;
  }
  Matrix inv = inverse(erasure_matrix(*this, erased));
  std::lock_guard<std::mutex> lock(cache_.mu);
  return cache_.inverses.emplace(erased, std::move(inv)).first->second;
}

Matrix erasure_matrix(const ArrayCode& code, const std::vector<std::size_t>& erased) {
  Matrix m(code.field, code.r * code.L, erased.size() * code.L);
  for (std::size_t t = 0; t < code.r; ++t)
    for (std::size_t e = 0; e < erased.size(); ++e) m.set_block(t * code.L, e * code.L, code.A(t, erased[e]));
  return m;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& set) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(set.begin(), set.end(), i) == set.end()) out.push_back(i);
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace tmds
