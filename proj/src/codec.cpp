// SPDX-License-Identifier: Apache-2.0
#include "tmds/codec.hpp"

#include <algorithm>
#include <set>

#include "tmds/transform.hpp"

namespace tmds {
namespace {

std::size_t stripes_of(const Fragments& frags, const std::vector<std::size_t>& idx) {
  if (idx.empty()) throw DimensionError("no fragments supplied");
  return frags.at(idx.front()).cols();
}

// -(sum over known j of A_{t,j} f_j), stacked t-major.
Matrix known_rhs(const ArrayCode& code, const Fragments& word, const std::vector<std::size_t>& known,
                 std::size_t S) {
  Matrix acc(code.field, code.r * code.L, S);
  for (std::size_t j : known) {
    const Matrix& f = word.at(j);
    if (f.rows() != code.L || f.cols() != S)
      throw DimensionError("fragment " + std::to_string(j) + " has shape " + std::to_string(f.rows()) + "x" +
                           std::to_string(f.cols()));
    for (std::size_t t = 0; t < code.r; ++t) mul_add_block(code.A(t, j), 0, 0, code.L, code.L, f, 0, acc, t * code.L);
  }
  return acc.negated();
}

void check_index_set(const ArrayCode& code, const std::vector<std::size_t>& set, std::size_t want,
                     const char* what) {
  std::set<std::size_t> seen(set.begin(), set.end());
  if (seen.size() != set.size() || set.size() != want || (!set.empty() && *seen.rbegin() >= code.n))
    throw DimensionError(std::string(what) + ": need " + std::to_string(want) + " distinct node indices below " +
                         std::to_string(code.n));
}

}  // namespace

Matrix solve_erasures(const ArrayCode& code, const std::vector<std::size_t>& erased, const Matrix& rhs,
                      DecodeMethod method) {
  const std::size_t L = code.L, S = rhs.cols();
  if (rhs.rows() != code.r * L) throw DimensionError("solve_erasures: rhs height mismatch");
  if (method == DecodeMethod::Dense || !code.base) return code.erasure_inverse(erased) * rhs;

  const ArrayCode& base = *code.base;
  const std::size_t Lb = base.L;
  const auto l = lvalues(code.degrees);
  std::vector<std::size_t> erased_goal;
  for (std::size_t e : erased)
    if (code.is_goal(e)) erased_goal.push_back(e);

  Matrix x(code.field, erased.size() * L, S);
  for (std::size_t w = 0; w < code.degrees.m(); ++w) {
    for (std::size_t a = l[w + 1]; a < l[w]; ++a) {
      Matrix sub(code.field, code.r * Lb, S);
      for (std::size_t t = 0; t < code.r; ++t)
        for (std::size_t e = 0; e < erased.size(); ++e) {
          if (!code.is_goal(erased[e])) continue;
          // Appended data of instance a only references instances >= l_w, solved in earlier bands.
          for (std::size_t b = l[w]; b < l[0]; ++b)
            mul_add_block(code.A(t, erased[e]), a * Lb, b * Lb, Lb, Lb, x, e * L + b * Lb, sub, t * Lb);
        }
      Matrix local(code.field, code.r * Lb, S);
      for (std::size_t t = 0; t < code.r; ++t) local.set_block(t * Lb, 0, rhs.block(t * L + a * Lb, 0, Lb, S));
      Matrix part = solve_erasures(base, erased, local - sub, DecodeMethod::Induction);
      for (std::size_t e = 0; e < erased.size(); ++e) x.set_block(e * L + a * Lb, 0, part.block(e * Lb, 0, Lb, S));
    }
  }
  return x;
}

Fragments encode(const ArrayCode& code, const Fragments& data, std::vector<std::size_t> systematic) {
  if (systematic.empty())
    for (std::size_t i = 0; i < code.k; ++i) systematic.push_back(i);
  check_index_set(code, systematic, code.k, "encode");
  if (data.size() != code.k) throw DimensionError("encode: expected k data fragments");
  Fragments word(code.n);
  for (std::size_t s = 0; s < systematic.size(); ++s) word[systematic[s]] = data[s];
  std::sort(systematic.begin(), systematic.end());
  const std::size_t S = stripes_of(word, systematic);
  const auto parity = complement(code.n, systematic);
  Matrix x = solve_erasures(code, parity, known_rhs(code, word, systematic, S), DecodeMethod::Dense);
  for (std::size_t e = 0; e < parity.size(); ++e) word[parity[e]] = x.block(e * code.L, 0, code.L, S);
  return word;
}

Fragments reconstruct(const ArrayCode& code, const Fragments& word, const std::vector<std::size_t>& present_in,
                      DecodeMethod method) {
  std::vector<std::size_t> present = present_in;
  std::sort(present.begin(), present.end());
  check_index_set(code, present, code.k, "reconstruct");
  if (word.size() != code.n) throw DimensionError("reconstruct: word must have n entries");
  const std::size_t S = stripes_of(word, present);
  const auto erased = complement(code.n, present);
  Matrix x = solve_erasures(code, erased, known_rhs(code, word, present, S), method);
  Fragments out(code.n);
  for (std::size_t j : present) out[j] = word[j];
  for (std::size_t e = 0; e < erased.size(); ++e) out[erased[e]] = x.block(e * code.L, 0, code.L, S);
  return out;
}

Matrix syndrome(const ArrayCode& code, const Fragments& word) {
  if (word.size() != code.n) throw DimensionError("syndrome: word must have n entries");
  const std::size_t S = word.front().cols();
  Matrix acc(code.field, code.r * code.L, S);
  for (std::size_t j = 0; j < code.n; ++j)
    for (std::size_t t = 0; t < code.r; ++t)
      mul_add_block(code.A(t, j), 0, 0, code.L, code.L, word[j], 0, acc, t * code.L);
  return acc;
}

}  // namespace tmds
