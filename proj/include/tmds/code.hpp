// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "tmds/matrix.hpp"

namespace tmds {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sorted repair degrees delta_0 < ... < delta_{m-1}.
struct DegreeSet {
  std::vector<unsigned> degrees;

  // Validates ordering and the range [2, r].
  static DegreeSet make(std::vector<unsigned> degrees, std::size_t r);

  std::size_t m() const { return degrees.size(); }
  unsigned delta0() const { return degrees.front(); }
  unsigned operator[](std::size_t z) const { return degrees[z]; }
  std::uint64_t lcm() const;
  // Number of key matrices per (t, node): delta_{m-1} - delta_0.
  std::size_t key_count() const { return degrees.back() - degrees.front(); }
  std::optional<std::size_t> index_of(unsigned degree) const;
};

// l_z = lcm / delta_z for z < m and l_m = 0.
std::vector<std::size_t> lvalues(const DegreeSet& d);

struct VbkConstants {
  unsigned delta0 = 2;
  Elem epsilon = 0;
  // theta[x][i] for i in [0, 4); unused entries are zero.
  std::vector<std::array<Elem, 4>> theta;
  std::vector<Elem> zeta;
  std::uint64_t seed = 0;
};

class ArrayCode;
using CodePtr = std::shared_ptr<const ArrayCode>;

// Parity-check description sum_i A_{t,i} f_i = 0 together with per-node
// repair/select matrices, key matrices and the history of lifting rounds.
class ArrayCode {
 public:
  std::size_t n = 0, k = 0, r = 0;
  std::size_t L = 0;      // sub-packetization
  std::size_t N = 0;      // base sub-packetization
  std::size_t alpha = 1;  // L = alpha * N
  FieldPtr field;
  DegreeSet degrees;

  std::vector<Matrix> parity;  // index t * n + i
  // repair[i][z] / select[i][z]; an empty matrix means degree z unsupported.
  std::vector<std::vector<Matrix>> repair, select;
  // keys[i][t][v]; empty when node i carries no key matrices.
  std::vector<std::vector<std::vector<Matrix>>> keys;
  std::vector<std::vector<std::size_t>> partition;

  CodePtr base;                    // code this one was lifted from
  std::vector<std::size_t> goal;   // goal nodes of the lift producing this code
  std::vector<std::size_t> rset;   // nodes whose stored data the lift re-solves
  std::vector<int> goal_round;     // round in which each node was a goal node, -1 if never
  std::size_t round = 0;           // number of lifts applied
  std::optional<VbkConstants> constants;
  // Row, inside one N-block of the base code, of symbol o of part u, stored
  // at part_rows[u N' + o]. Empty means contiguous parts (row u N' + o).
  std::vector<std::size_t> part_rows;

  const Matrix& A(std::size_t t, std::size_t i) const { return parity[t * n + i]; }
  Matrix& A(std::size_t t, std::size_t i) { return parity[t * n + i]; }
  bool supports(std::size_t i, std::size_t z) const {
    return z < repair[i].size() && !repair[i][z].empty();
  }
  bool has_keys(std::size_t i) const { return !keys[i].empty(); }
  bool is_goal(std::size_t i) const;
  std::size_t part_row(unsigned u, std::size_t o) const;
  // Codes from the base up to this one: chain()[0] is the base.
  std::vector<const ArrayCode*> chain() const;

  // Cached inverse of the stacked erasure block for an erased set.
  Matrix erasure_inverse(const std::vector<std::size_t>& erased) const;

 private:
  // Copies start with an empty cache so edited copies never see stale inverses.
  struct Cache {
    Cache() = default;
    Cache(const Cache&) {}
    Cache& operator=(const Cache&) {
      std::lock_guard<std::mutex> lock(mu);
      inverses.clear();
      return *this;
    }
    std::mutex mu;
    std::map<std::vector<std::size_t>, Matrix> inverses;
  };
  mutable Cache cache_;
};

// rL x rL matrix whose block (t, e) is A_{t, erased[e]}.
Matrix erasure_matrix(const ArrayCode& code, const std::vector<std::size_t>& erased);

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& set);
std::uint64_t binomial(std::size_t n, std::size_t k);
// All k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

}  // namespace tmds
