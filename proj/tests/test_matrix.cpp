// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "tmds/matrix.hpp"

using namespace tmds;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937& rng) {
  Matrix m(f, r, c);
  for (auto& v : m.data()) v = Elem(rng() % f->q());
  return m;
}

Matrix permutation(const FieldPtr& f, std::size_t n, std::mt19937& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, p[i]) = 1;
  return m;
}

// Rank over GF(2) by counting the distinct vectors in the row span.
std::size_t span_rank_gf2(const Matrix& a) {
  std::vector<std::uint32_t> span{0};
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint32_t v = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) v |= std::uint32_t(a(r, c)) << c;
    if (std::find(span.begin(), span.end(), v) != span.end()) continue;
    const std::size_t sz = span.size();
    for (std::size_t i = 0; i < sz; ++i) span.push_back(span[i] ^ v);
  }
  std::size_t k = 0;
  while ((std::size_t(1) << k) < span.size()) ++k;
  return k;
}

}  // namespace

TEST_CASE("matmul") {
  const auto f = build_field(8);
  std::mt19937 rng(3);
  const Matrix m = random_matrix(f, 3, 5, rng);
  CHECK(Matrix::identity(f, 3) * m == m);
  CHECK((Matrix(f, 4, 3) * m).is_zero());

  const Matrix a = random_matrix(f, 4, 4, rng), b = random_matrix(f, 4, 4, rng);
  Matrix naive(f, 4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Elem s = 0;
      for (std::size_t k = 0; k < 4; ++k) s = f->add(s, f->mul(a(i, k), b(k, j)));
      naive(i, j) = s;
    }
  CHECK(matmul(a, b) == naive);
  CHECK_THROWS_AS(a * m.transpose(), DimensionError);
  CHECK_THROWS_AS(a * Matrix::identity(build_field(16), 4), DimensionError);
}

TEST_CASE("mul_add_block matches block product") {
  const auto f = build_field(32);
  std::mt19937 rng(4);
  const Matrix a = random_matrix(f, 6, 7, rng), x = random_matrix(f, 5, 3, rng);
  Matrix out = random_matrix(f, 8, 3, rng);
  Matrix expect = out;
  expect.add_block(2, 0, a.block(1, 2, 4, 3) * x.block(1, 0, 3, 3));
  mul_add_block(a, 1, 2, 4, 3, x, 1, out, 2);
  CHECK(out == expect);
}

TEST_CASE("rank") {
  const auto f = build_field(32);
  CHECK(rank(Matrix::identity(f, 7)) == 7);
  std::mt19937 rng(5);
  Matrix m = random_matrix(f, 5, 8, rng);
  std::copy_n(m.row(1), 8, m.row(3));
  CHECK(rank(m) == rank(m.select_rows({0, 1, 2, 4})));
  CHECK(rank(m) == 4);
}

TEST_CASE("rank against span enumeration over GF(2)") {
  const auto f = build_field(2);
  std::mt19937 rng(6);
  for (int s = 0; s < 300; ++s) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 10;
    const Matrix m = random_matrix(f, r, c, rng);
    REQUIRE(rank(m) == span_rank_gf2(m));
    REQUIRE(rank_sparse(m) == rank(m));
  }
}

TEST_CASE("rank invariants") {
  const auto f = build_field(16);
  std::mt19937 rng(8);
  for (int s = 0; s < 50; ++s) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7, k = rng() % 4;
    // Low-rank product plus random permutations.
    const Matrix m = random_matrix(f, r, k, rng) * random_matrix(f, k, c, rng);
    const std::size_t rk = rank(m);
    REQUIRE(rk <= k);
    REQUIRE(rank(m.transpose()) == rk);
    REQUIRE(rank(permutation(f, r, rng) * m * permutation(f, c, rng)) == rk);
    REQUIRE(rank_sparse(m) == rk);
  }
}

TEST_CASE("inverse and solve") {
  const auto f = build_field(32);
  std::mt19937 rng(9);
  int tested = 0;
  while (tested < 10) {
    const Matrix a = random_matrix(f, 6, 6, rng);
    if (!nonsingular(a)) continue;
    ++tested;
    CHECK(a * inverse(a) == Matrix::identity(f, 6));
    CHECK(inverse(a) * a == Matrix::identity(f, 6));
    const Matrix x = random_matrix(f, 6, 2, rng);
    CHECK(solve(a, a * x) == x);
  }
  Matrix sing = random_matrix(f, 4, 4, rng);
  std::fill_n(sing.row(2), 4, Elem(0));
  CHECK_FALSE(nonsingular(sing));
  CHECK_THROWS_AS(inverse(sing), SingularMatrix);
  CHECK_THROWS_AS(inverse(random_matrix(f, 2, 3, rng)), DimensionError);
}

TEST_CASE("solve exhaustive for 3x3 over GF(4)") {
  const auto f = build_field(4);
  std::mt19937 rng(10);
  int systems = 0;
  while (systems < 20) {
    const Matrix a = random_matrix(f, 3, 3, rng);
    if (!nonsingular(a)) continue;
    ++systems;
    for (std::uint32_t code = 0; code < 64; ++code) {
      Matrix x(f, 3, 1);
      for (std::size_t i = 0; i < 3; ++i) x(i, 0) = Elem((code >> (2 * i)) & 3);
      REQUIRE(solve(a, a * x) == x);
    }
  }
}

TEST_CASE("block assembly") {
  const auto f = build_field(8);
  std::mt19937 rng(11);
  const Matrix q = random_matrix(f, 2, 3, rng);
  CHECK(blkdiag({q}) == q);
  const Matrix d = blkdiag({q, q});
  CHECK(d.rows() == 4);
  CHECK(d.cols() == 6);
  CHECK(d.block(0, 0, 2, 3) == q);
  CHECK(d.block(2, 3, 2, 3) == q);
  CHECK(d.block(0, 3, 2, 3).is_zero());
  CHECK(d.block(2, 0, 2, 3).is_zero());
  CHECK(blkdiag_repeat(q, 2) == d);

  const Matrix b = random_matrix(f, 2, 2, rng);
  const Matrix h = hstack({q, b});
  CHECK(h.block(0, 3, 2, 2) == b);
  const Matrix v = vstack({q, q.scaled(3)});
  CHECK(v.block(2, 0, 2, 3) == q.scaled(3));
  CHECK_THROWS_AS(hstack({q, random_matrix(f, 3, 3, rng)}), DimensionError);
  CHECK_THROWS_AS(vstack({q, b}), DimensionError);
}

TEST_CASE("pivot columns span the row space") {
  const auto f = build_field(16);
  std::mt19937 rng(12);
  const Matrix m = random_matrix(f, 3, 2, rng) * random_matrix(f, 2, 6, rng);
  const auto piv = pivot_columns(m);
  CHECK(piv.size() == rank(m));
  CHECK(rank(m.select_cols(piv)) == piv.size());
}
