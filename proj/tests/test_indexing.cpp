// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmds/indexing.hpp"

using namespace tmds;

namespace {

const FieldPtr kField = build_field(16);

// Column of the single nonzero in each row of a selector.
std::vector<std::size_t> selected(const Matrix& m) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t hits = 0, col = 0;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c)) {
        ++hits;
        col = c;
        REQUIRE(m(r, c) == 1);
      }
    REQUIRE(hits == 1);
    out.push_back(col);
  }
  return out;
}

DigitVector dv(unsigned s, std::vector<unsigned> digits) { return DigitVector{s, std::move(digits)}; }

}  // namespace

TEST_CASE("expand and compose") {
  CHECK(expand(5, 2, 3).digits == std::vector<unsigned>{1, 0, 1});
  CHECK(expand(7, 2, 3).digits == std::vector<unsigned>{1, 1, 1});
  CHECK(expand(0, 3, 4).digits == std::vector<unsigned>{0, 0, 0, 0});
  CHECK_THROWS(expand(8, 2, 3));
  for (unsigned s : {2u, 3u, 4u})
    for (std::size_t a = 0; a < ipow(s, 4); ++a) {
      const DigitVector d = expand(a, s, 4);
      REQUIRE(compose(d) == a);
      std::size_t v = 0;
      for (unsigned g : d.digits) v = v * s + g;
      REQUIRE(v == a);
      for (std::size_t x = 0; x < 4; ++x) REQUIRE(d.at(x) == digit(a, s, x));
    }
}

TEST_CASE("pi") {
  CHECK(pi(dv(2, {1, 0, 1}), 1, 1) == dv(2, {1, 1, 1}));
  for (unsigned s : {2u, 3u})
    for (std::size_t a = 0; a < ipow(s, 3); ++a)
      for (std::size_t x = 0; x < 3; ++x)
        for (unsigned u = 0; u < s; ++u) {
          const DigitVector d = expand(a, s, 3);
          REQUIRE(pi(d, x, d.at(x)) == d);
          const DigitVector moved = pi(d, x, u);
          REQUIRE(pi(moved, x, d.at(x)) == d);
          REQUIRE(compose(moved) == pi_index(a, s, x, u));
          for (std::size_t y = 0; y < 3; ++y) REQUIRE(moved.at(y) == (y == x ? u : d.at(y)));
        }
}

TEST_CASE("phi") {
  CHECK(phi(dv(2, {1, 0}), 2, 1) == dv(2, {1, 1, 0}));
  CHECK(phi(dv(2, {1, 0}), 0, 1) == dv(2, {1, 0, 1}));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t x = 0; x < 3; ++x)
      for (unsigned u = 0; u < 2; ++u)
        for (unsigned v = 0; v < 2; ++v) {
          const DigitVector d = expand(a, 2, 2);
          REQUIRE(pi(phi(d, x, v), x, u) == phi(d, x, u));
          REQUIRE(compose(phi(d, x, u)) == phi_index(a, 2, x, u));
          REQUIRE(drop_digit(phi_index(a, 2, x, u), 2, x) == a);
        }
}

TEST_CASE("v_matrix rows") {
  CHECK(selected(v_matrix(kField, 1, 0, 2, 3)) == std::vector<std::size_t>{0, 1, 4, 5});
  CHECK(selected(v_matrix(kField, 0, 1, 2, 3)) == std::vector<std::size_t>{1, 3, 5, 7});
  for (unsigned s : {2u, 3u, 4u})
    for (std::size_t x = 0; x < 3; ++x)
      for (unsigned u = 0; u < s; ++u) {
        const Matrix v = v_matrix(kField, x, u, s, 3);
        REQUIRE(v.rows() == ipow(s, 2));
        REQUIRE(v.cols() == ipow(s, 3));
        const auto cols = selected(v);
        for (std::size_t a = 0; a < cols.size(); ++a) {
          REQUIRE(cols[a] == phi_index(a, s, x, u));
          if (a) REQUIRE(cols[a] > cols[a - 1]);
        }
      }
  CHECK_THROWS_AS(v_matrix(kField, 3, 0, 2, 3), DimensionError);
  CHECK_THROWS_AS(v_matrix(kField, 0, 2, 2, 3), DimensionError);
}

TEST_CASE("selector orthogonality") {
  for (unsigned s : {2u, 3u})
    for (std::size_t w = 2; w <= 4; ++w)
      for (std::size_t x = 0; x < w; ++x)
        for (unsigned u = 0; u < s; ++u)
          for (unsigned v = 0; v < s; ++v) {
            const Matrix p = v_matrix(kField, x, u, s, w) * v_matrix(kField, x, v, s, w).transpose();
            if (u == v)
              REQUIRE(p == Matrix::identity(kField, ipow(s, w - 1)));
            else
              REQUIRE(p.is_zero());
          }
}

TEST_CASE("part extractors") {
  const Matrix d0 = delta_matrix(kField, 0, 2, 2);
  CHECK(d0 == hstack({Matrix::identity(kField, 2), Matrix(kField, 2, 2)}));
  CHECK(phi_matrix(kField, 1, 1, 3, 2) == delta_matrix(kField, 1, 3, 2));
  CHECK(phi_matrix(kField, 3, 1, 2, 2) == blkdiag_repeat(delta_matrix(kField, 1, 2, 2), 3));

  Matrix sum(kField, 6, 6);
  for (unsigned u = 0; u < 3; ++u) {
    const Matrix d = delta_matrix(kField, u, 2, 3);
    sum = sum + d.transpose() * d;
  }
  CHECK(sum == Matrix::identity(kField, 6));
  CHECK_THROWS_AS(delta_matrix(kField, 3, 2, 3), DimensionError);
}

TEST_CASE("commutation matrix holds when the goal axis is above") {
  // For x2 > x the identity V_{x,u} V_{x2,v}^T Delta_h = T V_{x,u} holds with
  // the constructed T; the x2 < x half is covered in the verify tests.
  for (unsigned s : {2u, 3u})
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t x2 = x + 1; x2 < 3; ++x2)
        for (unsigned u = 0; u < s; ++u)
          for (unsigned v = 0; v < s; ++v)
            for (unsigned h = 0; h < s; ++h) {
              const Matrix V = v_matrix(kField, x, u, s, 3);
              const Matrix lhs =
                  V * (v_matrix(kField, x2, v, s, 3).transpose() * delta_matrix(kField, h, ipow(s, 2), s));
              REQUIRE(lhs == t_matrix(kField, x, x2, v, h, s, 3) * V);
            }
  CHECK_THROWS_AS(t_matrix(kField, 1, 1, 0, 0, 2, 3), DimensionError);
}
