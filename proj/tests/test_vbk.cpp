// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tmds/indexing.hpp"
#include "tmds/repair.hpp"
#include "tmds/vbk.hpp"

using namespace tmds;

namespace {

VbkParams params(std::size_t n, std::size_t k, unsigned delta0, std::vector<unsigned> degrees, std::uint32_t q = 0) {
  VbkParams p;
  p.n = n;
  p.k = k;
  p.delta0 = delta0;
  p.degrees = DegreeSet::make(std::move(degrees), n - k);
  p.q = q;
  return p;
}

// Coefficient matrices written out entry by entry: {theta index, times eps}.
struct Coef {
  unsigned idx;
  bool eps;
};
const Coef kTheta2[2][2] = {{{0, 0}, {1, 1}}, {{1, 0}, {0, 0}}};
const Coef kTheta3[3][3] = {{{0, 0}, {1, 1}, {2, 1}}, {{1, 0}, {0, 0}, {3, 1}}, {{2, 0}, {3, 0}, {0, 0}}};
const Coef kTheta4[4][4] = {{{0, 0}, {1, 1}, {2, 1}, {3, 1}},
                            {{1, 0}, {0, 0}, {3, 1}, {2, 1}},
                            {{2, 0}, {3, 0}, {0, 0}, {1, 1}},
                            {{3, 0}, {2, 0}, {1, 0}, {0, 0}}};

Elem theta_entry(const Field& f, const VbkConstants& c, std::size_t x, unsigned v, unsigned y) {
  const Coef e = c.delta0 == 2 ? kTheta2[v][y] : c.delta0 == 3 ? kTheta3[v][y] : kTheta4[v][y];
  const Elem th = c.theta[x][e.idx];
  return e.eps ? f.mul(c.epsilon, th) : th;
}

// Parity block assembled from its two sums.
Matrix oracle_parity(const VbkParams& p, const FieldPtr& f, const VbkConstants& c, std::size_t t, std::size_t i) {
  const std::size_t x = i / p.delta0, tau = p.tau(), N = ipow(p.delta0, tau);
  const unsigned y = unsigned(i % p.delta0);
  auto lam = [&](unsigned v) { return f->pow(theta_entry(*f, c, x, v, y), t); };
  Matrix A(f, N, N);
  for (std::size_t a = 0; a < N; ++a) {
    const DigitVector d = expand(a, p.delta0, tau);
    A(a, a) = f->add(A(a, a), lam(d.at(x)));
    if (d.at(x) != y) continue;
    for (unsigned u = 0; u < p.delta0; ++u) {
      if (u == y) continue;
      const Elem coef = u < y ? c.epsilon : Elem(1);
      const std::size_t col = compose(pi(d, x, u));
      A(a, col) = f->add(A(a, col), f->mul(coef, lam(u)));
    }
  }
  return A;
}

}  // namespace

TEST_CASE("field bounds") {
  CHECK(vbk_field_bound(16, 2) == 50);
  CHECK(vbk_field_bound(6, 2) == 20);
  CHECK(vbk_field_bound(8, 3) == 56);
  CHECK(vbk_field_bound(24, 4) == 110);
  CHECK(vbk_default_field(6, 2) == 32);
  CHECK(vbk_default_field(16, 2) == 64);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate_params(params(6, 3, 2, {2, 3})));
  CHECK_THROWS_AS(validate_params(params(4, 2, 2, {2})), ParameterError);
  CHECK_NOTHROW(validate_params(params(4, 2, 2, {2}), true));
  CHECK_THROWS_AS(validate_params(params(6, 3, 2, {2, 3}, 16)), ParameterError);
  CHECK_THROWS_AS(DegreeSet::make({2, 5}, 3), ParameterError);
  CHECK_THROWS_AS(DegreeSet::make({3, 2}, 3), ParameterError);
  CHECK_THROWS_AS(validate_params(params(8, 4, 2, {3, 4})), ParameterError);
}

TEST_CASE("constants") {
  const auto p = params(16, 10, 2, {2, 3, 4, 6});
  const auto f = build_field(64);
  const VbkConstants c = choose_constants(p, f, 5);
  const VbkConstants again = choose_constants(p, f, 5);
  CHECK(c.epsilon == again.epsilon);
  CHECK(c.theta == again.theta);
  CHECK(c.zeta == again.zeta);
  CHECK(c.epsilon > 1);

  // theta_{0,x}, theta_{1,x} and eps theta_{1,x} over all x: 3 * 8 values, plus 4 keys.
  std::set<Elem> roles;
  std::set<Elem> lambdas;
  for (std::size_t x = 0; x < p.tau(); ++x) {
    roles.insert(c.theta[x][0]);
    roles.insert(c.theta[x][1]);
    roles.insert(f->mul(c.epsilon, c.theta[x][1]));
    for (std::size_t y = 0; y < 2; ++y)
      for (unsigned v = 0; v < 2; ++v) lambdas.insert(vbk_lambda(*f, c, 2 * x + y, v));
  }
  CHECK(roles.size() == 3 * p.tau());
  CHECK(roles.count(0) == 0);
  REQUIRE(c.zeta.size() == 4);
  for (Elem z : c.zeta) CHECK(lambdas.count(z) == 0);
  CHECK(std::set<Elem>(c.zeta.begin(), c.zeta.end()).size() == 4);

  CHECK_THROWS_AS(choose_constants(params(16, 10, 2, {2, 3, 4, 6}), build_field(8), 1), ParameterError);
}

TEST_CASE("lambda follows the coefficient matrices") {
  for (unsigned delta0 : {2u, 3u, 4u}) {
    const std::size_t n = 3 * delta0;
    const auto p = params(n, n - delta0 - 1, delta0, {delta0});
    const auto f = build_field(vbk_default_field(n, delta0));
    const VbkConstants c = choose_constants(p, f, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned v = 0; v < delta0; ++v)
        REQUIRE(vbk_lambda(*f, c, i, v) == theta_entry(*f, c, i / delta0, v, unsigned(i % delta0)));
  }
}

TEST_CASE("parity blocks against the two-sum oracle") {
  struct Case {
    std::size_t n, k;
    unsigned delta0;
    std::vector<unsigned> degrees;
  };
  for (const Case& cs : {Case{6, 3, 2, {2, 3}}, Case{5, 2, 2, {2, 3}}, Case{8, 4, 3, {3, 4}}, Case{8, 3, 4, {4, 5}}}) {
    const auto p = params(cs.n, cs.k, cs.delta0, cs.degrees);
    const auto f = build_field(vbk_default_field(cs.n, cs.delta0));
    const VbkConstants c = choose_constants(p, f, 3);
    for (std::size_t t = 0; t < p.r(); ++t)
      for (std::size_t i = 0; i < p.n; ++i) {
        const Matrix A = vbk_parity_block(p, f, c, t, i);
        REQUIRE(A == oracle_parity(p, f, c, t, i));
        if (t == 0)
          for (std::size_t a = 0; a < A.rows(); ++a) REQUIRE(A(a, a) == 1);
        // One nonzero off the goal digit, delta0 on it.
        const std::size_t x = i / cs.delta0;
        for (std::size_t a = 0; a < A.rows(); ++a) {
          std::size_t nz = 0;
          for (std::size_t col = 0; col < A.cols(); ++col) nz += A(a, col) != 0;
          REQUIRE(nz == (digit(a, cs.delta0, x) == i % cs.delta0 ? cs.delta0 : 1));
        }
      }
  }
}

TEST_CASE("base code shape") {
  const auto p = params(6, 3, 2, {2, 3});
  const CodePtr code = build_vbk(p, 1);
  CHECK(code->field->q() == 32);
  CHECK(code->N == 8);
  CHECK(code->L == 8);
  CHECK(code->partition == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}, {4, 5}});
  for (std::size_t i = 0; i < 6; ++i) {
    const Matrix V = v_matrix(code->field, i / 2, unsigned(i % 2), 2, 3);
    CHECK(code->repair[i][0] == V);
    CHECK(code->select[i][0] == V);
    CHECK(rank(V) == 4);
    REQUIRE(code->keys[i].size() == 3);
    for (std::size_t t = 0; t < 3; ++t) {
      REQUIRE(code->keys[i][t].size() == 1);
      CHECK(code->keys[i][t][0] == V.transpose().scaled(code->field->pow(code->constants->zeta[0], t)));
    }
  }
  CHECK(code->keys[0][0][0] == code->repair[0][0].transpose());

  // Rebuilding from the same constants reproduces every block.
  const CodePtr again = build_vbk_with(p, code->field, *code->constants);
  CHECK(again->parity == code->parity);
}

TEST_CASE("select times parity") {
  const CodePtr code = build_vbk(params(6, 3, 2, {2, 3}), 1);
  const auto& f = *code->field;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t t = 0; t < 3; ++t) {
      const std::size_t x = i / 2;
      const unsigned y = unsigned(i % 2);
      Matrix expect = v_matrix(code->field, x, y, 2, 3).scaled(f.pow(vbk_lambda(f, *code->constants, i, y), t));
      for (unsigned u = 0; u < 2; ++u) {
        if (u == y) continue;
        const Elem coef = f.mul(u < y ? code->constants->epsilon : Elem(1), f.pow(vbk_lambda(f, *code->constants, i, u), t));
        expect = expect + v_matrix(code->field, x, u, 2, 3).scaled(coef);
      }
      REQUIRE(code->select[i][0] * code->A(t, i) == expect);
    }
}

TEST_CASE("interference alignment and closed form") {
  for (unsigned delta0 : {2u, 3u}) {
    const std::size_t n = delta0 == 2 ? 6 : 8, k = n - delta0 - 1;
    const CodePtr code = build_vbk(params(n, k, delta0, {delta0}), 1);
    const auto& f = *code->field;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (std::size_t t = 0; t < code->r; ++t) {
          const Matrix P = interference_projection(code->select[i][0], code->A(t, j), code->repair[i][0]);
          REQUIRE(code->select[i][0] * code->A(t, j) == P * code->repair[i][0]);
          REQUIRE(P == vbk_projection_closed_form(*code, t, j, i));
          if (i / delta0 == j / delta0) {
            const Elem lam = f.pow(vbk_lambda(f, *code->constants, j, unsigned(i % delta0)), t);
            REQUIRE(P == Matrix::identity(code->field, code->N / delta0).scaled(lam));
          }
        }
      }
  }
}

TEST_CASE("goal partition") {
  const auto J = goal_partition(16, 2);
  REQUIRE(J.size() == 8);
  CHECK(J[0] == std::vector<std::size_t>{0, 1});
  CHECK(J[7] == std::vector<std::size_t>{14, 15});
  CHECK(goal_partition(5, 2).back() == std::vector<std::size_t>{4});
  std::vector<std::size_t> all;
  for (const auto& s : goal_partition(11, 3)) all.insert(all.end(), s.begin(), s.end());
  CHECK(all == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("MDS check sets") {
  bool exhaustive = false;
  CHECK(mds_check_sets(6, 3, 20, 1, &exhaustive).size() == 20);
  CHECK(exhaustive);
  const auto sampled = mds_check_sets(30, 6, 25, 1, &exhaustive);
  CHECK_FALSE(exhaustive);
  CHECK(sampled.size() == 25);
  CHECK(sampled == mds_check_sets(30, 6, 25, 1));

  const CodePtr code = build_vbk(params(6, 3, 2, {2, 3}), 1);
  CHECK_FALSE(first_mds_failure(*code, subsets(6, 3)).has_value());
}
