// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmds/indexing.hpp"
#include "tmds/transform.hpp"
#include "tmds/vbk.hpp"

using namespace tmds;

namespace {

using Parts = std::vector<PartRef>;

VbkParams params(std::size_t n, std::size_t k, std::vector<unsigned> degrees) {
  VbkParams p;
  p.n = n;
  p.k = k;
  p.delta0 = 2;
  p.degrees = DegreeSet::make(std::move(degrees), n - k);
  return p;
}

// Unvalidated base code; the transform tests only look at structure.
CodePtr structural_base(std::size_t n, std::size_t k, std::vector<unsigned> degrees) {
  const VbkParams p = params(n, k, std::move(degrees));
  const FieldPtr f = build_field(vbk_default_field(n, 2));
  return build_vbk_with(p, f, choose_constants(p, f, 1));
}

// All sorted degree sets inside [2, r] with at least two entries.
std::vector<std::vector<unsigned>> degree_sets(unsigned r) {
  std::vector<std::vector<unsigned>> out;
  const unsigned span = r - 1;
  for (unsigned mask = 0; mask < (1u << span); ++mask) {
    std::vector<unsigned> d;
    for (unsigned b = 0; b < span; ++b)
      if (mask >> b & 1) d.push_back(b + 2);
    if (d.size() >= 2) out.push_back(d);
  }
  return out;
}

// Extractor of part u of one base instance: contiguous rows or the axis selector.
Matrix part_extractor(const FieldPtr& f, unsigned u, std::size_t N, bool axis, std::size_t w) {
  return axis ? v_matrix(f, 0, u, 2, w) : delta_matrix(f, u, N / 2, 2);
}

// Appended data of goal node i in row block a, written out term by term:
// entry v of `terms[a]` contributes zeta_v^t V_{0,i}^T f^{(instance)}[part].
Matrix expected_appended(const ArrayCode& base, const std::vector<Parts>& terms, std::size_t l0, std::size_t t,
                         std::size_t i, std::size_t a, bool axis, std::size_t w) {
  const auto& f = base.field;
  const std::size_t N = base.N;
  Matrix out(f, N, l0 * N);
  const Matrix Vt = v_matrix(f, 0, unsigned(i), 2, w).transpose();
  if (a >= terms.size()) return out;
  for (std::size_t v = 0; v < terms[a].size(); ++v) {
    const PartRef& p = terms[a][v];
    const Matrix term = Vt * part_extractor(f, p.part, N, axis, w);
    out.add_block(0, p.instance * N, term.scaled(f->pow(base.constants->zeta[v], t)));
  }
  return out;
}

}  // namespace

TEST_CASE("l values") {
  CHECK(lvalues(DegreeSet::make({2, 3}, 3)) == std::vector<std::size_t>{3, 2, 0});
  CHECK(lvalues(DegreeSet::make({2, 3, 4, 6}, 6)) == std::vector<std::size_t>{6, 4, 3, 2, 0});
  CHECK(lvalues(DegreeSet::make({2, 4}, 4)) == std::vector<std::size_t>{2, 1, 0});
  CHECK(lvalues(DegreeSet::make({3, 4, 5}, 5)) == std::vector<std::size_t>{20, 15, 12, 0});
}

TEST_CASE("schedule for two degrees") {
  const PSchedule p = build_pschedule(DegreeSet::make({2, 3}, 3));
  CHECK(p.sets[1] == Parts{{2, 0}, {2, 1}});
  REQUIRE(p.parts[1].size() == 2);
  CHECK(p.parts[1][0] == Parts{{2, 0}});
  CHECK(p.parts[1][1] == Parts{{2, 1}});
  CHECK(check_property1(p).empty());
}

TEST_CASE("schedule for four degrees") {
  const PSchedule p = build_pschedule(DegreeSet::make({2, 3, 4, 6}, 6));
  CHECK(p.sets[1] == Parts{{4, 0}, {4, 1}, {5, 0}, {5, 1}});
  CHECK(p.sets[2] == Parts{{3, 0}, {3, 1}, {5, 1}});
  CHECK(p.sets[3] == Parts{{2, 0}, {2, 1}, {5, 0}, {5, 1}});
  CHECK(p.parts[1] == std::vector<Parts>{{{4, 0}}, {{4, 1}}, {{5, 0}}, {{5, 1}}});
  CHECK(p.parts[2] == std::vector<Parts>{{{3, 0}}, {{3, 1}}, {{5, 1}}});
  CHECK(p.parts[3] == std::vector<Parts>{{{2, 0}, {2, 1}}, {{5, 0}, {5, 1}}});
  CHECK(p.band(5) == 0);
  CHECK(p.band(4) == 0);
  CHECK(p.band(3) == 1);
  CHECK(p.band(2) == 2);
  CHECK(p.band(0) == 3);
}

TEST_CASE("property 1 for every degree set up to r = 6") {
  std::size_t sets = 0;
  for (const auto& d : degree_sets(6)) {
    CAPTURE(d.front());
    CAPTURE(d.back());
    const PSchedule p = build_pschedule(DegreeSet::make(d, 6));
    REQUIRE(check_property1(p).empty());
    // Sizes restated independently.
    for (std::size_t j = 1; j < d.size(); ++j) {
      REQUIRE(p.sets[j].size() == (d[j] - d[j - 1]) * p.l[j]);
      REQUIRE(p.parts[j].size() == p.l[j]);
      for (const auto& part : p.parts[j]) REQUIRE(part.size() == d[j] - d[j - 1]);
    }
    ++sets;
  }
  CHECK(sets == 26);
}

TEST_CASE("appended data of the four-degree example") {
  // Rows a = 0..3 of the displayed parity-check groups; a = 4, 5 carry none.
  const std::vector<Parts> terms = {{{4, 0}, {3, 0}, {2, 0}, {2, 1}},
                                    {{4, 1}, {3, 1}, {5, 0}, {5, 1}},
                                    {{5, 0}, {5, 1}},
                                    {{5, 1}}};
  const CodePtr base = structural_base(16, 10, {2, 3, 4, 6});
  const PSchedule sched = build_pschedule(base->degrees);
  const auto axis_rows = axis_part_rows(2, 8, 0);
  for (std::size_t i : {0u, 1u})
    for (std::size_t t : {0u, 1u, 5u})
      for (std::size_t a = 0; a < 6; ++a) {
        REQUIRE(appended_data_matrix(*base, sched, t, i, a) == expected_appended(*base, terms, 6, t, i, a, false, 8));
        REQUIRE(appended_data_matrix(*base, sched, t, i, a, axis_rows) ==
                expected_appended(*base, terms, 6, t, i, a, true, 8));
      }
}

TEST_CASE("axis part rows") {
  CHECK(axis_part_rows(2, 3, 0) == std::vector<std::size_t>{0, 2, 4, 6, 1, 3, 5, 7});
  CHECK(axis_part_rows(2, 3, 2) == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("first lift at (6,3)") {
  const CodePtr base = build_vbk(params(6, 3, {2, 3}), 1);
  const std::vector<Parts> terms = {{{2, 0}}, {{2, 1}}};
  for (bool axis : {false, true}) {
    CAPTURE(axis);
    const CodePtr lifted = lift_code(base, {0, 1}, axis ? PartSplit::GoalAxis : PartSplit::Contiguous);
    CHECK(lifted->L == 24);
    CHECK(lifted->alpha == 3);
    CHECK(lifted->goal == std::vector<std::size_t>{0, 1});
    CHECK(lifted->rset == std::vector<std::size_t>{3, 4, 5});
    for (std::size_t t = 0; t < 3; ++t)
      for (std::size_t i = 0; i < 6; ++i) {
        Matrix expect = blkdiag_repeat(base->A(t, i), 3);
        if (i < 2)
          for (std::size_t a = 0; a < 3; ++a)
            expect.add_block(a * 8, 0, expected_appended(*base, terms, 3, t, i, a, axis, 3));
        REQUIRE(lifted->A(t, i) == expect);
      }
    // Goal nodes gain every degree on the first l_z instances.
    CHECK(lifted->repair[0][0].rows() == 3 * 4);
    CHECK(lifted->repair[0][1].rows() == 2 * 4);
    CHECK(lifted->repair[0][1].block(0, 0, 8, 16) == blkdiag_repeat(base->repair[0][0], 2));
    CHECK(lifted->repair[0][1].block(0, 16, 8, 8).is_zero());
    CHECK_FALSE(lifted->supports(3, 1));
    CHECK(lifted->repair[3][0] == blkdiag_repeat(base->repair[3][0], 3));
    CHECK(lifted->keys[3][1][0] == blkdiag_repeat(base->keys[3][1][0], 3));
    CHECK_FALSE(first_mds_failure(*lifted, subsets(6, 3)).has_value());
  }
}

TEST_CASE("lift without goal nodes is space sharing") {
  const CodePtr base = build_vbk(params(6, 3, {2, 3}), 1);
  const CodePtr shared = lift_code(base, {});
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t i = 0; i < 6; ++i) REQUIRE(shared->A(t, i) == blkdiag_repeat(base->A(t, i), 3));
  CHECK_FALSE(first_mds_failure(*shared, subsets(6, 3)).has_value());
  CHECK_THROWS(lift_code(base, {1, 2}));
}

TEST_CASE("algorithm 2") {
  const CodePtr base = build_vbk(params(6, 3, {2, 3}), 1);
  const CodePtr g = algorithm2(base);
  CHECK(g->L == 216);
  CHECK(g->round == 3);
  CHECK(g->L == final_subpacketization(6, 2, base->degrees));
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(g->supports(i, 0));
    CHECK(g->supports(i, 1));
    CHECK(g->goal_round[i] == int(i / 2));
  }
  CHECK(g->chain().size() == 4);

  auto empty = std::make_shared<ArrayCode>(*base);
  empty->partition.clear();
  const CodePtr same = empty;
  CHECK(algorithm2(same) == same);

  CHECK(final_subpacketization(24, 2, DegreeSet::make({2, 3}, 4)) == 2176782336ull);
  CHECK(final_subpacketization(24, 3, DegreeSet::make({3, 4, 5}, 5)) == 167961600000000ull);
}
