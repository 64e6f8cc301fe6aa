// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "tmds/verify.hpp"

using namespace tmds;

namespace {

VbkParams params63() {
  VbkParams p;
  p.n = 6;
  p.k = 3;
  p.delta0 = 2;
  p.degrees = DegreeSet::make({2, 3}, 3);
  return p;
}

CodePtr base_code() {
  static const CodePtr code = build_vbk(params63(), 1);
  return code;
}

bool all_pass(const std::vector<PropertyReport>& reps) {
  for (const auto& r : reps)
    if (!r.pass) return false;
  return true;
}

const PropertyReport* find(const std::vector<PropertyReport>& reps, const std::string& name) {
  for (const auto& r : reps)
    if (r.property == name) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("base code certificate") {
  const auto reps = tmds_suite(*base_code());
  INFO(render_text(reps));
  CHECK(all_pass(reps));
  const PropertyReport* mds = find(reps, "mds");
  REQUIRE(mds != nullptr);
  CHECK(mds->exhaustive);
  CHECK(mds->checked == 20);
  CHECK(check_tmds(*base_code()).pass);
  for (const auto& J : base_code()->partition) {
    CHECK(check_c1(*base_code(), J).pass);
    CHECK(check_c2(*base_code(), J).pass);
    CHECK(check_c3(*base_code(), J).pass);
  }
}

TEST_CASE("later blocks keep their conditions after a lift") {
  const CodePtr lifted = lift_code(base_code(), {0, 1});
  for (std::size_t b : {1u, 2u}) {
    const auto& J = lifted->partition[b];
    CHECK(check_c1(*lifted, J).pass);
    CHECK(check_c2(*lifted, J).pass);
    CHECK(check_c3(*lifted, J).pass);
  }
}

TEST_CASE("fixtures fail where expected") {
  const auto& base = *base_code();

  const PropertyReport zeroed = check_mds(*fixture_zeroed_parity(base, 0, 0));
  CHECK_FALSE(zeroed.pass);
  CHECK_FALSE(zeroed.counterexample.empty());

  const PropertyReport keyless = check_tmds(*fixture_without_keys(base));
  CHECK_FALSE(keyless.pass);

  const PropertyReport small = check_tmds(*fixture_small_r());
  CHECK_FALSE(small.pass);
  CHECK(small.detail.find("r") != std::string::npos);

  const CodePtr collided = fixture_zeta_collision(params63(), 1);
  const PropertyReport c2 = check_c2(*collided, {0, 1});
  CHECK_FALSE(c2.pass);
  CHECK_FALSE(c2.counterexample.empty());
}

TEST_CASE("contiguous parts break the third condition") {
  const auto& base = *base_code();
  bool any_fail = false;
  for (const auto& J : base.partition) any_fail = any_fail || !check_c3(base, J, 0, PartSplit::Contiguous).pass;
  CHECK(any_fail);
  CHECK_FALSE(check_repair_bound(*algorithm2(base_code(), PartSplit::Contiguous)).pass);
}

TEST_CASE("repair bound on the final code") {
  const CodePtr g = algorithm2(base_code());
  const PropertyReport rep = check_repair_bound(*g);
  INFO(rep.detail);
  CHECK(rep.pass);
  CHECK(rep.exhaustive);
  CHECK(check_mds(*g).pass);

  CheckOptions sampled;
  sampled.force_sample = true;
  sampled.sample = 3;
  sampled.seed = 9;
  const PropertyReport a = check_repair_bound(*g, sampled), b = check_repair_bound(*g, sampled);
  CHECK_FALSE(a.exhaustive);
  CHECK(a.pass);
  CHECK(render_text({a}) == render_text({b}));
}

TEST_CASE("selector identities") {
  for (unsigned s : {2u, 3u}) {
    CAPTURE(s);
    // Orthogonality and the x2 > x half hold; every failure has x2 < x and
    // admits no commuting matrix at all.
    const PropertyReport literal = check_lemma5(s, 3);
    CHECK_FALSE(literal.pass);
    REQUIRE(literal.counterexample.size() == 5);
    CHECK(literal.counterexample[1] < literal.counterexample[0]);
    const std::string& d = literal.detail;
    const auto count = [&](const std::string& before) {
      const auto pos = d.find(before);
      REQUIRE(pos != std::string::npos);
      return std::stoul(d.substr(pos + before.size()));
    };
    const unsigned long failures = count("commutation fails for ");
    CHECK(failures > 0);
    CHECK(count("tuples (") == failures);
    CHECK(count("); ") == failures);

    CHECK(check_lemma5_axis(s, 3).pass);
  }
  CHECK_THROWS(check_lemma5(5, 3));
}

TEST_CASE("projection closed form") {
  CHECK(check_projection_closed_form(*base_code()).pass);
}

TEST_CASE("report rendering") {
  PropertyReport ok;
  ok.property = "demo";
  ok.checked = ok.total = 4;
  PropertyReport bad = ok;
  bad.property = "broken";
  bad.exhaustive = false;
  bad.total = 10;
  bad.fail({1, 2}, "first");
  bad.fail({3}, "second");
  CHECK(bad.counterexample == std::vector<std::size_t>{1, 2});
  CHECK(bad.detail == "first");
  CHECK(ok.scope() == "exhaustive 4");
  CHECK(bad.scope() == "sampled 4 of 10");

  const std::string text = render_text({ok, bad});
  CHECK(text.find("PASS demo") != std::string::npos);
  CHECK(text.find("FAIL broken") != std::string::npos);

  std::istringstream lines(render_json({ok, bad}));
  std::string line;
  std::vector<nlohmann::json> recs;
  while (std::getline(lines, line)) recs.push_back(nlohmann::json::parse(line));
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["property"] == "demo");
  CHECK(recs[0]["verdict"] == "pass");
  CHECK(recs[1]["verdict"] == "fail");
  CHECK(recs[1]["scope"] == "sampled");
  CHECK(recs[1]["counterexample"] == nlohmann::json::array({1, 2}));
}
