#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "finmok/json_io.hpp"
#include "finmok/semantics.hpp"
#include "gen.hpp"

using namespace finmok;

namespace {

bool mentions(const std::vector<Violation>& vs, const std::string& condition) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.condition == condition; });
}

// Chain w R1 v with a legal congruence model: D_w = {0}, D_v = {0, 1},
// identity at w, {0,1} merged at v, P = {0} at w and {0, 1} at v.
AugmentedModel chain_model() {
  AugmentedModel m;
  m.frame = gen::make_chain();
  m.domains = {{0}, {0, 1}};
  m.equiv = {{{0}}, {{0, 1}}};
  m.interp["P"] = {{{0}}, {{0}, {1}}};
  m.domain_mode = DomainMode::expanding;
  m.equality_mode = EqualityMode::congruence;
  return m;
}

}  // namespace

TEST_CASE("validate_frame") {
  KripkeFrame ok = gen::single_world(true);
  CHECK(validate_frame(ok).empty());

  KripkeFrame bad = gen::make_chain();
  bad.relations[0].emplace_back(0, 5);
  CHECK(validate_frame(bad).size() == 1);

  KripkeFrame zero;
  zero.n = 0;
  zero.worlds = {"w"};
  CHECK(mentions(validate_frame(zero), "frame"));
}

TEST_CASE("validate_model accepts a legal model") {
  CHECK(validate_model(chain_model()).empty());
}

TEST_CASE("validate_model: (E) violation") {
  AugmentedModel m = chain_model();
  m.domains = {{0, 1}, {0}};
  m.equiv = {{{0}, {1}}, {{0}}};
  m.interp["P"] = {{}, {}};
  auto vs = validate_model(m);
  CHECK(mentions(vs, "E"));
}

TEST_CASE("validate_model: (H) violation") {
  AugmentedModel m = chain_model();
  m.domains = {{0, 1}, {0, 1}};
  m.equiv = {{{0, 1}}, {{0}, {1}}};  // merged at w, identity at v
  m.interp["P"] = {{}, {}};
  auto vs = validate_model(m);
  CHECK(mentions(vs, "H"));
}

TEST_CASE("validate_model: congruence violation") {
  AugmentedModel m = chain_model();
  m.equiv = {{{0}}, {{0, 1}}};
  m.interp["P"] = {{}, {{0}}};  // 0 == 1 at v but P separates them
  auto vs = validate_model(m);
  CHECK(mentions(vs, "congruence"));
}

TEST_CASE("validate_model: (C) in locally constant mode") {
  AugmentedModel m = chain_model();
  m.domain_mode = DomainMode::locally_constant;
  CHECK(mentions(validate_model(m), "C"));
  m.domains = {{0, 1}, {0, 1}};
  m.equiv = {{{0}, {1}}, {{0}, {1}}};
  m.interp["P"] = {{{0}}, {{0}}};
  CHECK(validate_model(m).empty());
}

TEST_CASE("locally constant implies expanding passes") {
  AugmentedModel m = chain_model();
  m.domains = {{0, 1}, {0, 1}};
  m.equiv = {{{0}, {1}}, {{0}, {1}}};
  m.interp["P"] = {{{0}}, {{0}}};
  m.domain_mode = DomainMode::locally_constant;
  REQUIRE(validate_model(m).empty());
  m.domain_mode = DomainMode::expanding;
  CHECK(validate_model(m).empty());
}

TEST_CASE("make_identity_equality") {
  AugmentedModel m = chain_model();
  AugmentedModel id = make_identity_equality(m);
  CHECK(id.equality_mode == EqualityMode::identity);
  CHECK(id.equiv[1] == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(validate_model(id).empty());
  AugmentedModel id2 = make_identity_equality(id);
  CHECK(id2.equiv == id.equiv);
  CHECK(id2.equality_mode == id.equality_mode);
}

TEST_CASE("identity mode never reports H or congruence") {
  gen::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    KripkeFrame frame = gen::random_frame(rng, gen::pick(rng, 1, 3));
    Modes modes{DomainMode::expanding, EqualityMode::congruence};
    AugmentedModel m = gen::random_model(rng, frame, {{"P", 1}}, modes);
    AugmentedModel id = make_identity_equality(m);
    auto vs = validate_model(id);
    CHECK(!mentions(vs, "H"));
    CHECK(!mentions(vs, "congruence"));
    CHECK(vs.empty());
  }
}

TEST_CASE("single-violation mutants are caught") {
  AugmentedModel m = chain_model();
  m.domains = {{0, 1}, {0, 1}};
  m.equiv = {{{0}, {1}}, {{0}, {1}}};
  m.interp["P"] = {{{0}}, {{0}}};
  REQUIRE(validate_model(m).empty());

  SUBCASE("drop an element from a successor domain") {
    m.domains[1] = {0};
    m.equiv[1] = {{0}};
    m.interp["P"][1] = {{0}};
    CHECK(mentions(validate_model(m), "E"));
  }
  SUBCASE("coarsen the predecessor partition only") {
    m.equiv[0] = {{0, 1}};
    auto vs = validate_model(m);
    CHECK((mentions(vs, "H") || mentions(vs, "congruence")));
  }
  SUBCASE("interpretation escapes the domain") {
    m.interp["P"][0] = {{0}, {7}};
    CHECK(mentions(validate_model(m), "interp"));
  }
  SUBCASE("partition does not cover the domain") {
    m.equiv[1] = {{0}};
    CHECK(mentions(validate_model(m), "equivalence"));
  }
  SUBCASE("element in two classes") {
    m.equiv[1] = {{0, 1}, {1}};
    CHECK(mentions(validate_model(m), "equivalence"));
  }
  SUBCASE("empty domain") {
    m.domains[0] = {};
    m.equiv[0] = {};
    m.interp["P"][0] = {};
    CHECK(mentions(validate_model(m), "domains"));
  }
}

TEST_CASE("frame and model JSON round-trip") {
  AugmentedModel m = chain_model();
  KripkeFrame f2 = frame_from_json(frame_to_json(m.frame));
  CHECK(f2 == m.frame);
  AugmentedModel m2 = model_from_json(model_to_json(m));
  CHECK(m2.frame == m.frame);
  CHECK(m2.domains == m.domains);
  CHECK(m2.equiv == m.equiv);
  CHECK(m2.interp == m.interp);
  CHECK(m2.domain_mode == m.domain_mode);
  CHECK(m2.equality_mode == m.equality_mode);
}

TEST_CASE("model JSON loader rejects non-monadic interpretations") {
  json j = model_to_json(chain_model());
  j["interp"]["Q"] = {{"w", json::array({json::array({0, 0})})},
                      {"v", json::array()}};
  CHECK_THROWS_AS(model_from_json(j), LoadError);
}
