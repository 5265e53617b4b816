#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finmok/modelcheck.hpp"
#include "gen.hpp"

using namespace finmok;

namespace {

// W = {w, v}, w R1 v, D_w = {0}, D_v = {0, 1}, P = {0} at both worlds.
AugmentedModel barcan_model() {
  AugmentedModel m;
  m.frame = gen::make_chain();
  m.domains = {{0}, {0, 1}};
  m.equiv = {{{0}}, {{0}, {1}}};
  m.interp["P"] = {{{0}}, {{0}}};
  m.domain_mode = DomainMode::expanding;
  m.equality_mode = EqualityMode::congruence;
  return m;
}

}  // namespace

TEST_CASE("vacuous box with no successors") {
  AugmentedModel m;
  m.frame = gen::single_world(false);
  m.domains = {{0}};
  m.equality_mode = EqualityMode::none;
  REQUIRE(validate_model(m).empty());
  CHECK(satisfies(m, 0, Formula::Box(1, Formula::Bottom()), {}));
}

TEST_CASE("diamond finds the fresh successor element") {
  AugmentedModel m = barcan_model();
  REQUIRE(validate_model(m).empty());
  Formula f = parse_formula("<1> (exists x. ~P(x))", 1);
  CHECK(satisfies(m, 0, f, {}));
}

TEST_CASE("Barcan failure under expanding domains") {
  AugmentedModel m = barcan_model();
  CHECK(satisfies(m, 0, parse_formula("forall x. [1] P(x)", 1), {}));
  CHECK(!satisfies(m, 0, parse_formula("[1] (forall x. P(x))", 1), {}));
}

TEST_CASE("true_at quantifies free variables over D_w") {
  AugmentedModel m;
  m.frame = gen::single_world(false);
  m.domains = {{0, 1}};
  m.equiv = {{{0, 1}}};
  m.domain_mode = DomainMode::expanding;
  m.equality_mode = EqualityMode::congruence;
  REQUIRE(validate_model(m).empty());
  Formula eq = Formula::Equal("x", "y");
  CHECK(true_at(m, 0, eq));

  m.equiv = {{{0}, {1}}};
  CHECK(!true_at(m, 0, eq));
}

TEST_CASE("true_in_model and find_failure") {
  AugmentedModel m = barcan_model();
  CHECK(true_in_model(m, Formula::Top()));
  Formula bf1 = parse_formula("(forall x. [1] P(x)) -> [1] (forall x. P(x))", 1);
  CHECK(!true_in_model(m, bf1));
  CHECK(find_failure(m, bf1) == 0);
}

TEST_CASE("equality heredity holds in every validated congruence model") {
  gen::Rng rng(42);
  Formula heredity = parse_formula("x = y -> [1](x = y)", 1);
  Modes modes{DomainMode::expanding, EqualityMode::congruence};
  for (int i = 0; i < 60; ++i) {
    KripkeFrame frame = gen::random_frame(rng, gen::pick(rng, 1, 3));
    AugmentedModel m = gen::random_model(rng, frame, {{"P", 1}}, modes);
    REQUIRE(validate_model(m).empty());
    CHECK(true_in_model(m, heredity));
  }
}

TEST_CASE("converse Barcan holds in every validated model") {
  gen::Rng rng(43);
  Formula cbf = parse_formula("[1] (forall x. P(x)) -> (forall x. [1] P(x))", 1);
  for (int i = 0; i < 60; ++i) {
    KripkeFrame frame = gen::random_frame(rng, gen::pick(rng, 1, 3));
    Modes modes{i % 2 ? DomainMode::expanding : DomainMode::locally_constant,
                EqualityMode::none};
    AugmentedModel m = gen::random_model(rng, frame, {{"P", 1}}, modes);
    CHECK(true_in_model(m, cbf));
  }
}

TEST_CASE("quantifier and modal duality") {
  gen::Rng rng(44);
  gen::FormulaOpts o;
  o.max_depth = 3;
  Modes modes{DomainMode::expanding, EqualityMode::congruence};
  for (int i = 0; i < 60; ++i) {
    KripkeFrame frame = gen::random_frame(rng, gen::pick(rng, 1, 2));
    AugmentedModel m = gen::random_model(rng, frame, {{"P", 1}}, modes);
    Formula body = gen::random_formula(rng, o);
    Formula all = universal_closure(Formula::Forall("x", body));
    Formula ex = universal_closure(Formula::Exists("x", body));
    Formula not_all_not = universal_closure(
        Formula::Not(Formula::Forall("x", Formula::Not(body))));
    Formula box = universal_closure(Formula::Box(1, body));
    Formula not_dia_not = universal_closure(
        Formula::Not(Formula::Diamond(1, Formula::Not(body))));
    for (int w = 0; w < static_cast<int>(frame.worlds.size()); ++w) {
      CHECK(satisfies(m, w, ex, {}) == satisfies(m, w, not_all_not, {}));
      CHECK(satisfies(m, w, box, {}) == satisfies(m, w, not_dia_not, {}));
      (void)all;
    }
  }
}

TEST_CASE("identity mode agrees with congruence on identity partitions") {
  gen::Rng rng(45);
  gen::FormulaOpts o;
  o.max_depth = 3;
  Modes modes{DomainMode::expanding, EqualityMode::congruence};
  for (int i = 0; i < 60; ++i) {
    KripkeFrame frame = gen::random_frame(rng, gen::pick(rng, 1, 2));
    AugmentedModel m = gen::random_model(rng, frame, {{"P", 1}}, modes);
    AugmentedModel id = make_identity_equality(m);
    AugmentedModel cong_id = id;
    cong_id.equality_mode = EqualityMode::congruence;
    Formula f = universal_closure(gen::random_formula(rng, o));
    for (int w = 0; w < static_cast<int>(frame.worlds.size()); ++w)
      CHECK(satisfies(id, w, f, {}) == satisfies(cong_id, w, f, {}));
  }
}

TEST_CASE("evaluation errors") {
  AugmentedModel m = barcan_model();
  CHECK_THROWS_AS(satisfies(m, 0, Formula::Atom("P", {"z"}), {}), EvalError);
  CHECK_THROWS_AS(satisfies(m, 0, Formula::Atom("P", {"x"}), {{"x", 1}}), EvalError);
  AugmentedModel none = m;
  none.equality_mode = EqualityMode::none;
  none.equiv.clear();
  CHECK_THROWS_AS(true_at(none, 0, Formula::Equal("x", "y")), EvalError);
}
