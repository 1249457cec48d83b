#include <doctest.h>

#include <atomic>
#include <chrono>

#include "nadeum/prover.hpp"
#include "nadeum/surface.hpp"
#include "support.hpp"

using namespace nadeum;
using Status = Feedback::Status;

namespace {

Goal theorem(const char* text) { return Goal{{}, parse_formula(text)}; }

const char* kTests[] = {
    "False -> False",
    "(A -> B) -> A -> B",
    "A /\\ (A -> B) -> B",
    "(uni x. A(x)) -> A(c)",
    "A -> B -> A",
    "A -> (A -> False) -> False",
    "A /\\ B -> C -> A /\\ C",
    "(uni x. uni y. A(x, y)) -> uni x. A(x, x)",
};

}  // namespace

TEST_CASE("config validation") {
  SearchConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.max_depth = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.time_budget = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.countermodel_max_universe = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("tests 1-8 are provable at the default configuration") {
  for (const char* text : kTests) {
    INFO(text);
    Feedback fb = prove(theorem(text));
    CHECK(fb.status == Status::Provable);
    REQUIRE(fb.script.has_value());
    CHECK(replay(*fb.script).complete());
  }
}

TEST_CASE("drinker paradox") {
  Feedback fb = prove(theorem("exi x. (A(x) -> uni x. A(x))"));
  CHECK(fb.status == Status::Provable);
  REQUIRE(fb.script);
  CHECK(replay(*fb.script).complete());
}

TEST_CASE("classical and minimal search differ on excluded middle") {
  SearchConfig classical, minimal;
  minimal.classical = false;
  for (const char* text : {"A \\/ (A -> False)", "(A -> B) \\/ (B -> C)", "((A -> B) -> A) -> A"}) {
    INFO(text);
    CHECK(prove(theorem(text), classical).status == Status::Provable);
    Feedback fb = prove(theorem(text), minimal);
    CHECK(fb.status == Status::Unknown);
    CHECK_FALSE(fb.countermodel.has_value());
  }
  // intuitionistically fine formulas are still found without Boole
  CHECK(prove(theorem("A -> (A -> False) -> False"), minimal).status == Status::Provable);
}

TEST_CASE("refutation") {
  Feedback fb = prove(theorem("A"));
  CHECK(fb.status == Status::Refuted);
  REQUIRE(fb.countermodel);
  CHECK(fb.countermodel->interpretation.universe_size == 1);

  Feedback two = prove(theorem("(exi x. A(x)) -> uni x. A(x)"));
  CHECK(two.status == Status::Refuted);
  REQUIRE(two.countermodel);
  CHECK_FALSE(eval(two.countermodel->closure, two.countermodel->interpretation));
}

TEST_CASE("sequents with assumptions") {
  Goal g{{parse_formula("A -> B"), parse_formula("A")}, parse_formula("B")};
  auto script = search_proof(g, {});
  REQUIRE(script);
  CHECK(script->assumptions == g.assumptions);
  CHECK(replay(*script).complete());
  // oldest assumption outermost, so Imp_I steps rebuild the same list
  CHECK(sequent_formula(g) == parse_formula("A -> (A -> B) -> B"));

  Feedback refuted = prove(Goal{{parse_formula("A -> B")}, parse_formula("A")});
  CHECK(refuted.status == Status::Refuted);
}

TEST_CASE("hints per goal") {
  CHECK(hint(ProofState{{}, 3}).empty());

  ProofState s = apply_rule(initial_state(parse_formula("A -> A")), {Rule::Imp_I, {}});
  auto fbs = hint(s);
  REQUIRE(fbs.size() == 1);
  CHECK(fbs[0].status == Status::Provable);
  REQUIRE(fbs[0].script);
  CHECK(fbs[0].script->assumptions == s.goals[0].assumptions);

  auto bottom = hint(initial_state(Formula::falsity()));
  REQUIRE(bottom.size() == 1);
  CHECK(bottom[0].status != Status::Provable);

  ProofState two = apply_rule(initial_state(parse_formula("(A -> A) /\\ B")), {Rule::Con_I, {}});
  auto mixed = hint(two);
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].status == Status::Provable);
  CHECK(mixed[1].status == Status::Refuted);
}

TEST_CASE("search honours cancellation and the time budget") {
  std::atomic<bool> cancel{true};
  Goal hard = theorem("(uni x. (~r(x) -> r(f(x)))) -> exi x. (r(x) /\\ r(f(f(x))))");
  CHECK_FALSE(search_proof(hard, {}, &cancel).has_value());

  SearchConfig quick;
  quick.time_budget = std::chrono::milliseconds(50);
  auto started = std::chrono::steady_clock::now();
  Feedback fb = prove(hard, quick);
  auto elapsed = std::chrono::steady_clock::now() - started;
  CHECK(fb.status == Status::Unknown);
  CHECK(elapsed < std::chrono::seconds(2));
}

TEST_CASE("Hint 9 is found with deeper witness terms") {
  SearchConfig cfg;
  cfg.max_term_depth = 3;
  cfg.time_budget = std::chrono::milliseconds(30000);
  auto script = search_proof(theorem("(uni x. (~r(x) -> r(f(x)))) -> exi x. (r(x) /\\ r(f(f(x))))"), cfg);
  REQUIRE(script);
  CHECK(replay(*script).complete());
}

TEST_CASE("the prover never refutes a generated theorem") {
  testing::TheoremGenerator gen(4321);
  SearchConfig cfg;
  cfg.time_budget = std::chrono::milliseconds(200);
  cfg.countermodel_max_universe = 2;
  std::size_t proved = 0;
  for (int i = 0; i < 60; ++i) {
    ProofScript s = gen.theorem(3).script();
    INFO(print_formula(s.root));
    Feedback fb = prove(s.goal(), cfg);
    CHECK(fb.status != Status::Refuted);
    if (fb.status == Status::Provable) {
      ++proved;
      CHECK(replay(*fb.script).complete());
    }
  }
  CHECK(proved > 30);
}
