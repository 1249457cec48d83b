#include <doctest.h>

#include <atomic>

#include "nadeum/semantics.hpp"
#include "nadeum/surface.hpp"
#include "support.hpp"

using namespace nadeum;

namespace {

Signature sig_of(const char* text) {
  std::vector<Formula> fs{parse_formula(text)};
  return signature_of(fs);
}

}  // namespace

TEST_CASE("eval: connectives") {
  Interpretation in;
  in.predicates[{"A", 0}] = {false};
  in.predicates[{"B", 0}] = {false};
  CHECK(eval(parse_formula("False -> False"), in));
  CHECK_FALSE(eval(parse_formula("A \\/ B"), in));
  CHECK(eval(parse_formula("A -> B"), in));
  CHECK_FALSE(eval(parse_formula("~(A -> B)"), in));
  in.predicates[{"A", 0}] = {true};
  CHECK_FALSE(eval(parse_formula("A /\\ B"), in));
  CHECK(eval(parse_formula("A \\/ B"), in));
}

TEST_CASE("eval: quantifiers, functions and the environment") {
  Interpretation in;
  in.universe_size = 2;
  in.predicates[{"P", 1}] = {false, true};
  in.functions[{"f", 1}] = {1, 0};
  in.functions[{"c", 0}] = {0};
  CHECK(eval(parse_formula("exi x. P(x)"), in));
  CHECK_FALSE(eval(parse_formula("uni x. P(x)"), in));
  CHECK(eval(parse_formula("P(f(c))"), in));
  CHECK(eval(parse_formula("uni x. (P(x) -> ~P(f(x)))"), in));
  in.env = {1};
  CHECK(eval(parse_formula("P(#0)"), in));
  CHECK(eval_term(parse_term("f(#0)"), in) == 0);
  in.env.clear();
  CHECK_THROWS_AS(eval(parse_formula("P(#0)"), in), UnboundVariable);
  CHECK_THROWS_AS(eval(parse_formula("Q(c)"), in), MissingDenotation);
}

TEST_CASE("interpretation space: counts") {
  CHECK(InterpretationSpace(sig_of("A"), 1).count() == 2);
  CHECK(InterpretationSpace(sig_of("r(f(c))"), 2).count() == 2 * 2 * 2 * 2 * 2);
  CHECK(InterpretationSpace(sig_of("uni x. (r(x) -> r(f(x)))"), 2).count() == 16);
  CHECK(InterpretationSpace(Signature{}, 3).count() == 1);
  CHECK(table_size(3, 2) == 9);

  InterpretationSpace space(sig_of("uni x. (r(x) -> r(f(x)))"), 2);
  std::size_t visited = 0;
  space.for_each([&](const Interpretation&) {
    ++visited;
    return true;
  });
  CHECK(visited == 16);
}

TEST_CASE("interpretation space: rank order matches enumeration") {
  InterpretationSpace space(sig_of("R(c, f(c)) /\\ A"), 2);
  std::uint64_t rank = 0;
  space.for_each([&](const Interpretation& in) {
    Interpretation direct = space.at(rank++);
    CHECK(direct.functions == in.functions);
    CHECK(direct.predicates == in.predicates);
    return true;
  });
  CHECK(static_cast<double>(rank) == space.count());

  // stopping early reports the rank
  auto stopped = space.for_each([](const Interpretation& in) { return in.predicates.at({"A", 0})[0] == false; });
  REQUIRE(stopped.has_value());
  CHECK(*stopped == 16);  // A sits before the four cells of R
}

TEST_CASE("countermodels") {
  auto m = find_countermodel(parse_formula("A \\/ B"));
  REQUIRE(m.has_value());
  CHECK(m->interpretation.universe_size == 1);
  CHECK(m->interpretation.predicates.at({"A", 0}) == std::vector<bool>{false});
  CHECK(m->interpretation.predicates.at({"B", 0}) == std::vector<bool>{false});
  CHECK_FALSE(eval(m->closure, m->interpretation));

  CHECK_FALSE(find_countermodel(parse_formula("A \\/ (A -> False)")).has_value());
  CHECK_FALSE(find_countermodel(parse_formula("(A -> B) \\/ (B -> C)")).has_value());
  CHECK_FALSE(find_countermodel(parse_formula("exi x. (A(x) -> uni x. A(x))")).has_value());

  // needs two elements
  auto two = find_countermodel(parse_formula("(exi x. A(x)) -> uni x. A(x)"));
  REQUIRE(two.has_value());
  CHECK(two->interpretation.universe_size == 2);

  // open formulas are closed universally
  auto open = find_countermodel(parse_formula("A(#0) -> A(c)"));
  REQUIRE(open.has_value());
  CHECK(open->closure == parse_formula("uni x. (A(x) -> A(c))"));
}

TEST_CASE("countermodels: Hint 9 formula is valid up to size 3") {
  Formula h9 = parse_formula("(uni x. (~r(x) -> r(f(x)))) -> exi x. (r(x) /\\ r(f(f(x))))");
  CHECK_FALSE(find_countermodel(h9).has_value());
  // brute force agrees
  for (std::size_t n = 1; n <= 3; ++n) {
    InterpretationSpace space(signature_of(std::vector<Formula>{h9}), n);
    bool all = true;
    space.for_each([&](const Interpretation& in) { return all = eval(h9, in); });
    CHECK(all);
  }
}

TEST_CASE("countermodels: workers agree with the serial search") {
  const char* fs[] = {"(exi x. A(x)) -> uni x. A(x)", "R(c, f(c)) -> R(f(c), c)",
                      "uni x. (P(x) \\/ Q(x)) -> (uni x. P(x)) \\/ uni x. Q(x)",
                      // falsified only with three elements, over a space big enough to split
                      "~((exi x. (A(x) /\\ B(x))) /\\ (exi x. (A(x) /\\ ~B(x))) /\\ (exi x. ~A(x)) /\\ "
                      "exi x. R(x, x))"};
  for (const char* text : fs) {
    Formula f = parse_formula(text);
    CountermodelSearch serial, parallel;
    parallel.workers = 3;
    auto a = find_countermodel(f, serial);
    auto b = find_countermodel(f, parallel);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->interpretation.universe_size == b->interpretation.universe_size);
    CHECK(!eval(b->closure, b->interpretation));
    CHECK(a->interpretation.predicates == b->interpretation.predicates);
    CHECK(a->interpretation.functions == b->interpretation.functions);
  }
}

TEST_CASE("countermodels: budget and cancellation") {
  CountermodelSearch tight;
  tight.budget = 10;
  CHECK_THROWS_AS(find_countermodel(parse_formula("R(f(c), g(c)) -> R(c, c)"), tight), BudgetExceeded);

  CountermodelSearch cancelled;
  cancelled.cancelled = [] { return true; };
  CHECK_FALSE(find_countermodel(parse_formula("A"), cancelled).has_value());
}
