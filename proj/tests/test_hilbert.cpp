#include <doctest.h>

#include "nadeum/codec.hpp"
#include "nadeum/hilbert.hpp"
#include "nadeum/surface.hpp"
#include "support.hpp"

#ifndef NADEUM_TEST_CORPUS
#define NADEUM_TEST_CORPUS "exercises"
#endif

using namespace nadeum;
using namespace nadeum::hilbert;

namespace {

Prop p(const char* text) { return from_formula(parse_formula(text)); }

Proof identity() {
  return codec::hilbert_proof_from_json(codec::read_file(NADEUM_TEST_CORPUS "/hilbert/identity.json"));
}

Prop random_prop(testing::Rng& rng, std::size_t depth) {
  static const std::vector<std::string> atoms{"A", "B", "C", "D"};
  if (depth == 0 || rng.chance(0.3))
    return rng.chance(0.1) ? Prop::falsity() : Prop::atom(rng.pick(atoms));
  switch (rng.below(3)) {
    case 0:
      return Prop::imp(random_prop(rng, depth - 1), random_prop(rng, depth - 1));
    case 1:
      return Prop::dis(random_prop(rng, depth - 1), random_prop(rng, depth - 1));
    default:
      return Prop::con(random_prop(rng, depth - 1), random_prop(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("axiom instances") {
  CHECK(axiom_instance(1, {{"A", p("A")}, {"B", p("A -> A")}}) == p("A -> (A -> A) -> A"));
  CHECK(axiom_instance(2, {{"A", p("A")}, {"B", p("A -> A")}, {"C", p("A")}}) ==
        p("(A -> (A -> A) -> A) -> (A -> A -> A) -> A -> A"));
  CHECK(axiom_instance(9, {{"A", p("A")}, {"B", p("B")}}) == p("(A -> B -> False) -> B -> A -> False"));
  CHECK(schema_letters(2) == "ABC");
  CHECK_THROWS_AS(axiom_schema(10), UnknownSchema);
  CHECK_THROWS_AS(axiom_instance(1, {{"A", p("A")}}), MissingLetter);
  CHECK_THROWS_AS(from_formula(parse_formula("uni x. A(x)")), NotPropositional);
  CHECK(print(p("A /\\ B -> A")) == "A /\\ B -> A");
}

TEST_CASE("truth tables") {
  CHECK(valid(p("A -> A")));
  CHECK_FALSE(valid(p("A")));
  CHECK(valid(p("((A -> B) -> A) -> A")));
  CHECK_FALSE(eval(p("A -> B"), {{"A", true}, {"B", false}}));
  for (int k = 1; k <= kSchemaCount; ++k) CHECK(valid(axiom_schema(k)));
}

TEST_CASE("schemas stay valid under random instantiation") {
  testing::Rng rng(77);
  for (int k = 1; k <= kSchemaCount; ++k)
    for (int i = 0; i < 200; ++i) {
      Instantiation inst;
      for (char letter : schema_letters(k)) inst.insert_or_assign(std::string(1, letter), random_prop(rng, 3));
      CHECK(valid(axiom_instance(k, inst)));
    }
}

TEST_CASE("the five-line identity derivation") {
  Proof proof = identity();
  REQUIRE(proof.lines.size() == 5);
  CHECK(*proof.claim() == p("A -> A"));
  hilbert::Verdict v = check(proof);
  CHECK(v.accepted);
}

TEST_CASE("mutated derivations are rejected") {
  {
    Proof swapped = identity();
    std::swap(swapped.lines[2], swapped.lines[3]);
    hilbert::Verdict v = check(swapped);
    CHECK_FALSE(v.accepted);
    CHECK(v.line == 3);
  }
  {
    // renumbered after the swap but with the citations left alone
    Proof swapped = identity();
    std::swap(swapped.lines[2], swapped.lines[3]);
    swapped.lines[2].index = 3;
    swapped.lines[3].index = 4;
    hilbert::Verdict v = check(swapped);
    CHECK_FALSE(v.accepted);
    CHECK(v.line == 5);
  }
  {
    Proof forward = identity();
    forward.lines[2].justification = ModusPonens{1, 4};
    hilbert::Verdict v = check(forward);
    CHECK_FALSE(v.accepted);
    CHECK(v.line == 3);
    CHECK(v.reason.find("forward") != std::string::npos);
  }
  {
    Proof wrong = identity();
    wrong.lines[4].justification = ModusPonens{3, 2};
    hilbert::Verdict v = check(wrong);
    CHECK_FALSE(v.accepted);
    CHECK(v.line == 5);
  }
  {
    Proof bad_axiom{{Line{1, p("A"), AxiomRef{1, {{"A", p("A")}, {"B", p("A")}}}}}};
    hilbert::Verdict v = check(bad_axiom);
    CHECK_FALSE(v.accepted);
    CHECK(v.line == 1);
  }
  CHECK_FALSE(check(Proof{}).accepted);
}

TEST_CASE("modus ponens closure") {
  Proof proof = identity();
  // weakening the conclusion by one more axiom and MP step
  proof.lines.push_back(Line{6, p("(A -> A) -> B -> A -> A"),
                             AxiomRef{1, {{"A", p("A -> A")}, {"B", p("B")}}}});
  proof.lines.push_back(Line{7, p("B -> A -> A"), ModusPonens{6, 5}});
  CHECK(check(proof).accepted);
}

TEST_CASE("codec round trip") {
  Proof proof = identity();
  Proof back = codec::hilbert_proof_from_json(codec::to_json(proof));
  CHECK(check(back).accepted);
  REQUIRE(back.lines.size() == proof.lines.size());
  for (std::size_t i = 0; i < back.lines.size(); ++i) CHECK(back.lines[i].formula == proof.lines[i].formula);
  hilbert::Verdict v = check(Proof{});
  codec::json j = codec::to_json(v);
  CHECK(j["status"] == "rejected");
}
