#ifndef NADEUM_TESTS_SUPPORT_HPP_
#define NADEUM_TESTS_SUPPORT_HPP_

// Random generators shared by the property tests and the acceptance suite.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nadeum/kernel.hpp"
#include "nadeum/syntax.hpp"

namespace nadeum::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

// Symbols the generators draw from.
struct Vocabulary {
  std::vector<std::string> atoms{"A", "B", "C"};
  std::vector<std::string> unary{"P", "Q"};
  std::vector<std::string> binary{"R"};
  std::vector<std::string> constants{"a", "b"};
  std::vector<std::string> functions{"f"};  // unary

  // Small enough that every signature fits the size-3 countermodel budget.
  static Vocabulary compact() { return {{"A", "B"}, {"P", "Q"}, {"R"}, {"a", "b"}, {}}; }
};

// Closed terms plus free variables below `bound`.
inline Term random_term(Rng& rng, std::size_t bound, std::size_t depth, const Vocabulary& v) {
  std::size_t choice = rng.below(depth > 0 && !v.functions.empty() ? 4 : 3);
  if (choice == 0 && bound > 0) return Term::var(rng.below(bound));
  if (choice == 3) return Term::fun(rng.pick(v.functions), {random_term(rng, bound, depth - 1, v)});
  return Term::fun(rng.pick(v.constants));
}

inline Term random_term(Rng& rng, std::size_t bound, std::size_t depth = 1) {
  return random_term(rng, bound, depth, Vocabulary{});
}

// Free variables stay below `bound`, so bound = 0 yields sentences.
inline Formula random_formula(Rng& rng, std::size_t depth, std::size_t bound, const Vocabulary& v) {
  if (depth == 0 || rng.chance(0.25)) {
    std::size_t kinds = v.binary.empty() ? 4 : 5;
    switch (rng.below(bound > 0 ? kinds + 1 : kinds)) {
      case 0:
        return Formula::falsity();
      case 1:
        return Formula::pre(rng.pick(v.atoms));
      case 2:
        return Formula::pre(rng.pick(v.unary), {random_term(rng, bound, 1, v)});
      case 3:
        return Formula::pre(rng.pick(v.unary), {random_term(rng, bound, 0, v)});
      default:
        if (v.binary.empty()) return Formula::pre(rng.pick(v.unary), {random_term(rng, bound, 0, v)});
        return Formula::pre(rng.pick(v.binary),
                            {random_term(rng, bound, 0, v), random_term(rng, bound, 0, v)});
    }
  }
  switch (rng.below(6)) {
    case 0:
      return Formula::imp(random_formula(rng, depth - 1, bound, v), random_formula(rng, depth - 1, bound, v));
    case 1:
      return Formula::dis(random_formula(rng, depth - 1, bound, v), random_formula(rng, depth - 1, bound, v));
    case 2:
      return Formula::con(random_formula(rng, depth - 1, bound, v), random_formula(rng, depth - 1, bound, v));
    case 3:
      return Formula::neg(random_formula(rng, depth - 1, bound, v));
    case 4:
      return Formula::exi(random_formula(rng, depth - 1, bound + 1, v));
    default:
      return Formula::uni(random_formula(rng, depth - 1, bound + 1, v));
  }
}

inline Formula random_formula(Rng& rng, std::size_t depth, std::size_t bound = 0) {
  return random_formula(rng, depth, bound, Vocabulary{});
}

// Replaces occurrences of the constant c by the variable bound just outside
// the formula; `keep` decides occurrence by occurrence. For a sentence p,
// sub(0, c, abstract(c, p)) == p.
template <class Keep>
Term abstract_term(const std::string& c, const Term& t, std::size_t depth, Keep& keep) {
  if (t.is_var()) return t;
  if (t.name() == c && t.args().empty() && keep()) return Term::var(depth);
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(abstract_term(c, a, depth, keep));
  return Term::fun(t.name(), std::move(args));
}

template <class Keep>
Formula abstract_constant(const std::string& c, const Formula& p, Keep& keep,
                          std::size_t depth = 0) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return p;
    case FormulaKind::Pre: {
      std::vector<Term> args;
      for (const auto& a : p.args()) args.push_back(abstract_term(c, a, depth, keep));
      return Formula::pre(p.name(), std::move(args));
    }
    case FormulaKind::Imp:
      return Formula::imp(abstract_constant(c, p.lhs(), keep, depth),
                          abstract_constant(c, p.rhs(), keep, depth));
    case FormulaKind::Dis:
      return Formula::dis(abstract_constant(c, p.lhs(), keep, depth),
                          abstract_constant(c, p.rhs(), keep, depth));
    case FormulaKind::Con:
      return Formula::con(abstract_constant(c, p.lhs(), keep, depth),
                          abstract_constant(c, p.rhs(), keep, depth));
    case FormulaKind::Exi:
      return Formula::exi(abstract_constant(c, p.body(), keep, depth + 1));
    case FormulaKind::Uni:
      return Formula::uni(abstract_constant(c, p.body(), keep, depth + 1));
  }
  return p;
}

inline Formula abstract_all(const std::string& c, const Formula& p) {
  auto all = [] { return true; };
  return abstract_constant(c, p, all);
}

// A derivation tree built forwards; the script lists the rule of every node
// in preorder, which is exactly the order backward application consumes them.
struct Derivation {
  Goal goal;
  RuleApplication app;
  std::vector<Derivation> premises;

  const Formula& conclusion() const { return goal.conclusion; }

  void collect(std::vector<RuleApplication>& out) const {
    out.push_back(app);
    for (const auto& d : premises) d.collect(out);
  }
  ProofScript script() const {
    ProofScript s{goal.conclusion, goal.assumptions, {}};
    collect(s.steps);
    return s;
  }
};

// Builds random derivations from the rules read forwards, so every result is
// a theorem by construction. Witness constants k1, k2, ... never occur in the
// formula pool, which keeps the eigenvariable conditions satisfiable.
class TheoremGenerator {
 public:
  explicit TheoremGenerator(std::uint64_t seed, std::size_t formula_depth = 2,
                            Vocabulary vocabulary = {})
      : rng_(seed), formula_depth_(formula_depth), vocabulary_(std::move(vocabulary)) {}

  Derivation theorem(std::size_t depth = 4) {
    witness_constants_.clear();
    return derive({}, depth);
  }

  Rng& rng() { return rng_; }

 private:
  using Z = std::vector<Formula>;

  static Z cons(const Formula& p, const Z& z) {
    Z out{p};
    out.insert(out.end(), z.begin(), z.end());
    return out;
  }

  static RuleApplication app(Rule r, RuleParams params = {}) { return {r, std::move(params)}; }

  // The vocabulary plus the witnesses currently in scope.
  Vocabulary scope() const {
    Vocabulary v = vocabulary_;
    v.constants.insert(v.constants.end(), witness_constants_.begin(), witness_constants_.end());
    return v;
  }

  Formula pool_formula() { return random_formula(rng_, formula_depth_, 0, scope()); }

  Term pool_term() { return random_term(rng_, 0, 1, scope()); }

  Derivation assume(const Z& z, const Formula& p) { return {Goal{z, p}, app(Rule::Assume), {}}; }

  Derivation imp_i(const Z& z, const Formula& antecedent, std::size_t depth) {
    Derivation d = derive(cons(antecedent, z), depth);
    Formula concl = Formula::imp(antecedent, d.conclusion());
    return {Goal{z, concl}, app(Rule::Imp_I), {std::move(d)}};
  }

  const Formula* find_in(const Z& z, FormulaKind kind) {
    std::vector<const Formula*> hits;
    for (const auto& f : z)
      if (f.is(kind)) hits.push_back(&f);
    return hits.empty() ? nullptr : hits[rng_.below(hits.size())];
  }

  const Formula* find_double_negation(const Z& z) {
    for (const auto& f : z)
      if (f.is(FormulaKind::Imp) && f.rhs().is(FormulaKind::Falsity) &&
          f.lhs().is(FormulaKind::Imp) && f.lhs().rhs().is(FormulaKind::Falsity))
        return &f;
    return nullptr;
  }

  std::string fresh_witness() { return "k" + std::to_string(++witness_); }

  Derivation derive(const Z& z, std::size_t depth) {
    if (depth == 0) {
      if (!z.empty()) return assume(z, rng_.pick(z));
      return imp_i(z, pool_formula(), 0);
    }
    switch (rng_.below(13)) {
      case 0:
        if (!z.empty()) return assume(z, rng_.pick(z));
        [[fallthrough]];
      case 1: {
        // Occasionally discharge a double negation so Boole has material.
        Formula a = pool_formula();
        if (rng_.chance(0.3)) a = Formula::neg(Formula::neg(a));
        return imp_i(z, a, depth - 1);
      }
      case 2: {
        Derivation l = derive(z, depth - 1), r = derive(z, depth - 1);
        Formula concl = Formula::con(l.conclusion(), r.conclusion());
        return {Goal{z, concl}, app(Rule::Con_I), {std::move(l), std::move(r)}};
      }
      case 3: {
        Derivation d = derive(z, depth - 1);
        if (!d.conclusion().is(FormulaKind::Con)) {
          Derivation other = derive(z, depth - 1);
          Formula c = Formula::con(d.conclusion(), other.conclusion());
          d = {Goal{z, c}, app(Rule::Con_I), {std::move(d), std::move(other)}};
        }
        Formula p = d.conclusion().lhs(), q = d.conclusion().rhs();
        if (rng_.chance(0.5))
          return {Goal{z, p}, app(Rule::Con_E1, {.q = q}), {std::move(d)}};
        return {Goal{z, q}, app(Rule::Con_E2, {.p = p}), {std::move(d)}};
      }
      case 4: {
        Derivation d = derive(z, depth - 1);
        Formula other = pool_formula();
        bool left = rng_.chance(0.5);
        Formula concl = left ? Formula::dis(d.conclusion(), other) : Formula::dis(other, d.conclusion());
        return {Goal{z, concl}, app(left ? Rule::Dis_I1 : Rule::Dis_I2), {std::move(d)}};
      }
      case 5: {
        // Cut: derive p, derive p -> q under p, eliminate.
        Derivation minor = derive(z, depth - 1);
        Formula p = minor.conclusion();
        Derivation major = imp_i(z, p, depth - 1);
        Formula q = major.conclusion().rhs();
        return {Goal{z, q}, app(Rule::Imp_E, {.p = p}), {std::move(major), std::move(minor)}};
      }
      case 6: {
        const Formula* d = find_in(z, FormulaKind::Dis);
        if (!d) break;
        Formula p = d->lhs(), q = d->rhs();
        Derivation left = derive(cons(p, z), depth - 1);
        Derivation right = derive(cons(q, z), depth - 1);
        Formula r = Formula::dis(left.conclusion(), right.conclusion());
        Derivation l2{Goal{cons(p, z), r}, app(Rule::Dis_I1), {std::move(left)}};
        Derivation r2{Goal{cons(q, z), r}, app(Rule::Dis_I2), {std::move(right)}};
        return {Goal{z, r},
                app(Rule::Dis_E, {.p = p, .q = q}),
                {assume(z, *d), std::move(l2), std::move(r2)}};
      }
      case 7: {
        // Boole via a double negation or falsity among the assumptions.
        const Formula* nn = find_double_negation(z);
        bool has_false = std::find(z.begin(), z.end(), Formula::falsity()) != z.end();
        if (nn) {
          Formula p = nn->lhs().lhs();
          Z inner = cons(Formula::neg(p), z);
          Derivation bottom{Goal{inner, Formula::falsity()},
                            app(Rule::Imp_E, {.p = Formula::neg(p)}),
                            {assume(inner, *nn), assume(inner, Formula::neg(p))}};
          return {Goal{z, p}, app(Rule::Boole), {std::move(bottom)}};
        }
        if (has_false) {
          Formula p = pool_formula();
          Z inner = cons(Formula::neg(p), z);
          return {Goal{z, p}, app(Rule::Boole), {assume(inner, Formula::falsity())}};
        }
        break;
      }
      case 8: {
        const Formula* u = find_in(z, FormulaKind::Uni);
        if (!u) break;
        Term t = pool_term();
        Formula concl = sub(0, t, u->body());
        return {Goal{z, concl}, app(Rule::Uni_E, {.p = u->body(), .t = t}), {assume(z, *u)}};
      }
      case 9: {
        Derivation d = derive(z, depth - 1);
        std::set<Term> ground;
        collect_ground_terms(d.conclusion(), ground);
        std::vector<Term> candidates(ground.begin(), ground.end());
        Term t = candidates.empty() ? pool_term() : rng_.pick(candidates);
        auto keep = [this] { return rng_.chance(0.7); };
        Formula body = lift_formula(d.conclusion());
        if (t.is_fun() && t.args().empty()) body = abstract_constant(t.name(), d.conclusion(), keep);
        if (!(sub(0, t, body) == d.conclusion())) body = lift_formula(d.conclusion());
        return {Goal{z, Formula::exi(body)}, app(Rule::Exi_I, {.t = t}), {std::move(d)}};
      }
      case 10: {
        // Uni_I over a witness that the subderivation may mention freely.
        std::string c = fresh_witness();
        witness_constants_.push_back(c);
        Derivation d = derive(z, depth - 1);
        witness_constants_.pop_back();
        Formula body = abstract_all(c, d.conclusion());
        return {Goal{z, Formula::uni(body)}, app(Rule::Uni_I, {.c = c}), {std::move(d)}};
      }
      case 11: {
        const Formula* e = find_in(z, FormulaKind::Exi);
        if (!e) break;
        std::string c = fresh_witness();
        Formula instance = sub(0, Term::fun(c), e->body());
        witness_constants_.push_back(c);
        Derivation d = derive(cons(instance, z), depth - 1);
        witness_constants_.pop_back();
        if (!news(c, {d.conclusion()})) {
          Formula body = abstract_all(c, d.conclusion());
          Z inner = cons(instance, z);
          d = {Goal{inner, Formula::exi(body)}, app(Rule::Exi_I, {.t = Term::fun(c)}), {std::move(d)}};
        }
        Formula concl = d.conclusion();
        return {Goal{z, concl},
                app(Rule::Exi_E, {.p = e->body(), .c = c}),
                {assume(z, *e), std::move(d)}};
      }
      default: {
        // Universal antecedent so Uni_E has material.
        Formula body = random_formula(rng_, formula_depth_, 1, scope());
        return imp_i(z, Formula::uni(body), depth - 1);
      }
    }
    return imp_i(z, pool_formula(), depth - 1);
  }

  Rng rng_;
  std::size_t formula_depth_;
  Vocabulary vocabulary_;
  std::vector<std::string> witness_constants_;
  std::size_t witness_ = 0;
};

// Random session histories: applies of rules that are valid in the projected
// state, interleaved with undos and occasional rejected attempts (which are
// never recorded, matching the service).
inline SessionHistory random_history(Rng& rng, const ProofScript& script, std::size_t length) {
  SessionHistory h{script.root, {}};
  std::vector<RuleApplication> noise;
  for (const auto& s : script.steps) noise.push_back(s);
  noise.push_back({Rule::Imp_I, {}});
  noise.push_back({Rule::Boole, {}});
  noise.push_back({Rule::Con_I, {}});
  for (std::size_t i = 0; i < length; ++i) {
    if (!net_steps(h).empty() && rng.chance(0.3)) {
      h = undo(h);
      continue;
    }
    std::size_t k = net_steps(h).size();
    const RuleApplication& r =
        k < script.steps.size() && rng.chance(0.7) ? script.steps[k] : rng.pick(noise);
    try {
      h = record(h, r);
    } catch (const RuleError&) {
    }
  }
  return h;
}

}  // namespace nadeum::testing

#endif  // NADEUM_TESTS_SUPPORT_HPP_
