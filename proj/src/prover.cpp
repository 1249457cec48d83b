#include "nadeum/prover.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace nadeum {

namespace {

using Steps = std::vector<RuleApplication>;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxCandidates = 24;
constexpr std::int64_t kMaxBudgetMs = 1'000'000'000;

RuleApplication step(Rule r, RuleParams params = {}) { return RuleApplication{r, std::move(params)}; }

Steps concat(std::initializer_list<const Steps*> parts) {
  Steps out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// Derive `d` from the current assumptions with `derivation`, then continue
// under d::z with `rest`:  Imp_E(d); Imp_I; rest; derivation.
Steps with_have(const Formula& d, const Steps& rest, const Steps& derivation) {
  Steps out{step(Rule::Imp_E, {.p = d}), step(Rule::Imp_I)};
  out.insert(out.end(), rest.begin(), rest.end());
  out.insert(out.end(), derivation.begin(), derivation.end());
  return out;
}

struct Branch {
  std::vector<Formula> z;  // kernel order, most recent first
  std::unordered_set<Formula, FormulaHash> zset;
  std::unordered_set<Formula, FormulaHash> expanded;

  bool has(const Formula& p) const { return zset.count(p) != 0; }

  Branch plus(const Formula& p) const {
    Branch b = *this;
    if (b.zset.insert(p).second) b.z.insert(b.z.begin(), p);
    return b;
  }
};

using SequentKey = std::pair<std::vector<Formula>, Formula>;

class Search {
 public:
  Search(const SearchConfig& cfg, const std::atomic<bool>* cancel)
      : cfg_(cfg),
        cancel_(cancel),
        deadline_(Clock::now() + std::min(cfg.time_budget, std::chrono::milliseconds(kMaxBudgetMs))) {}

  std::optional<Steps> run(const Goal& goal) {
    Branch root;
    for (auto it = goal.assumptions.rbegin(); it != goal.assumptions.rend(); ++it)
      root = root.plus(*it);
    root.z = goal.assumptions;
    try {
      for (std::size_t depth = 0; depth <= cfg_.max_depth; ++depth) {
        failures_.clear();
        if (auto steps = prove(root, goal.conclusion, depth)) return steps;
        if (!hit_bound_) break;  // nothing was cut off: deeper search is pointless
        hit_bound_ = false;
      }
    } catch (const Abort&) {
    }
    return std::nullopt;
  }

 private:
  struct Abort {};

  void poll() {
    if ((++polls_ & 0x3f) != 0) return;
    if ((cancel_ && cancel_->load()) || Clock::now() > deadline_) throw Abort{};
  }

  std::vector<Formula> scope(const Branch& b, const Formula& goal) const {
    std::vector<Formula> all = b.z;
    all.push_back(goal);
    return all;
  }

  std::string fresh(const Branch& b, const Formula& goal) const {
    auto all = scope(b, goal);
    return fresh_constant(all);
  }

  // Ground terms of the sequent, closed under the function symbols up to the
  // configured term depth; a fresh constant if the sequent has none.
  std::vector<Term> candidates(const Branch& b, const Formula& goal) const {
    std::set<Term> ground;
    for (const auto& p : b.z) collect_ground_terms(p, ground);
    collect_ground_terms(goal, ground);
    std::vector<Term> out;
    for (const auto& t : ground)
      if (term_depth(t) <= cfg_.max_term_depth) out.push_back(t);
    if (out.empty()) out.push_back(Term::fun(fresh(b, goal)));

    auto all = scope(b, goal);
    Signature sig = signature_of(all);
    std::vector<Symbol> functions;
    for (const auto& s : sig)
      if (s.kind == Symbol::Kind::Function && s.arity > 0) functions.push_back(s);

    std::set<Term> seen(out.begin(), out.end());
    for (std::size_t round = 0; round < cfg_.max_term_depth && out.size() < kMaxCandidates; ++round) {
      std::vector<Term> layer = out;
      for (const auto& f : functions) {
        if (f.arity != 1) continue;  // unary closure is enough for witness synthesis
        for (const auto& t : layer) {
          Term ft = Term::fun(f.name, {t});
          if (term_depth(ft) > cfg_.max_term_depth || seen.count(ft)) continue;
          seen.insert(ft);
          out.push_back(ft);
          if (out.size() >= kMaxCandidates) break;
        }
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
      return term_depth(a) < term_depth(b);
    });
    return out;
  }

  SequentKey key(const Branch& b, const Formula& goal) const {
    std::vector<Formula> zs(b.zset.begin(), b.zset.end());
    std::sort(zs.begin(), zs.end());
    return {std::move(zs), goal};
  }

  // ---- the search proper

  std::optional<Steps> prove(const Branch& b, const Formula& goal, std::size_t budget) {
    poll();

    if (b.has(goal)) return Steps{step(Rule::Assume)};
    if (b.has(Formula::falsity()) && cfg_.classical)
      return Steps{step(Rule::Boole), step(Rule::Assume)};

    // Invertible right rules.
    switch (goal.kind()) {
      case FormulaKind::Imp: {
        auto r = prove(b.plus(goal.lhs()), goal.rhs(), budget);
        if (!r) return std::nullopt;
        Steps head{step(Rule::Imp_I)};
        return concat({&head, &*r});
      }
      case FormulaKind::Con: {
        auto left = prove(b, goal.lhs(), budget);
        if (!left) return std::nullopt;
        auto right = prove(b, goal.rhs(), budget);
        if (!right) return std::nullopt;
        Steps head{step(Rule::Con_I)};
        return concat({&head, &*left, &*right});
      }
      case FormulaKind::Uni: {
        std::string c = fresh(b, goal);
        auto r = prove(b, sub(0, Term::fun(c), goal.body()), budget);
        if (!r) return std::nullopt;
        Steps head{step(Rule::Uni_I, {.c = c})};
        return concat({&head, &*r});
      }
      default:
        break;
    }

    // Invertible left rules, one at a time.
    for (const auto& h : b.z) {
      if (b.expanded.count(h)) continue;
      if (auto r = expand_left(b, h, goal, budget)) return *r;
    }

    return choose(b, goal, budget);
  }

  // Returns nullopt if `h` has nothing to contribute, otherwise the (possibly
  // failed) outcome of the committed step.
  std::optional<std::optional<Steps>> expand_left(const Branch& b, const Formula& h,
                                                  const Formula& goal, std::size_t budget) {
    switch (h.kind()) {
      case FormulaKind::Con: {
        Branch next = b;
        next.expanded.insert(h);
        const Formula& a = h.lhs();
        const Formula& x = h.rhs();
        Steps da{step(Rule::Con_E1, {.q = x}), step(Rule::Assume)};
        Steps dx{step(Rule::Con_E2, {.p = a}), step(Rule::Assume)};
        bool add_a = !b.has(a);
        bool add_x = !b.has(x) && !(a == x);
        Branch inner = next;
        if (add_a) inner = inner.plus(a);
        if (add_x) inner = inner.plus(x);
        auto r = prove(inner, goal, budget);
        if (!r) return std::optional<Steps>{};
        Steps out = *r;
        if (add_x) out = with_have(x, out, dx);
        if (add_a) out = with_have(a, out, da);
        return std::optional<Steps>{out};
      }
      case FormulaKind::Exi: {
        Branch next = b;
        next.expanded.insert(h);
        std::vector<Formula> all = scope(b, goal);
        all.push_back(h.body());
        std::string c = fresh_constant(all);
        auto r = prove(next.plus(sub(0, Term::fun(c), h.body())), goal, budget);
        if (!r) return std::optional<Steps>{};
        Steps head{step(Rule::Exi_E, {.p = h.body(), .c = c}), step(Rule::Assume)};
        return std::optional<Steps>{concat({&head, &*r})};
      }
      case FormulaKind::Dis: {
        Branch next = b;
        next.expanded.insert(h);
        auto left = prove(next.plus(h.lhs()), goal, budget);
        if (!left) return std::optional<Steps>{};
        auto right = prove(next.plus(h.rhs()), goal, budget);
        if (!right) return std::optional<Steps>{};
        Steps head{step(Rule::Dis_E, {.p = h.lhs(), .q = h.rhs()}), step(Rule::Assume)};
        return std::optional<Steps>{concat({&head, &*left, &*right})};
      }
      case FormulaKind::Imp: {
        // Modus ponens with an antecedent already at hand.
        if (!b.has(h.lhs()) || b.has(h.rhs())) return std::nullopt;
        Steps d{step(Rule::Imp_E, {.p = h.lhs()}), step(Rule::Assume), step(Rule::Assume)};
        if (h.rhs() == goal) return std::optional<Steps>{d};
        Branch next = b;
        next.expanded.insert(h);
        auto r = prove(next.plus(h.rhs()), goal, budget);
        if (!r) return std::optional<Steps>{};
        return std::optional<Steps>{with_have(h.rhs(), *r, d)};
      }
      default:
        return std::nullopt;
    }
  }

  std::optional<Steps> choose(const Branch& b, const Formula& goal, std::size_t budget) {
    if (budget == 0) {
      hit_bound_ = true;
      return std::nullopt;
    }
    SequentKey k = key(b, goal);
    if (std::find(ancestors_.begin(), ancestors_.end(), k) != ancestors_.end()) {
      ++loop_prunes_;
      return std::nullopt;
    }
    if (auto it = failures_.find(k); it != failures_.end() && it->second >= budget)
      return std::nullopt;

    std::size_t prunes_before = loop_prunes_;
    ancestors_.push_back(k);
    auto result = alternatives(b, goal, budget - 1);
    ancestors_.pop_back();
    if (!result && loop_prunes_ == prunes_before) {
      auto& rec = failures_[std::move(k)];
      rec = std::max(rec, budget);
    }
    return result;
  }

  std::optional<Steps> alternatives(const Branch& b, const Formula& goal, std::size_t budget) {
    std::vector<Term> terms = candidates(b, goal);

    // Instances of universal assumptions that close the goal.
    for (const auto& h : b.z) {
      if (!h.is(FormulaKind::Uni)) continue;
      for (const auto& t : terms)
        if (sub(0, t, h.body()) == goal)
          return Steps{step(Rule::Uni_E, {.p = h.body(), .t = t}), step(Rule::Assume)};
    }

    // Implications whose consequent is the goal.
    for (const auto& h : b.z) {
      if (!h.is(FormulaKind::Imp) || !(h.rhs() == goal) || h.lhs() == goal) continue;
      if (auto r = prove(b, h.lhs(), budget)) {
        Steps head{step(Rule::Imp_E, {.p = h.lhs()}), step(Rule::Assume)};
        return concat({&head, &*r});
      }
    }

    if (goal.is(FormulaKind::Dis)) {
      if (auto r = prove(b, goal.lhs(), budget)) {
        Steps head{step(Rule::Dis_I1)};
        return concat({&head, &*r});
      }
      if (auto r = prove(b, goal.rhs(), budget)) {
        Steps head{step(Rule::Dis_I2)};
        return concat({&head, &*r});
      }
    }

    if (goal.is(FormulaKind::Exi)) {
      for (const auto& t : terms) {
        if (auto r = prove(b, sub(0, t, goal.body()), budget)) {
          Steps head{step(Rule::Exi_I, {.t = t})};
          return concat({&head, &*r});
        }
      }
    }

    // New instances of universal assumptions.
    for (const auto& h : b.z) {
      if (!h.is(FormulaKind::Uni)) continue;
      for (const auto& t : terms) {
        Formula inst = sub(0, t, h.body());
        if (b.has(inst)) continue;
        if (auto r = prove(b.plus(inst), goal, budget)) {
          Steps d{step(Rule::Uni_E, {.p = h.body(), .t = t}), step(Rule::Assume)};
          return with_have(inst, *r, d);
        }
      }
    }

    // Left implication: prove the antecedent, then use the consequent.
    for (const auto& h : b.z) {
      if (!h.is(FormulaKind::Imp) || b.has(h.rhs()) || h.rhs() == goal) continue;
      if (h.lhs() == goal || h.lhs().is(FormulaKind::Falsity)) continue;
      auto ante = prove(b, h.lhs(), budget);
      if (!ante) continue;
      auto rest = prove(b.plus(h.rhs()), goal, budget);
      if (!rest) continue;
      Steps head{step(Rule::Imp_E, {.p = h.lhs()}), step(Rule::Assume)};
      Steps d = concat({&head, &*ante});
      return with_have(h.rhs(), *rest, d);
    }

    if (cfg_.classical && !goal.is(FormulaKind::Falsity)) {
      Formula negated = Formula::neg(goal);
      if (!b.has(negated)) {
        if (auto r = prove(b.plus(negated), Formula::falsity(), budget)) {
          Steps head{step(Rule::Boole)};
          return concat({&head, &*r});
        }
      }
    }
    return std::nullopt;
  }

  const SearchConfig& cfg_;
  const std::atomic<bool>* cancel_;
  Clock::time_point deadline_;
  std::size_t polls_ = 0;
  std::size_t loop_prunes_ = 0;
  bool hit_bound_ = false;
  std::vector<SequentKey> ancestors_;
  std::map<SequentKey, std::size_t> failures_;
};

}  // namespace

void validate(const SearchConfig& cfg) {
  if (cfg.max_depth == 0 || cfg.max_term_depth == 0 || cfg.time_budget.count() <= 0 ||
      cfg.countermodel_max_universe == 0)
    throw std::invalid_argument("search bounds must be at least 1");
}

std::string_view status_name(Feedback::Status s) {
  switch (s) {
    case Feedback::Status::Provable:
      return "provable";
    case Feedback::Status::Refuted:
      return "refuted";
    case Feedback::Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<ProofScript> search_proof(const Goal& goal, const SearchConfig& cfg,
                                        const std::atomic<bool>* cancel) {
  validate(cfg);
  Search search(cfg, cancel);
  auto steps = search.run(goal);
  if (!steps) return std::nullopt;
  ProofScript script{goal.conclusion, goal.assumptions, std::move(*steps)};
  if (!replay(script).complete()) return std::nullopt;
  return script;
}

Formula sequent_formula(const Goal& goal) {
  Formula f = goal.conclusion;
  for (auto it = goal.assumptions.begin(); it != goal.assumptions.end(); ++it)
    f = Formula::imp(*it, f);
  return f;
}

Feedback prove(const Goal& goal, const SearchConfig& cfg) {
  validate(cfg);
  std::atomic<bool> stop{false};

  auto refuter = std::async(std::launch::async, [&]() -> std::pair<std::optional<Countermodel>, std::string> {
    CountermodelSearch opts;
    opts.max_universe = cfg.countermodel_max_universe;
    opts.cancelled = [&] { return stop.load(); };
    try {
      auto m = find_countermodel(sequent_formula(goal), opts);
      if (m) stop = true;
      return {std::move(m), {}};
    } catch (const BudgetExceeded& e) {
      return {std::nullopt, e.what()};
    }
  });

  auto script = search_proof(goal, cfg, &stop);
  if (script) {
    stop = true;
    refuter.wait();
    return Feedback{Feedback::Status::Provable, std::move(script), std::nullopt, {}};
  }
  auto [model, note] = refuter.get();
  if (model) return Feedback{Feedback::Status::Refuted, std::nullopt, std::move(model), {}};
  std::string msg = "no proof within depth " + std::to_string(cfg.max_depth) +
                    " and no countermodel up to size " +
                    std::to_string(cfg.countermodel_max_universe);
  if (!note.empty()) msg += " (" + note + ")";
  return Feedback{Feedback::Status::Unknown, std::nullopt, std::nullopt, msg};
}

std::vector<Feedback> hint(const ProofState& state, const SearchConfig& cfg) {
  std::vector<Feedback> out;
  out.reserve(state.goals.size());
  for (const auto& g : state.goals) out.push_back(prove(g, cfg));
  return out;
}

}  // namespace nadeum
