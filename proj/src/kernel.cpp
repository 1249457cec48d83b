#include "nadeum/kernel.hpp"

#include <algorithm>
#include <cctype>

namespace nadeum {

namespace {

constexpr std::array<std::string_view, 14> kRuleNames = {
    "Assume", "Boole",  "Imp_E",  "Imp_I", "Dis_E", "Dis_I1", "Dis_I2",
    "Con_E1", "Con_E2", "Con_I",  "Exi_E", "Exi_I", "Uni_E",  "Uni_I",
};

std::string kind_name(RuleError::Kind k) {
  switch (k) {
    case RuleError::Kind::NotApplicable:
      return "NotApplicable";
    case RuleError::Kind::FreshnessViolation:
      return "FreshnessViolation";
    case RuleError::Kind::ShapeMismatch:
      return "ShapeMismatch";
    case RuleError::Kind::NoOpenGoals:
      return "NoOpenGoals";
  }
  return "RuleError";
}

std::string compose_message(RuleError::Kind k, std::optional<Rule> rule, const std::string& reason) {
  std::string msg = kind_name(k);
  if (rule) msg += " (" + std::string(rule_name(*rule)) + ")";
  return msg + ": " + reason;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
  });
}

struct Needs {
  bool p = false, q = false, t = false, c = false;
};

Needs needs_of(Rule r) {
  switch (r) {
    case Rule::Imp_E:
    case Rule::Con_E2:
      return {.p = true};
    case Rule::Con_E1:
      return {.q = true};
    case Rule::Dis_E:
      return {.p = true, .q = true};
    case Rule::Exi_E:
      return {.p = true, .c = true};
    case Rule::Exi_I:
      return {.t = true};
    case Rule::Uni_E:
      return {.p = true, .t = true};
    case Rule::Uni_I:
      return {.c = true};
    default:
      return {};
  }
}

void check_params(Rule r, const RuleParams& params) {
  Needs n = needs_of(r);
  auto check = [&](bool needed, bool present, const char* field) {
    if (needed && !present)
      throw RuleError(RuleError::Kind::NotApplicable, r,
                      std::string("missing parameter '") + field + "'");
    if (!needed && present)
      throw RuleError(RuleError::Kind::NotApplicable, r,
                      std::string("unexpected parameter '") + field + "'");
  };
  check(n.p, params.p.has_value(), "p");
  check(n.q, params.q.has_value(), "q");
  check(n.t, params.t.has_value(), "t");
  check(n.c, params.c.has_value(), "c");
  if (params.c && !valid_identifier(*params.c))
    throw RuleError(RuleError::Kind::NotApplicable, r, "'" + *params.c + "' is not a valid name");
}

std::vector<Formula> cons(const Formula& head, const std::vector<Formula>& tail) {
  std::vector<Formula> out;
  out.reserve(tail.size() + 1);
  out.push_back(head);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

[[noreturn]] void not_applicable(Rule r, const std::string& reason) {
  throw RuleError(RuleError::Kind::NotApplicable, r, reason);
}

}  // namespace

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  return std::nullopt;
}

RuleError::RuleError(Kind kind, std::optional<Rule> rule, const std::string& reason)
    : Error(kind_name(kind), compose_message(kind, rule, reason)),
      kind_(kind),
      rule_(rule),
      reason_(reason) {}

ProofState initial_state(const Formula& root) { return ProofState{{Goal{{}, root}}, 1}; }

ProofState initial_state(const Goal& root) { return ProofState{{root}, 1}; }

std::set<Rule> applicable_rules(const Goal& g) {
  std::set<Rule> rules{Rule::Boole, Rule::Imp_E, Rule::Dis_E, Rule::Con_E1,
                       Rule::Con_E2, Rule::Exi_E, Rule::Uni_E};
  const auto& z = g.assumptions;
  if (std::find(z.begin(), z.end(), g.conclusion) != z.end()) rules.insert(Rule::Assume);
  switch (g.conclusion.kind()) {
    case FormulaKind::Imp:
      rules.insert(Rule::Imp_I);
      break;
    case FormulaKind::Dis:
      rules.insert(Rule::Dis_I1);
      rules.insert(Rule::Dis_I2);
      break;
    case FormulaKind::Con:
      rules.insert(Rule::Con_I);
      break;
    case FormulaKind::Exi:
      rules.insert(Rule::Exi_I);
      break;
    case FormulaKind::Uni:
      rules.insert(Rule::Uni_I);
      break;
    default:
      break;
  }
  return rules;
}

std::vector<Goal> premises(const Goal& g, const RuleApplication& app) {
  const Rule r = app.rule;
  const RuleParams& pm = app.params;
  check_params(r, pm);
  const auto& z = g.assumptions;
  const Formula& goal = g.conclusion;

  switch (r) {
    case Rule::Assume:
      if (std::find(z.begin(), z.end(), goal) == z.end())
        not_applicable(r, "the conclusion is not among the assumptions");
      return {};
    case Rule::Boole:
      return {Goal{cons(Formula::neg(goal), z), Formula::falsity()}};
    case Rule::Imp_E:
      return {Goal{z, Formula::imp(*pm.p, goal)}, Goal{z, *pm.p}};
    case Rule::Imp_I:
      if (!goal.is(FormulaKind::Imp)) not_applicable(r, "the conclusion is not an implication");
      return {Goal{cons(goal.lhs(), z), goal.rhs()}};
    case Rule::Dis_E:
      return {Goal{z, Formula::dis(*pm.p, *pm.q)}, Goal{cons(*pm.p, z), goal},
              Goal{cons(*pm.q, z), goal}};
    case Rule::Dis_I1:
    case Rule::Dis_I2:
      if (!goal.is(FormulaKind::Dis)) not_applicable(r, "the conclusion is not a disjunction");
      return {Goal{z, r == Rule::Dis_I1 ? goal.lhs() : goal.rhs()}};
    case Rule::Con_E1:
      return {Goal{z, Formula::con(goal, *pm.q)}};
    case Rule::Con_E2:
      return {Goal{z, Formula::con(*pm.p, goal)}};
    case Rule::Con_I:
      if (!goal.is(FormulaKind::Con)) not_applicable(r, "the conclusion is not a conjunction");
      return {Goal{z, goal.lhs()}, Goal{z, goal.rhs()}};
    case Rule::Exi_E: {
      std::vector<Formula> scope = cons(*pm.p, cons(goal, z));
      if (!news(*pm.c, scope))
        throw RuleError(RuleError::Kind::FreshnessViolation, r,
                        "'" + *pm.c + "' occurs in the body, conclusion or assumptions");
      Formula instance = sub(0, Term::fun(*pm.c), *pm.p);
      return {Goal{z, Formula::exi(*pm.p)}, Goal{cons(instance, z), goal}};
    }
    case Rule::Exi_I:
      if (!goal.is(FormulaKind::Exi)) not_applicable(r, "the conclusion is not existential");
      return {Goal{z, sub(0, *pm.t, goal.body())}};
    case Rule::Uni_E:
      if (!(sub(0, *pm.t, *pm.p) == goal))
        throw RuleError(RuleError::Kind::ShapeMismatch, r,
                        "the conclusion is not the body instantiated with the term");
      return {Goal{z, Formula::uni(*pm.p)}};
    case Rule::Uni_I: {
      if (!goal.is(FormulaKind::Uni)) not_applicable(r, "the conclusion is not universal");
      std::vector<Formula> scope = cons(goal.body(), z);
      if (!news(*pm.c, scope))
        throw RuleError(RuleError::Kind::FreshnessViolation, r,
                        "'" + *pm.c + "' occurs in the body or assumptions");
      return {Goal{z, sub(0, Term::fun(*pm.c), goal.body())}};
    }
  }
  not_applicable(r, "unknown rule");
}

ProofState apply_rule(const ProofState& s, const RuleApplication& r) {
  if (s.goals.empty()) throw RuleError(RuleError::Kind::NoOpenGoals, r.rule, "the proof is finished");
  std::vector<Goal> fresh = premises(s.goals.front(), r);
  ProofState next;
  next.step = s.step + 1;
  next.goals = std::move(fresh);
  next.goals.insert(next.goals.end(), s.goals.begin() + 1, s.goals.end());
  return next;
}

Verdict replay(const ProofScript& script) {
  Verdict v;
  v.state = initial_state(script.goal());
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    try {
      v.state = apply_rule(v.state, script.steps[i]);
    } catch (const RuleError& e) {
      v.status = Verdict::Status::Rejected;
      v.failed_step = i + 1;
      v.error = e;
      return v;
    }
  }
  v.status = v.state.complete() ? Verdict::Status::Complete : Verdict::Status::Incomplete;
  return v;
}

// ---------------------------------------------------------------- history

std::vector<RuleApplication> net_steps(const SessionHistory& h) {
  std::vector<RuleApplication> stack;
  for (const auto& e : h.events) {
    if (e.is_undo()) {
      if (stack.empty()) throw NothingToUndo();
      stack.pop_back();
    } else {
      stack.push_back(*e.apply);
    }
  }
  return stack;
}

ProofState project(const SessionHistory& h) {
  ProofState s = initial_state(h.root);
  for (const auto& r : net_steps(h)) s = apply_rule(s, r);
  return s;
}

SessionHistory record(const SessionHistory& h, const RuleApplication& r) {
  apply_rule(project(h), r);
  SessionHistory next = h;
  next.events.push_back(HistoryEvent::applied(r));
  return next;
}

SessionHistory undo(const SessionHistory& h) {
  if (net_steps(h).empty()) throw NothingToUndo();
  SessionHistory next = h;
  next.events.push_back(HistoryEvent::undo());
  return next;
}

ProofScript trim(const SessionHistory& h) { return ProofScript{h.root, {}, net_steps(h)}; }

}  // namespace nadeum
