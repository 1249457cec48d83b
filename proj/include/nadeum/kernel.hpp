#ifndef NADEUM_KERNEL_HPP_
#define NADEUM_KERNEL_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nadeum/error.hpp"
#include "nadeum/syntax.hpp"

namespace nadeum {

// The fourteen rules of the OK judgment, named as in the formalization.
enum class Rule {
  Assume,
  Boole,
  Imp_E,
  Imp_I,
  Dis_E,
  Dis_I1,
  Dis_I2,
  Con_E1,
  Con_E2,
  Con_I,
  Exi_E,
  Exi_I,
  Uni_E,
  Uni_I,
};

inline constexpr std::array<Rule, 14> kAllRules = {
    Rule::Assume, Rule::Boole,  Rule::Imp_E,  Rule::Imp_I, Rule::Dis_E,
    Rule::Dis_I1, Rule::Dis_I2, Rule::Con_E1, Rule::Con_E2, Rule::Con_I,
    Rule::Exi_E,  Rule::Exi_I,  Rule::Uni_E,  Rule::Uni_I,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// Rule parameters. Which fields a rule takes:
//   Imp_E  p (the cut formula)        Dis_E  p, q (the disjuncts)
//   Con_E1 q (right conjunct)         Con_E2 p (left conjunct)
//   Exi_E  p (body), c (constant)     Exi_I  t (witness)
//   Uni_E  p (body), t (term)         Uni_I  c (constant)
// All other rules take none.
struct RuleParams {
  std::optional<Formula> p;
  std::optional<Formula> q;
  std::optional<Term> t;
  std::optional<std::string> c;

  friend bool operator==(const RuleParams&, const RuleParams&) = default;
};

struct RuleApplication {
  Rule rule;
  RuleParams params;

  friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

struct Goal {
  std::vector<Formula> assumptions;  // z, most recent first
  Formula conclusion;

  friend bool operator==(const Goal&, const Goal&) = default;
};

struct ProofState {
  std::vector<Goal> goals;  // goals.front() is the current goal
  std::size_t step = 1;

  bool complete() const noexcept { return goals.empty(); }
  friend bool operator==(const ProofState&, const ProofState&) = default;
};

class RuleError : public Error {
 public:
  enum class Kind { NotApplicable, FreshnessViolation, ShapeMismatch, NoOpenGoals };

  RuleError(Kind kind, std::optional<Rule> rule, const std::string& reason);

  Kind error_kind() const noexcept { return kind_; }
  std::optional<Rule> rule() const noexcept { return rule_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  Kind kind_;
  std::optional<Rule> rule_;
  std::string reason_;
};

ProofState initial_state(const Formula& root);
ProofState initial_state(const Goal& root);

// Rules that can succeed on the goal for some choice of parameters.
std::set<Rule> applicable_rules(const Goal& g);

// Backward application to the first open goal; premises replace it at the
// front in the order the rule lists them. Throws RuleError.
ProofState apply_rule(const ProofState& s, const RuleApplication& r);

// Premises of a rule applied backwards to a single goal. Throws RuleError.
std::vector<Goal> premises(const Goal& g, const RuleApplication& r);

struct ProofScript {
  Formula root;
  std::vector<Formula> assumptions;  // empty for theorems
  std::vector<RuleApplication> steps;

  Goal goal() const { return Goal{assumptions, root}; }
};

struct Verdict {
  enum class Status { Complete, Incomplete, Rejected };
  Status status = Status::Incomplete;
  ProofState state;                 // state reached (before the failing step if rejected)
  std::size_t failed_step = 0;      // 1-based, Rejected only
  std::optional<RuleError> error;   // Rejected only

  bool complete() const noexcept { return status == Status::Complete; }
};

Verdict replay(const ProofScript& script);

// Event-sourced interaction log: applies and undos in order.
struct HistoryEvent {
  std::optional<RuleApplication> apply;  // nullopt for an Undo

  static HistoryEvent undo() { return {}; }
  static HistoryEvent applied(RuleApplication r) { return {std::move(r)}; }
  bool is_undo() const noexcept { return !apply.has_value(); }
};

struct SessionHistory {
  Formula root;
  std::vector<HistoryEvent> events;
};

class NothingToUndo : public Error {
 public:
  NothingToUndo() : Error("NothingToUndo", "already at the first proof step") {}
};

// Rules still in effect after cancelling every Undo against its Apply.
std::vector<RuleApplication> net_steps(const SessionHistory& h);

ProofState project(const SessionHistory& h);

// Appends an Apply after checking it against the projected state.
SessionHistory record(const SessionHistory& h, const RuleApplication& r);
SessionHistory undo(const SessionHistory& h);

ProofScript trim(const SessionHistory& h);

class IncompleteProof : public Error {
 public:
  IncompleteProof() : Error("IncompleteProof", "the proof is not finished") {}
};

// Theory text in the formalization's concrete syntax. Throws IncompleteProof.
std::string export_certificate(const ProofScript& script);

// Formalization-style rendering, e.g. `Imp (Pre ''A'' []) Falsity`.
std::string isabelle_term(const Term& t);
std::string isabelle_formula(const Formula& p);

}  // namespace nadeum

#endif  // NADEUM_KERNEL_HPP_
