#ifndef NADEUM_SYNTAX_HPP_
#define NADEUM_SYNTAX_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nadeum {

// First-order terms with de Bruijn indices. Var(0) refers to the innermost
// enclosing quantifier. A constant is a Fun with no arguments.
class Term {
 public:
  struct Var {
    std::size_t index;
  };
  struct Fun {
    std::string name;
    std::vector<Term> args;
  };

  static Term var(std::size_t index);
  static Term fun(std::string name, std::vector<Term> args = {});

  bool is_var() const noexcept { return std::holds_alternative<Var>(node_); }
  bool is_fun() const noexcept { return std::holds_alternative<Fun>(node_); }
  std::size_t index() const { return std::get<Var>(node_).index; }
  const std::string& name() const { return std::get<Fun>(node_).name; }
  const std::vector<Term>& args() const { return std::get<Fun>(node_).args; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  explicit Term(std::variant<Var, Fun> node) : node_(std::move(node)) {}
  std::variant<Var, Fun> node_;
};

enum class FormulaKind { Falsity, Pre, Imp, Dis, Con, Exi, Uni };

// Immutable formula tree. Copies share structure; equality is structural.
class Formula {
 public:
  Formula();  // Falsity

  static Formula falsity();
  static Formula pre(std::string name, std::vector<Term> args = {});
  static Formula imp(Formula lhs, Formula rhs);
  static Formula dis(Formula lhs, Formula rhs);
  static Formula con(Formula lhs, Formula rhs);
  static Formula exi(Formula body);
  static Formula uni(Formula body);
  // Sugar: p -> False.
  static Formula neg(Formula p);

  FormulaKind kind() const noexcept;
  bool is(FormulaKind k) const noexcept { return kind() == k; }
  bool is_binary() const noexcept;
  bool is_quantifier() const noexcept;

  // Pre only.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  // Imp / Dis / Con only.
  const Formula& lhs() const;
  const Formula& rhs() const;
  // Exi / Uni only.
  const Formula& body() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind = FormulaKind::Falsity;
  std::string name;
  std::vector<Term> args;
  std::vector<Formula> sub;  // two operands, or one quantifier body
  std::size_t hash = 0;
};

inline FormulaKind Formula::kind() const noexcept { return node_->kind; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Shifts every Var(i) with i >= cutoff up by one.
Term lift_term(const Term& t, std::size_t cutoff = 0);
Formula lift_formula(const Formula& p, std::size_t cutoff = 0);

// Capture-avoiding substitution of t for Var(n), consuming the binder:
// free indices above n drop by one.
Term sub_term(std::size_t n, const Term& t, const Term& in);
Formula sub(std::size_t n, const Term& t, const Formula& p);

// True iff `c` is not used as a function name in any of the formulas.
bool news(const std::string& c, std::span<const Formula> formulas);
bool news(const std::string& c, std::initializer_list<Formula> formulas);

// First of c, c1, c2, ... that is new to all formulas.
std::string fresh_constant(std::span<const Formula> formulas);

// Largest free de Bruijn index, or nullopt for a sentence.
std::optional<std::size_t> free_var_bound(const Formula& p);
std::optional<std::size_t> free_var_bound(const Term& t);

Formula put_unis(std::size_t k, Formula p);
std::pair<std::size_t, Formula> strip_unis(Formula p);

// Universal closure over all free variables.
Formula universal_closure(const Formula& p);

// Names of functions and predicates occurring in a formula (with arities).
struct Symbol {
  enum class Kind { Function, Predicate };
  Kind kind;
  std::string name;
  std::size_t arity;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};
using Signature = std::set<Symbol>;

void collect_symbols(const Term& t, Signature& out);
void collect_symbols(const Formula& p, Signature& out);
Signature signature_of(std::span<const Formula> formulas);

// Ground subterms occurring anywhere in a formula.
void collect_ground_terms(const Formula& p, std::set<Term>& out);

std::size_t term_depth(const Term& t);

}  // namespace nadeum

#endif  // NADEUM_SYNTAX_HPP_
