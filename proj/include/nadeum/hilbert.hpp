#ifndef NADEUM_HILBERT_HPP_
#define NADEUM_HILBERT_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nadeum/error.hpp"
#include "nadeum/syntax.hpp"

namespace nadeum::hilbert {

// Propositional formulas: falsity, atoms and the three binary connectives.
class Prop {
 public:
  enum class Kind { Falsity, Atom, Imp, Dis, Con };

  static Prop falsity();
  static Prop atom(std::string name);
  static Prop imp(Prop a, Prop b);
  static Prop dis(Prop a, Prop b);
  static Prop con(Prop a, Prop b);

  Kind kind() const noexcept { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Prop& lhs() const { return node_->sub[0]; }
  const Prop& rhs() const { return node_->sub[1]; }

  friend bool operator==(const Prop& a, const Prop& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Prop> sub;
  };
  explicit Prop(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class NotPropositional : public Error {
 public:
  explicit NotPropositional(const std::string& what)
      : Error("NotPropositional", what + " is not propositional") {}
};

// Conversions to and from first-order formulas with nullary predicates.
Prop from_formula(const Formula& p);
Formula to_formula(const Prop& p);

std::string print(const Prop& p);

class UnknownSchema : public Error {
 public:
  explicit UnknownSchema(int id)
      : Error("UnknownSchema", "axiom " + std::to_string(id) + " does not exist") {}
};

class MissingLetter : public Error {
 public:
  MissingLetter(int id, char letter)
      : Error("MissingLetter", "axiom " + std::to_string(id) + " needs an instance for " +
                                   std::string(1, letter)) {}
};

using Instantiation = std::map<std::string, Prop>;

inline constexpr int kSchemaCount = 9;

// The schema with letters A, B, C as atoms.
Prop axiom_schema(int schema_id);
// Letters used by a schema, e.g. "AB".
std::string schema_letters(int schema_id);
Prop axiom_instance(int schema_id, const Instantiation& inst);

struct AxiomRef {
  int schema;
  Instantiation instantiation;
};
struct ModusPonens {
  std::size_t major;  // line holding minor -> this
  std::size_t minor;
};

struct Line {
  std::size_t index;  // 1-based
  Prop formula;
  std::variant<AxiomRef, ModusPonens> justification;
};

struct Proof {
  std::vector<Line> lines;

  std::optional<Prop> claim() const {
    if (lines.empty()) return std::nullopt;
    return lines.back().formula;
  }
};

struct Verdict {
  bool accepted = true;
  std::size_t line = 0;  // 1-based position of the first bad line
  std::string reason;
};

Verdict check(const Proof& proof);

// Truth-table validity over all assignments to the atoms.
bool valid(const Prop& p);
bool eval(const Prop& p, const std::map<std::string, bool>& assignment);

}  // namespace nadeum::hilbert

#endif  // NADEUM_HILBERT_HPP_
