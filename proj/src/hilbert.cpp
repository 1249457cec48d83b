#include "nadeum/hilbert.hpp"

#include <set>

#include "nadeum/surface.hpp"

namespace nadeum::hilbert {

Prop Prop::falsity() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Falsity, {}, {}});
  return Prop(node);
}

Prop Prop::atom(std::string name) {
  return Prop(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
}

Prop Prop::imp(Prop a, Prop b) {
  return Prop(std::make_shared<const Node>(Node{Kind::Imp, {}, {std::move(a), std::move(b)}}));
}

Prop Prop::dis(Prop a, Prop b) {
  return Prop(std::make_shared<const Node>(Node{Kind::Dis, {}, {std::move(a), std::move(b)}}));
}

Prop Prop::con(Prop a, Prop b) {
  return Prop(std::make_shared<const Node>(Node{Kind::Con, {}, {std::move(a), std::move(b)}}));
}

bool operator==(const Prop& a, const Prop& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
         a.node_->sub == b.node_->sub;
}

Prop from_formula(const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return Prop::falsity();
    case FormulaKind::Pre:
      if (!p.args().empty()) throw NotPropositional(print_formula(p));
      return Prop::atom(p.name());
    case FormulaKind::Imp:
      return Prop::imp(from_formula(p.lhs()), from_formula(p.rhs()));
    case FormulaKind::Dis:
      return Prop::dis(from_formula(p.lhs()), from_formula(p.rhs()));
    case FormulaKind::Con:
      return Prop::con(from_formula(p.lhs()), from_formula(p.rhs()));
    default:
      throw NotPropositional(print_formula(p));
  }
}

Formula to_formula(const Prop& p) {
  switch (p.kind()) {
    case Prop::Kind::Falsity:
      return Formula::falsity();
    case Prop::Kind::Atom:
      return Formula::pre(p.name());
    case Prop::Kind::Imp:
      return Formula::imp(to_formula(p.lhs()), to_formula(p.rhs()));
    case Prop::Kind::Dis:
      return Formula::dis(to_formula(p.lhs()), to_formula(p.rhs()));
    case Prop::Kind::Con:
      return Formula::con(to_formula(p.lhs()), to_formula(p.rhs()));
  }
  return Formula::falsity();
}

std::string print(const Prop& p) { return print_formula(to_formula(p)); }

// ---------------------------------------------------------------- axioms

namespace {

const char* const kSchemaText[kSchemaCount] = {
    "A -> B -> A",
    "(A -> B -> C) -> (A -> B) -> A -> C",
    "A -> B -> A /\\ B",
    "A /\\ B -> A",
    "A /\\ B -> B",
    "A -> A \\/ B",
    "B -> A \\/ B",
    "(A -> C) -> (B -> C) -> A \\/ B -> C",
    "(A -> B -> False) -> B -> A -> False",
};

Prop substitute(const Prop& p, const Instantiation& inst, int id) {
  switch (p.kind()) {
    case Prop::Kind::Falsity:
      return p;
    case Prop::Kind::Atom: {
      auto it = inst.find(p.name());
      if (it == inst.end()) throw MissingLetter(id, p.name()[0]);
      return it->second;
    }
    case Prop::Kind::Imp:
      return Prop::imp(substitute(p.lhs(), inst, id), substitute(p.rhs(), inst, id));
    case Prop::Kind::Dis:
      return Prop::dis(substitute(p.lhs(), inst, id), substitute(p.rhs(), inst, id));
    case Prop::Kind::Con:
      return Prop::con(substitute(p.lhs(), inst, id), substitute(p.rhs(), inst, id));
  }
  return p;
}

void atoms(const Prop& p, std::set<std::string>& out) {
  switch (p.kind()) {
    case Prop::Kind::Falsity:
      return;
    case Prop::Kind::Atom:
      out.insert(p.name());
      return;
    default:
      atoms(p.lhs(), out);
      atoms(p.rhs(), out);
  }
}

}  // namespace

Prop axiom_schema(int schema_id) {
  if (schema_id < 1 || schema_id > kSchemaCount) throw UnknownSchema(schema_id);
  return from_formula(parse_formula(kSchemaText[schema_id - 1]));
}

std::string schema_letters(int schema_id) {
  std::set<std::string> letters;
  atoms(axiom_schema(schema_id), letters);
  std::string s;
  for (const auto& l : letters) s += l;
  return s;
}

Prop axiom_instance(int schema_id, const Instantiation& inst) {
  return substitute(axiom_schema(schema_id), inst, schema_id);
}

// ---------------------------------------------------------------- checking

Verdict check(const Proof& proof) {
  for (std::size_t pos = 1; pos <= proof.lines.size(); ++pos) {
    const Line& line = proof.lines[pos - 1];
    auto reject = [&](std::string reason) { return Verdict{false, pos, std::move(reason)}; };
    if (line.index != pos)
      return reject("line numbered " + std::to_string(line.index) + " is out of order");

    if (const auto* ax = std::get_if<AxiomRef>(&line.justification)) {
      Prop expected = Prop::falsity();
      try {
        expected = axiom_instance(ax->schema, ax->instantiation);
      } catch (const Error& e) {
        return reject(e.what());
      }
      if (!(expected == line.formula))
        return reject("not an instance of axiom " + std::to_string(ax->schema));
      continue;
    }

    const auto& mp = std::get<ModusPonens>(line.justification);
    if (mp.major == 0 || mp.minor == 0) return reject("citation of line 0");
    if (mp.major >= pos || mp.minor >= pos) return reject("forward MP citation");
    const Prop& major = proof.lines[mp.major - 1].formula;
    const Prop& minor = proof.lines[mp.minor - 1].formula;
    if (major.kind() != Prop::Kind::Imp || !(major.lhs() == minor) ||
        !(major.rhs() == line.formula))
      return reject("line " + std::to_string(mp.major) + " is not line " +
                    std::to_string(mp.minor) + " implying this line");
  }
  if (proof.lines.empty()) return Verdict{false, 0, "empty proof"};
  return Verdict{};
}

// ---------------------------------------------------------------- truth tables

bool eval(const Prop& p, const std::map<std::string, bool>& assignment) {
  switch (p.kind()) {
    case Prop::Kind::Falsity:
      return false;
    case Prop::Kind::Atom: {
      auto it = assignment.find(p.name());
      return it != assignment.end() && it->second;
    }
    case Prop::Kind::Imp:
      return eval(p.lhs(), assignment) ? eval(p.rhs(), assignment) : true;
    case Prop::Kind::Dis:
      return eval(p.lhs(), assignment) ? true : eval(p.rhs(), assignment);
    case Prop::Kind::Con:
      return eval(p.lhs(), assignment) ? eval(p.rhs(), assignment) : false;
  }
  return false;
}

bool valid(const Prop& p) {
  std::set<std::string> names;
  atoms(p, names);
  std::vector<std::string> order(names.begin(), names.end());
  std::map<std::string, bool> assignment;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << order.size()); ++bits) {
    for (std::size_t i = 0; i < order.size(); ++i) assignment[order[i]] = (bits >> i) & 1;
    if (!eval(p, assignment)) return false;
  }
  return true;
}

}  // namespace nadeum::hilbert
