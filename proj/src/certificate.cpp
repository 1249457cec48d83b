#include <sstream>

#include "nadeum/kernel.hpp"
#include "nadeum/surface.hpp"

namespace nadeum {

namespace {

std::string quoted(const std::string& name) { return "''" + name + "''"; }

std::string term_list(const std::vector<Term>& ts) {
  std::string s = "[";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) s += ", ";
    s += isabelle_term(ts[i]);
  }
  return s + "]";
}

std::string atom(const Formula& p) {
  std::string s = isabelle_formula(p);
  return p.is(FormulaKind::Falsity) ? s : "(" + s + ")";
}

std::string formula_list(const std::vector<Formula>& ps) {
  std::string s = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ", ";
    s += isabelle_formula(ps[i]);
  }
  return s + "]";
}

std::string cartouche(const std::string& s) { return "\\<open>" + s + "\\<close>"; }

// One apply-script fragment per rule. Side conditions (membership, news) are
// discharged by simp; substitution instances are normalised right away.
void emit_step(std::ostringstream& out, const RuleApplication& app) {
  const auto& pm = app.params;
  auto where = [](std::initializer_list<std::pair<const char*, std::string>> items) {
    std::string s = "[where ";
    bool first = true;
    for (const auto& [k, v] : items) {
      if (!first) s += " and ";
      first = false;
      s += std::string(k) + "=" + cartouche(v);
    }
    return s + "]";
  };
  out << "  apply (rule " << rule_name(app.rule);
  switch (app.rule) {
    case Rule::Imp_E:
    case Rule::Con_E2:
      out << where({{"p", isabelle_formula(*pm.p)}});
      break;
    case Rule::Con_E1:
      out << where({{"q", isabelle_formula(*pm.q)}});
      break;
    case Rule::Dis_E:
      out << where({{"p", isabelle_formula(*pm.p)}, {"q", isabelle_formula(*pm.q)}});
      break;
    case Rule::Exi_E:
      out << where({{"p", isabelle_formula(*pm.p)}, {"c", quoted(*pm.c)}});
      break;
    case Rule::Exi_I:
      out << where({{"t", isabelle_term(*pm.t)}});
      break;
    case Rule::Uni_E: {
      std::string w = where({{"p", isabelle_formula(*pm.p)}, {"t", isabelle_term(*pm.t)}});
      w.insert(w.size() - 1, ", simplified");
      out << w;
      break;
    }
    case Rule::Uni_I:
      out << where({{"c", quoted(*pm.c)}});
      break;
    default:
      break;
  }
  out << ")\n";
  switch (app.rule) {
    case Rule::Assume:
      out << "   apply simp\n";
      break;
    case Rule::Exi_E:
      out << "   prefer 3 apply simp\n";
      break;
    case Rule::Exi_I:
      out << "   apply simp\n";
      break;
    case Rule::Uni_I:
      out << "   prefer 2 apply simp\n   apply simp\n";
      break;
    default:
      break;
  }
}

}  // namespace

std::string isabelle_term(const Term& t) {
  if (t.is_var()) return "Var " + std::to_string(t.index());
  return "Fun " + quoted(t.name()) + " " + term_list(t.args());
}

std::string isabelle_formula(const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return "Falsity";
    case FormulaKind::Pre:
      return "Pre " + quoted(p.name()) + " " + term_list(p.args());
    case FormulaKind::Imp:
      return "Imp " + atom(p.lhs()) + " " + atom(p.rhs());
    case FormulaKind::Dis:
      return "Dis " + atom(p.lhs()) + " " + atom(p.rhs());
    case FormulaKind::Con:
      return "Con " + atom(p.lhs()) + " " + atom(p.rhs());
    case FormulaKind::Exi:
      return "Exi " + atom(p.body());
    case FormulaKind::Uni:
      return "Uni " + atom(p.body());
  }
  return {};
}

std::string export_certificate(const ProofScript& script) {
  if (!replay(script).complete()) throw IncompleteProof();

  std::ostringstream out;
  out << "theory Certificate imports ND_Rules begin\n\n";
  out << "(* " << print_formula(script.root) << " *)\n\n";
  out << "proposition proof: " << cartouche("OK " + atom(script.root) + " " +
                                            formula_list(script.assumptions))
      << "\n";
  for (const auto& step : script.steps) emit_step(out, step);
  out << "  done\n";

  auto [k, body] = strip_unis(script.root);
  if (script.assumptions.empty() && k > 0) {
    out << "\nlemma proof_unis: " << cartouche("OK (put_unis " + std::to_string(k) + " " +
                                               atom(body) + ") []")
        << "\n  using proof by (simp add: numeral_eq_Suc)\n";
    for (std::size_t m = 0; m < k; ++m) {
      out << "\nproposition " << cartouche("OK (put_unis " + std::to_string(m) + " " +
                                           atom(body) + ") []")
          << "\n  using proof_unis any_unis by blast\n";
    }
  }
  out << "\nend\n";
  return out.str();
}

}  // namespace nadeum
