#include "nadeum/codec.hpp"

#include <fstream>
#include <sstream>

#include "nadeum/surface.hpp"

namespace nadeum::codec {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

void check_format(const json& j) {
  if (!j.is_object()) bad("expected a JSON object");
  if (!j.contains("format")) return;
  if (!j.at("format").is_number_integer() || j.at("format").get<int>() != kFormatVersion)
    bad("unsupported format version " + j.at("format").dump());
}

std::string name_of(const json& j) {
  if (!j.is_string()) bad("expected a name string, got " + j.dump());
  return j.get<std::string>();
}

std::vector<Term> args_from(const json& j) {
  if (!j.is_array()) bad("expected an argument list, got " + j.dump());
  std::vector<Term> args;
  for (const auto& a : j) args.push_back(term_from_json(a));
  return args;
}

json args_to(const std::vector<Term>& ts) {
  json a = json::array();
  for (const auto& t : ts) a.push_back(to_json(t));
  return a;
}

std::pair<Formula, Formula> pair_from(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected two operands, got " + j.dump());
  return {formula_from_json(j[0]), formula_from_json(j[1])};
}

}  // namespace

// ---------------------------------------------------------------- terms/formulas

json to_json(const Term& t) {
  if (t.is_var()) return json{{"var", t.index()}};
  return json{{"fun", json::array({t.name(), args_to(t.args())})}};
}

json to_json(const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return json{{"falsity", nullptr}};
    case FormulaKind::Pre:
      return json{{"pre", json::array({p.name(), args_to(p.args())})}};
    case FormulaKind::Imp:
      return json{{"imp", json::array({to_json(p.lhs()), to_json(p.rhs())})}};
    case FormulaKind::Dis:
      return json{{"dis", json::array({to_json(p.lhs()), to_json(p.rhs())})}};
    case FormulaKind::Con:
      return json{{"con", json::array({to_json(p.lhs()), to_json(p.rhs())})}};
    case FormulaKind::Exi:
      return json{{"exi", to_json(p.body())}};
    case FormulaKind::Uni:
      return json{{"uni", to_json(p.body())}};
  }
  return nullptr;
}

Term term_from_json(const json& j) {
  if (j.is_string()) return parse_term(j.get<std::string>());
  if (!j.is_object() || j.size() != 1) bad("malformed term " + j.dump());
  if (j.contains("var")) {
    if (!j["var"].is_number_unsigned()) bad("variable index must be a natural number");
    return Term::var(j["var"].get<std::size_t>());
  }
  if (j.contains("fun")) {
    const auto& f = j["fun"];
    if (!f.is_array() || f.size() != 2) bad("malformed function term " + j.dump());
    return Term::fun(name_of(f[0]), args_from(f[1]));
  }
  bad("malformed term " + j.dump());
}

Formula formula_from_json(const json& j) {
  if (j.is_string()) return parse_formula(j.get<std::string>());
  if (!j.is_object() || j.size() != 1) bad("malformed formula " + j.dump());
  const auto& [key, value] = *j.items().begin();
  if (key == "falsity") return Formula::falsity();
  if (key == "pre") {
    if (!value.is_array() || value.size() != 2) bad("malformed predicate " + j.dump());
    return Formula::pre(name_of(value[0]), args_from(value[1]));
  }
  if (key == "imp" || key == "dis" || key == "con") {
    auto [a, b] = pair_from(value);
    if (key == "imp") return Formula::imp(a, b);
    if (key == "dis") return Formula::dis(a, b);
    return Formula::con(a, b);
  }
  if (key == "exi") return Formula::exi(formula_from_json(value));
  if (key == "uni") return Formula::uni(formula_from_json(value));
  bad("unknown formula constructor '" + std::string(key) + "'");
}

// ---------------------------------------------------------------- kernel

json to_json(const RuleApplication& r) {
  json params = json::object();
  if (r.params.p) params["p"] = to_json(*r.params.p);
  if (r.params.q) params["q"] = to_json(*r.params.q);
  if (r.params.t) params["t"] = to_json(*r.params.t);
  if (r.params.c) params["c"] = *r.params.c;
  return json{{"rule", std::string(rule_name(r.rule))}, {"params", params}};
}

RuleApplication rule_application_from_json(const json& j) {
  std::string name = name_of(field(j, "rule"));
  auto rule = rule_from_name(name);
  if (!rule) bad("unknown rule '" + name + "'");
  RuleApplication app{*rule, {}};
  if (!j.contains("params") || j["params"].is_null()) return app;
  const auto& params = j["params"];
  if (!params.is_object()) bad("params must be an object");
  for (const auto& [key, value] : params.items()) {
    if (key == "p")
      app.params.p = formula_from_json(value);
    else if (key == "q")
      app.params.q = formula_from_json(value);
    else if (key == "t")
      app.params.t = term_from_json(value);
    else if (key == "c")
      app.params.c = name_of(value);
    else
      bad("unknown parameter '" + key + "'");
  }
  return app;
}

json to_json(const ProofScript& s) {
  json steps = json::array();
  for (const auto& r : s.steps) steps.push_back(to_json(r));
  json j{{"format", kFormatVersion}, {"root", to_json(s.root)}};
  if (!s.assumptions.empty()) {
    json z = json::array();
    for (const auto& a : s.assumptions) z.push_back(to_json(a));
    j["assumptions"] = z;
  }
  j["steps"] = steps;
  return j;
}

ProofScript script_from_json(const json& j) {
  check_format(j);
  ProofScript s{formula_from_json(field(j, "root")), {}, {}};
  if (j.contains("assumptions"))
    for (const auto& a : j["assumptions"]) s.assumptions.push_back(formula_from_json(a));
  const auto& steps = field(j, "steps");
  if (!steps.is_array()) bad("steps must be an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      s.steps.push_back(rule_application_from_json(steps[i]));
    } catch (const Error& e) {
      bad("step " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return s;
}

json to_json(const HistoryEvent& e) {
  if (e.is_undo()) return json{{"type", "undo"}};
  json j = to_json(*e.apply);
  j["type"] = "apply";
  return j;
}

HistoryEvent event_from_json(const json& j) {
  std::string type = name_of(field(j, "type"));
  if (type == "undo") return HistoryEvent::undo();
  if (type == "apply") return HistoryEvent::applied(rule_application_from_json(j));
  bad("unknown history event '" + type + "'");
}

json to_json(const SessionHistory& h) {
  json events = json::array();
  for (const auto& e : h.events) events.push_back(to_json(e));
  return json{{"format", kFormatVersion}, {"root", to_json(h.root)}, {"events", events}};
}

SessionHistory history_from_json(const json& j) {
  check_format(j);
  SessionHistory h{formula_from_json(field(j, "root")), {}};
  const auto& events = field(j, "events");
  if (!events.is_array()) bad("events must be an array");
  std::size_t depth = 0;
  for (const auto& e : events) {
    h.events.push_back(event_from_json(e));
    if (h.events.back().is_undo()) {
      if (depth == 0) bad("undo without a preceding apply");
      --depth;
    } else {
      ++depth;
    }
  }
  return h;
}

json to_json(const Goal& g) {
  json z = json::array();
  for (const auto& a : g.assumptions) z.push_back(print_formula(a));
  return json{{"assumptions", z}, {"conclusion", print_formula(g.conclusion)}};
}

json to_json(const Verdict& v) {
  json goals = json::array();
  for (const auto& g : v.state.goals) goals.push_back(to_json(g));
  switch (v.status) {
    case Verdict::Status::Complete:
      return json{{"status", "complete"}, {"steps", v.state.step - 1}};
    case Verdict::Status::Incomplete:
      return json{{"status", "incomplete"}, {"open_goals", goals}};
    case Verdict::Status::Rejected:
      return json{{"status", "rejected"},
                  {"step", v.failed_step},
                  {"error", {{"kind", v.error->kind()}, {"message", v.error->what()}}},
                  {"open_goals", goals}};
  }
  return nullptr;
}

// ---------------------------------------------------------------- countermodels

json to_json(const Countermodel& m) {
  json functions = json::array();
  for (const auto& [key, table] : m.interpretation.functions)
    functions.push_back({{"name", key.first}, {"arity", key.second}, {"table", table}});
  json predicates = json::array();
  for (const auto& [key, table] : m.interpretation.predicates)
    predicates.push_back({{"name", key.first}, {"arity", key.second}, {"table", table}});
  return json{{"universe_size", m.interpretation.universe_size},
              {"closure", print_formula(m.closure)},
              {"value", eval(m.closure, m.interpretation)},
              {"functions", functions},
              {"predicates", predicates}};
}

json to_json(const Feedback& f) {
  json j{{"status", std::string(status_name(f.status))}};
  if (f.script) j["script"] = to_json(*f.script);
  if (f.countermodel) j["countermodel"] = to_json(*f.countermodel);
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

// ---------------------------------------------------------------- hilbert

namespace {

hilbert::Prop prop_from_json(const json& j) { return hilbert::from_formula(formula_from_json(j)); }

}  // namespace

json to_json(const hilbert::Proof& p) {
  json lines = json::array();
  for (const auto& line : p.lines) {
    json just;
    if (const auto* ax = std::get_if<hilbert::AxiomRef>(&line.justification)) {
      json inst = json::object();
      for (const auto& [letter, prop] : ax->instantiation) inst[letter] = hilbert::print(prop);
      just = {{"axiom", json::array({ax->schema, inst})}};
    } else {
      const auto& mp = std::get<hilbert::ModusPonens>(line.justification);
      just = {{"mp", json::array({mp.major, mp.minor})}};
    }
    lines.push_back(
        {{"index", line.index}, {"formula", hilbert::print(line.formula)}, {"just", just}});
  }
  return json{{"format", kFormatVersion}, {"lines", lines}};
}

hilbert::Proof hilbert_proof_from_json(const json& j) {
  check_format(j);
  hilbert::Proof proof;
  const auto& lines = field(j, "lines");
  if (!lines.is_array()) bad("lines must be an array");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    hilbert::Line line{i + 1, hilbert::Prop::falsity(), hilbert::ModusPonens{0, 0}};
    if (l.contains("index")) {
      if (!l["index"].is_number_unsigned()) bad("line index must be a natural number");
      line.index = l["index"].get<std::size_t>();
    }
    line.formula = prop_from_json(field(l, "formula"));
    const auto& just = field(l, "just");
    if (just.contains("axiom")) {
      const auto& ax = just["axiom"];
      if (!ax.is_array() || ax.empty() || !ax[0].is_number_integer())
        bad("malformed axiom justification " + just.dump());
      hilbert::AxiomRef ref{ax[0].get<int>(), {}};
      if (ax.size() > 1)
        for (const auto& [letter, value] : ax[1].items())
          ref.instantiation.emplace(letter, prop_from_json(value));
      line.justification = ref;
    } else if (just.contains("mp")) {
      const auto& mp = just["mp"];
      if (!mp.is_array() || mp.size() != 2 || !mp[0].is_number_unsigned() ||
          !mp[1].is_number_unsigned())
        bad("malformed modus ponens justification " + just.dump());
      line.justification = hilbert::ModusPonens{mp[0].get<std::size_t>(), mp[1].get<std::size_t>()};
    } else {
      bad("unknown justification " + just.dump());
    }
    proof.lines.push_back(std::move(line));
  }
  return proof;
}

json to_json(const hilbert::Verdict& v) {
  if (v.accepted) return json{{"status", "accepted"}};
  return json{{"status", "rejected"}, {"line", v.line}, {"reason", v.reason}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace nadeum::codec
