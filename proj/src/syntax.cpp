#include "nadeum/syntax.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nadeum {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_term(const Term& t) {
  if (t.is_var()) return mix(17, t.index());
  std::size_t h = mix(31, std::hash<std::string>{}(t.name()));
  for (const auto& a : t.args()) h = mix(h, hash_term(a));
  return h;
}

}  // namespace

// ---------------------------------------------------------------- Term

Term Term::var(std::size_t index) { return Term(Var{index}); }

Term Term::fun(std::string name, std::vector<Term> args) {
  return Term(Fun{std::move(name), std::move(args)});
}

bool operator==(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.index() == b.index();
  return a.name() == b.name() && a.args() == b.args();
}

bool operator<(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return a.is_var();
  if (a.is_var()) return a.index() < b.index();
  if (a.name() != b.name()) return a.name() < b.name();
  return std::lexicographical_compare(a.args().begin(), a.args().end(), b.args().begin(),
                                      b.args().end());
}

// ---------------------------------------------------------------- Formula

Formula::Formula() : Formula(falsity()) {}

Formula Formula::falsity() {
  static const std::shared_ptr<const Node> node = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Falsity;
    n->hash = 0x5f3759df;
    return n;
  }();
  return Formula(node);
}

Formula Formula::pre(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Pre;
  std::size_t h = mix(101, std::hash<std::string>{}(name));
  for (const auto& a : args) h = mix(h, hash_term(a));
  n->name = std::move(name);
  n->args = std::move(args);
  n->hash = h;
  return Formula(std::move(n));
}

namespace {

std::shared_ptr<Formula::Node> make_node(FormulaKind kind, std::vector<Formula> sub) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  std::size_t h = mix(7, static_cast<std::size_t>(kind));
  for (const auto& s : sub) h = mix(h, s.hash());
  n->sub = std::move(sub);
  n->hash = h;
  return n;
}

}  // namespace

Formula Formula::imp(Formula lhs, Formula rhs) {
  return Formula(make_node(FormulaKind::Imp, {std::move(lhs), std::move(rhs)}));
}
Formula Formula::dis(Formula lhs, Formula rhs) {
  return Formula(make_node(FormulaKind::Dis, {std::move(lhs), std::move(rhs)}));
}
Formula Formula::con(Formula lhs, Formula rhs) {
  return Formula(make_node(FormulaKind::Con, {std::move(lhs), std::move(rhs)}));
}
Formula Formula::exi(Formula body) {
  return Formula(make_node(FormulaKind::Exi, {std::move(body)}));
}
Formula Formula::uni(Formula body) {
  return Formula(make_node(FormulaKind::Uni, {std::move(body)}));
}
Formula Formula::neg(Formula p) { return imp(std::move(p), falsity()); }

bool Formula::is_binary() const noexcept {
  auto k = kind();
  return k == FormulaKind::Imp || k == FormulaKind::Dis || k == FormulaKind::Con;
}

bool Formula::is_quantifier() const noexcept {
  return kind() == FormulaKind::Exi || kind() == FormulaKind::Uni;
}

const std::string& Formula::name() const {
  if (!is(FormulaKind::Pre)) throw std::logic_error("Formula::name on non-predicate");
  return node_->name;
}

const std::vector<Term>& Formula::args() const {
  if (!is(FormulaKind::Pre)) throw std::logic_error("Formula::args on non-predicate");
  return node_->args;
}

const Formula& Formula::lhs() const {
  if (!is_binary()) throw std::logic_error("Formula::lhs on non-binary formula");
  return node_->sub[0];
}

const Formula& Formula::rhs() const {
  if (!is_binary()) throw std::logic_error("Formula::rhs on non-binary formula");
  return node_->sub[1];
}

const Formula& Formula::body() const {
  if (!is_quantifier()) throw std::logic_error("Formula::body on non-quantifier");
  return node_->sub[0];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  return a.node_->name == b.node_->name && a.node_->args == b.node_->args &&
         a.node_->sub == b.node_->sub;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.node_->name != b.node_->name) return a.node_->name < b.node_->name;
  if (a.node_->args != b.node_->args)
    return std::lexicographical_compare(a.node_->args.begin(), a.node_->args.end(),
                                        b.node_->args.begin(), b.node_->args.end());
  return std::lexicographical_compare(a.node_->sub.begin(), a.node_->sub.end(),
                                      b.node_->sub.begin(), b.node_->sub.end());
}

// ---------------------------------------------------------------- index arithmetic

Term lift_term(const Term& t, std::size_t cutoff) {
  if (t.is_var()) return t.index() >= cutoff ? Term::var(t.index() + 1) : t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(lift_term(a, cutoff));
  return Term::fun(t.name(), std::move(args));
}

namespace {

template <class TermFn>
Formula map_terms(const Formula& p, std::size_t depth, const TermFn& fn) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return p;
    case FormulaKind::Pre: {
      std::vector<Term> args;
      args.reserve(p.args().size());
      for (const auto& a : p.args()) args.push_back(fn(a, depth));
      return Formula::pre(p.name(), std::move(args));
    }
    case FormulaKind::Imp:
      return Formula::imp(map_terms(p.lhs(), depth, fn), map_terms(p.rhs(), depth, fn));
    case FormulaKind::Dis:
      return Formula::dis(map_terms(p.lhs(), depth, fn), map_terms(p.rhs(), depth, fn));
    case FormulaKind::Con:
      return Formula::con(map_terms(p.lhs(), depth, fn), map_terms(p.rhs(), depth, fn));
    case FormulaKind::Exi:
      return Formula::exi(map_terms(p.body(), depth + 1, fn));
    case FormulaKind::Uni:
      return Formula::uni(map_terms(p.body(), depth + 1, fn));
  }
  return p;
}

}  // namespace

Formula lift_formula(const Formula& p, std::size_t cutoff) {
  return map_terms(p, cutoff,
                   [](const Term& t, std::size_t depth) { return lift_term(t, depth); });
}

Term sub_term(std::size_t n, const Term& t, const Term& in) {
  if (in.is_var()) {
    if (in.index() < n) return in;
    if (in.index() == n) return t;
    return Term::var(in.index() - 1);
  }
  std::vector<Term> args;
  args.reserve(in.args().size());
  for (const auto& a : in.args()) args.push_back(sub_term(n, t, a));
  return Term::fun(in.name(), std::move(args));
}

namespace {

Formula sub_rec(std::size_t n, const Term& t, const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return p;
    case FormulaKind::Pre: {
      std::vector<Term> args;
      args.reserve(p.args().size());
      for (const auto& a : p.args()) args.push_back(sub_term(n, t, a));
      return Formula::pre(p.name(), std::move(args));
    }
    case FormulaKind::Imp:
      return Formula::imp(sub_rec(n, t, p.lhs()), sub_rec(n, t, p.rhs()));
    case FormulaKind::Dis:
      return Formula::dis(sub_rec(n, t, p.lhs()), sub_rec(n, t, p.rhs()));
    case FormulaKind::Con:
      return Formula::con(sub_rec(n, t, p.lhs()), sub_rec(n, t, p.rhs()));
    case FormulaKind::Exi:
      return Formula::exi(sub_rec(n + 1, lift_term(t), p.body()));
    case FormulaKind::Uni:
      return Formula::uni(sub_rec(n + 1, lift_term(t), p.body()));
  }
  return p;
}

}  // namespace

Formula sub(std::size_t n, const Term& t, const Formula& p) { return sub_rec(n, t, p); }

// ---------------------------------------------------------------- freshness

namespace {

bool term_uses(const std::string& c, const Term& t) {
  if (t.is_var()) return false;
  if (t.name() == c) return true;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return term_uses(c, a); });
}

bool formula_uses(const std::string& c, const Formula& p) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return false;
    case FormulaKind::Pre:
      return std::any_of(p.args().begin(), p.args().end(),
                         [&](const Term& a) { return term_uses(c, a); });
    case FormulaKind::Imp:
    case FormulaKind::Dis:
    case FormulaKind::Con:
      return formula_uses(c, p.lhs()) || formula_uses(c, p.rhs());
    case FormulaKind::Exi:
    case FormulaKind::Uni:
      return formula_uses(c, p.body());
  }
  return false;
}

}  // namespace

bool news(const std::string& c, std::span<const Formula> formulas) {
  return std::none_of(formulas.begin(), formulas.end(),
                      [&](const Formula& p) { return formula_uses(c, p); });
}

bool news(const std::string& c, std::initializer_list<Formula> formulas) {
  return news(c, std::span<const Formula>(formulas.begin(), formulas.size()));
}

std::string fresh_constant(std::span<const Formula> formulas) {
  if (news("c", formulas)) return "c";
  for (std::size_t i = 1;; ++i) {
    std::string name = "c" + std::to_string(i);
    if (news(name, formulas)) return name;
  }
}

// ---------------------------------------------------------------- closure

std::optional<std::size_t> free_var_bound(const Term& t) {
  if (t.is_var()) return t.index();
  std::optional<std::size_t> best;
  for (const auto& a : t.args()) {
    auto b = free_var_bound(a);
    if (b && (!best || *b > *best)) best = b;
  }
  return best;
}

namespace {

std::optional<std::size_t> bound_rec(const Formula& p, std::size_t depth) {
  auto merge = [](std::optional<std::size_t> a, std::optional<std::size_t> b) {
    if (!a) return b;
    if (!b) return a;
    return std::optional<std::size_t>(std::max(*a, *b));
  };
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return std::nullopt;
    case FormulaKind::Pre: {
      std::optional<std::size_t> best;
      for (const auto& a : p.args()) {
        auto b = free_var_bound(a);
        if (b && *b >= depth) best = merge(best, *b - depth);
      }
      return best;
    }
    case FormulaKind::Imp:
    case FormulaKind::Dis:
    case FormulaKind::Con:
      return merge(bound_rec(p.lhs(), depth), bound_rec(p.rhs(), depth));
    case FormulaKind::Exi:
    case FormulaKind::Uni:
      return bound_rec(p.body(), depth + 1);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> free_var_bound(const Formula& p) { return bound_rec(p, 0); }

Formula put_unis(std::size_t k, Formula p) {
  for (std::size_t i = 0; i < k; ++i) p = Formula::uni(std::move(p));
  return p;
}

std::pair<std::size_t, Formula> strip_unis(Formula p) {
  std::size_t k = 0;
  while (p.is(FormulaKind::Uni)) {
    Formula body = p.body();
    p = std::move(body);
    ++k;
  }
  return {k, std::move(p)};
}

Formula universal_closure(const Formula& p) {
  auto bound = free_var_bound(p);
  return bound ? put_unis(*bound + 1, p) : p;
}

// ---------------------------------------------------------------- symbols

void collect_symbols(const Term& t, Signature& out) {
  if (t.is_var()) return;
  out.insert(Symbol{Symbol::Kind::Function, t.name(), t.args().size()});
  for (const auto& a : t.args()) collect_symbols(a, out);
}

void collect_symbols(const Formula& p, Signature& out) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return;
    case FormulaKind::Pre:
      out.insert(Symbol{Symbol::Kind::Predicate, p.name(), p.args().size()});
      for (const auto& a : p.args()) collect_symbols(a, out);
      return;
    case FormulaKind::Imp:
    case FormulaKind::Dis:
    case FormulaKind::Con:
      collect_symbols(p.lhs(), out);
      collect_symbols(p.rhs(), out);
      return;
    case FormulaKind::Exi:
    case FormulaKind::Uni:
      collect_symbols(p.body(), out);
      return;
  }
}

Signature signature_of(std::span<const Formula> formulas) {
  Signature sig;
  for (const auto& p : formulas) collect_symbols(p, sig);
  return sig;
}

namespace {

void ground_terms(const Term& t, std::set<Term>& out) {
  if (t.is_var()) return;
  for (const auto& a : t.args()) ground_terms(a, out);
  if (!free_var_bound(t)) out.insert(t);
}

}  // namespace

void collect_ground_terms(const Formula& p, std::set<Term>& out) {
  switch (p.kind()) {
    case FormulaKind::Falsity:
      return;
    case FormulaKind::Pre:
      for (const auto& a : p.args()) ground_terms(a, out);
      return;
    case FormulaKind::Imp:
    case FormulaKind::Dis:
    case FormulaKind::Con:
      collect_ground_terms(p.lhs(), out);
      collect_ground_terms(p.rhs(), out);
      return;
    case FormulaKind::Exi:
    case FormulaKind::Uni:
      collect_ground_terms(p.body(), out);
      return;
  }
}

std::size_t term_depth(const Term& t) {
  if (t.is_var() || t.args().empty()) return 0;
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, term_depth(a));
  return d + 1;
}

}  // namespace nadeum
