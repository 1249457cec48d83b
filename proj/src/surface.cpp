#include "nadeum/surface.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace nadeum {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& message)
    : Error("ParseError", message), offset_(offset), expected_(std::move(expected)) {}

ArityError::ArityError(std::size_t offset, std::string name, std::size_t first,
                       std::size_t second)
    : Error("ArityError", "'" + name + "' used with arity " + std::to_string(second) +
                              " but earlier with arity " + std::to_string(first)),
      offset_(offset),
      name_(std::move(name)) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

enum class Tok { End, Ident, FreeVar, LParen, RParen, Comma, Dot, Not, And, Or, Arrow };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string text;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Formula formula_document() {
    Formula p = parse_imp();
    expect_end();
    return p;
  }

  Term term_document() {
    Term t = parse_term();
    expect_end();
    return t;
  }

 private:
  // ---- lexing

  void advance() {
    std::size_t i = pos_;
    while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
    tok_ = Token{};
    tok_.offset = i;
    if (i >= text_.size()) {
      pos_ = i;
      return;
    }
    char c = text_[i];
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      pos_ = i + 1;
    };
    auto twochar = [&](std::string_view s, Tok k) {
      if (text_.substr(i, 2) == s) {
        tok_.kind = k;
        tok_.text = std::string(s);
        pos_ = i + 2;
        return true;
      }
      return false;
    };
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text_.size() && ident_char(text_[j])) ++j;
      tok_.kind = Tok::Ident;
      tok_.text = std::string(text_.substr(i, j - i));
      pos_ = j;
      return;
    }
    switch (c) {
      case '(':
        return single(Tok::LParen);
      case ')':
        return single(Tok::RParen);
      case ',':
        return single(Tok::Comma);
      case '.':
        return single(Tok::Dot);
      case '~':
        return single(Tok::Not);
      case '#': {
        std::size_t j = i + 1;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        if (j == i + 1) fail(i + 1, {"digit"}, "expected a variable index after '#'");
        tok_.kind = Tok::FreeVar;
        tok_.text = std::string(text_.substr(i, j - i));
        pos_ = j;
        return;
      }
      default:
        break;
    }
    if (twochar("/\\", Tok::And) || twochar("\\/", Tok::Or) || twochar("->", Tok::Arrow)) return;
    fail(i, {}, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(std::size_t offset, std::vector<std::string> expected,
                         const std::string& message) {
    throw ParseError(offset, std::move(expected),
                     "offset " + std::to_string(offset) + ": " + message);
  }

  [[noreturn]] void unexpected(std::vector<std::string> expected) {
    std::string msg = "unexpected " + describe(tok_) + ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    fail(tok_.offset, std::move(expected), msg);
  }

  void expect(Tok k, const std::string& what) {
    if (tok_.kind != k) unexpected({what});
    advance();
  }

  void expect_end() {
    if (tok_.kind != Tok::End) unexpected({"end of input", "'->'", "'\\/'", "'/\\'"});
  }

  static bool keyword(const std::string& s) { return s == "uni" || s == "exi" || s == "False"; }

  // ---- arity bookkeeping

  void note_arity(std::map<std::string, std::size_t>& table, const std::string& name,
                  std::size_t arity, std::size_t offset) {
    auto [it, inserted] = table.emplace(name, arity);
    if (!inserted && it->second != arity) throw ArityError(offset, name, it->second, arity);
  }

  // ---- formulas

  Formula parse_imp() {
    Formula lhs = parse_dis();
    if (tok_.kind == Tok::Arrow) {
      advance();
      return Formula::imp(std::move(lhs), parse_imp());
    }
    return lhs;
  }

  Formula parse_dis() {
    Formula lhs = parse_con();
    if (tok_.kind == Tok::Or) {
      advance();
      return Formula::dis(std::move(lhs), parse_dis());
    }
    return lhs;
  }

  Formula parse_con() {
    Formula lhs = parse_unary();
    if (tok_.kind == Tok::And) {
      advance();
      return Formula::con(std::move(lhs), parse_con());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (tok_.kind) {
      case Tok::Not:
        advance();
        return Formula::neg(parse_unary());
      case Tok::LParen: {
        advance();
        Formula p = parse_imp();
        expect(Tok::RParen, "')'");
        return p;
      }
      case Tok::Ident:
        break;
      default:
        unexpected({"formula"});
    }
    if (tok_.text == "False") {
      advance();
      return Formula::falsity();
    }
    if (tok_.text == "uni" || tok_.text == "exi") {
      bool universal = tok_.text == "uni";
      advance();
      if (tok_.kind != Tok::Ident || keyword(tok_.text)) unexpected({"variable name"});
      binders_.push_back(tok_.text);
      advance();
      expect(Tok::Dot, "'.'");
      Formula body = parse_imp();
      binders_.pop_back();
      return universal ? Formula::uni(std::move(body)) : Formula::exi(std::move(body));
    }
    std::string name = tok_.text;
    std::size_t offset = tok_.offset;
    advance();
    std::vector<Term> args;
    if (tok_.kind == Tok::LParen) args = parse_args();
    note_arity(predicates_, name, args.size(), offset);
    return Formula::pre(std::move(name), std::move(args));
  }

  // ---- terms

  std::vector<Term> parse_args() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (tok_.kind == Tok::RParen) {
      advance();
      return args;
    }
    args.push_back(parse_term());
    while (tok_.kind == Tok::Comma) {
      advance();
      args.push_back(parse_term());
    }
    expect(Tok::RParen, "')' or ','");
    return args;
  }

  Term parse_term() {
    if (tok_.kind == Tok::FreeVar) {
      std::size_t n = std::stoul(tok_.text.substr(1));
      advance();
      return Term::var(n + binders_.size());
    }
    if (tok_.kind != Tok::Ident || keyword(tok_.text)) unexpected({"term"});
    std::string name = tok_.text;
    std::size_t offset = tok_.offset;
    advance();
    std::optional<std::size_t> bound;
    for (std::size_t i = binders_.size(); i-- > 0;) {
      if (binders_[i] == name) {
        bound = binders_.size() - 1 - i;
        break;
      }
    }
    if (tok_.kind == Tok::LParen) {
      if (bound) fail(tok_.offset, {}, "bound variable '" + name + "' applied to arguments");
      std::vector<Term> args = parse_args();
      note_arity(functions_, name, args.size(), offset);
      return Term::fun(std::move(name), std::move(args));
    }
    if (bound) return Term::var(*bound);
    note_arity(functions_, name, 0, offset);
    return Term::fun(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
  std::vector<std::string> binders_;
  std::map<std::string, std::size_t> functions_;
  std::map<std::string, std::size_t> predicates_;
};

// ---- printing

constexpr int kPrecImp = 1;
constexpr int kPrecDis = 2;
constexpr int kPrecCon = 3;
constexpr int kPrecUnary = 4;

class Printer {
 public:
  explicit Printer(const Formula& root) {
    Signature sig;
    collect_symbols(root, sig);
    for (const auto& s : sig)
      if (s.kind == Symbol::Kind::Function) taken_.insert(s.name);
  }

  explicit Printer(const Term& root) {
    Signature sig;
    collect_symbols(root, sig);
    for (const auto& s : sig)
      if (s.kind == Symbol::Kind::Function) taken_.insert(s.name);
  }

  std::string formula(const Formula& p, int min_prec, bool rightmost) {
    switch (p.kind()) {
      case FormulaKind::Falsity:
        return "False";
      case FormulaKind::Pre: {
        std::string s = p.name();
        if (!p.args().empty()) s += args(p.args());
        return s;
      }
      case FormulaKind::Imp:
        if (p.rhs().is(FormulaKind::Falsity) && !p.lhs().is(FormulaKind::Falsity))
          return "~" + formula(p.lhs(), kPrecUnary, rightmost);
        return binary(p, kPrecImp, " -> ", min_prec, rightmost);
      case FormulaKind::Dis:
        return binary(p, kPrecDis, " \\/ ", min_prec, rightmost);
      case FormulaKind::Con:
        return binary(p, kPrecCon, " /\\ ", min_prec, rightmost);
      case FormulaKind::Exi:
      case FormulaKind::Uni: {
        std::string name = binder_name(binders_.size());
        binders_.push_back(name);
        std::string s = (p.is(FormulaKind::Uni) ? "uni " : "exi ") + name + ". " +
                        formula(p.body(), 0, true);
        binders_.pop_back();
        return rightmost ? s : "(" + s + ")";
      }
    }
    return {};
  }

  std::string term(const Term& t) {
    if (t.is_var()) {
      if (t.index() < binders_.size()) return binders_[binders_.size() - 1 - t.index()];
      return "#" + std::to_string(t.index() - binders_.size());
    }
    if (t.args().empty()) return t.name();
    return t.name() + args(t.args());
  }

 private:
  std::string binary(const Formula& p, int prec, const char* op, int min_prec, bool rightmost) {
    bool parens = prec < min_prec;
    bool inner_rightmost = parens || rightmost;
    std::string s = formula(p.lhs(), prec + 1, false) + op + formula(p.rhs(), prec, inner_rightmost);
    return parens ? "(" + s + ")" : s;
  }

  std::string args(const std::vector<Term>& ts) {
    std::string s = "(";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) s += ", ";
      s += term(ts[i]);
    }
    return s + ")";
  }

  // x, y, z, u1, u2, ... skipping names used as functions in the formula.
  std::string binder_name(std::size_t depth) {
    while (names_.size() <= depth) {
      std::string candidate;
      do {
        ++counter_;
        candidate = counter_ <= 3 ? std::string(1, "xyz"[counter_ - 1])
                                  : "u" + std::to_string(counter_ - 3);
      } while (taken_.count(candidate));
      names_.push_back(candidate);
    }
    return names_[depth];
  }

  std::set<std::string> taken_;
  std::vector<std::string> names_;
  std::vector<std::string> binders_;
  std::size_t counter_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_document(); }

Term parse_term(std::string_view text) { return Parser(text).term_document(); }

std::string print_formula(const Formula& p) { return Printer(p).formula(p, 0, true); }

std::string print_term(const Term& t) { return Printer(t).term(t); }

}  // namespace nadeum
