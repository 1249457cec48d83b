#include "nadeum/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace nadeum {

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Interpretation& in) : in_(in), env_(in.env) {}

  Element term(const Term& t) {
    if (t.is_var()) {
      if (t.index() >= env_.size()) throw UnboundVariable(t.index());
      return env_[env_.size() - 1 - t.index()];
    }
    auto it = in_.functions.find({t.name(), t.args().size()});
    if (it == in_.functions.end()) throw MissingDenotation(t.name(), t.args().size());
    return it->second[cell(t.args())];
  }

  bool formula(const Formula& p) {
    switch (p.kind()) {
      case FormulaKind::Falsity:
        return false;
      case FormulaKind::Pre: {
        auto it = in_.predicates.find({p.name(), p.args().size()});
        if (it == in_.predicates.end()) throw MissingDenotation(p.name(), p.args().size());
        return it->second[cell(p.args())];
      }
      case FormulaKind::Imp:
        return formula(p.lhs()) ? formula(p.rhs()) : true;
      case FormulaKind::Dis:
        return formula(p.lhs()) ? true : formula(p.rhs());
      case FormulaKind::Con:
        return formula(p.lhs()) ? formula(p.rhs()) : false;
      case FormulaKind::Exi:
      case FormulaKind::Uni: {
        bool universal = p.is(FormulaKind::Uni);
        env_.push_back(0);
        bool result = universal;
        for (std::size_t x = 0; x < in_.universe_size; ++x) {
          env_.back() = static_cast<Element>(x);
          if (formula(p.body()) != universal) {
            result = !universal;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  std::size_t cell(const std::vector<Term>& args) {
    std::size_t index = 0;
    for (const auto& a : args) index = index * in_.universe_size + term(a);
    return index;
  }

  const Interpretation& in_;
  std::vector<Element> env_;
};

double saturating_pow(double base, double exp) {
  double r = std::pow(base, exp);
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

}  // namespace

Element eval_term(const Term& t, const Interpretation& in) { return Evaluator(in).term(t); }

bool eval(const Formula& p, const Interpretation& in) { return Evaluator(in).formula(p); }

std::size_t table_size(std::size_t universe_size, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= universe_size;
  return n;
}

// ---------------------------------------------------------------- enumeration

InterpretationSpace::InterpretationSpace(Signature signature, std::size_t universe_size)
    : universe_size_(universe_size), count_(1) {
  for (const auto& s : signature) {
    double cells_d = saturating_pow(static_cast<double>(universe_size), static_cast<double>(s.arity));
    bool predicate = s.kind == Symbol::Kind::Predicate;
    double radix = predicate ? 2.0 : static_cast<double>(universe_size);
    count_ *= saturating_pow(radix, cells_d);
    std::size_t cells = cells_d < 1e9 ? static_cast<std::size_t>(cells_d) : 0;
    slots_.push_back(Slot{{s.name, s.arity}, predicate, cells});
  }
}

Interpretation InterpretationSpace::at(std::uint64_t rank) const {
  Interpretation in;
  in.universe_size = universe_size_;
  for (const auto& slot : slots_) {
    if (slot.predicate)
      in.predicates[slot.key].assign(slot.cells, false);
    else
      in.functions[slot.key].assign(slot.cells, 0);
  }
  for (auto slot = slots_.rbegin(); slot != slots_.rend(); ++slot) {
    if (slot->predicate) {
      auto& table = in.predicates[slot->key];
      for (std::size_t c = table.size(); c-- > 0;) {
        table[c] = rank % 2 != 0;
        rank /= 2;
      }
    } else {
      auto& table = in.functions[slot->key];
      for (std::size_t c = table.size(); c-- > 0;) {
        table[c] = static_cast<Element>(rank % universe_size_);
        rank /= universe_size_;
      }
    }
  }
  return in;
}

std::optional<std::uint64_t> InterpretationSpace::for_each(
    const std::function<bool(const Interpretation&)>& visit, std::uint64_t begin,
    std::optional<std::uint64_t> end) const {
  std::uint64_t stop = end.value_or(static_cast<std::uint64_t>(count_));
  if (begin >= stop) return std::nullopt;
  Interpretation in = at(begin);

  // Odometer increment with the last cell of the last slot fastest.
  auto increment = [&] {
    for (auto slot = slots_.rbegin(); slot != slots_.rend(); ++slot) {
      if (slot->predicate) {
        auto& table = in.predicates[slot->key];
        for (std::size_t c = table.size(); c-- > 0;) {
          if (!table[c]) {
            table[c] = true;
            return;
          }
          table[c] = false;
        }
      } else {
        auto& table = in.functions[slot->key];
        for (std::size_t c = table.size(); c-- > 0;) {
          if (table[c] + 1 < universe_size_) {
            ++table[c];
            return;
          }
          table[c] = 0;
        }
      }
    }
  };

  for (std::uint64_t rank = begin; rank < stop; ++rank) {
    if (!visit(in)) return rank;
    if (rank + 1 < stop) increment();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- countermodels

namespace {

// The interpretation space flattened into one mixed-radix digit vector, in
// the same slot order as InterpretationSpace, with formulas compiled against
// digit offsets so that evaluation needs no symbol lookups.
class FlatSpace {
 public:
  FlatSpace(const Signature& sig, std::size_t n) : n_(n) {
    for (const auto& s : sig) {
      offsets_[s] = radix_.size();
      std::size_t cells = table_size(n, s.arity);
      radix_.insert(radix_.end(), cells, s.kind == Symbol::Kind::Predicate ? 2u : static_cast<Element>(n));
    }
  }

  struct CTerm {
    std::size_t var = kNoVar;
    std::size_t offset = 0;
    std::vector<CTerm> args;
  };
  struct CFormula {
    FormulaKind kind;
    std::size_t offset = 0;
    std::vector<CTerm> args;
    std::vector<CFormula> sub;
  };
  static constexpr std::size_t kNoVar = std::numeric_limits<std::size_t>::max();

  CTerm compile(const Term& t) const {
    if (t.is_var()) return CTerm{t.index(), 0, {}};
    CTerm c{kNoVar, offsets_.at(Symbol{Symbol::Kind::Function, t.name(), t.args().size()}), {}};
    for (const auto& a : t.args()) c.args.push_back(compile(a));
    return c;
  }

  CFormula compile(const Formula& p) const {
    CFormula c{p.kind(), 0, {}, {}};
    switch (p.kind()) {
      case FormulaKind::Falsity:
        break;
      case FormulaKind::Pre:
        c.offset = offsets_.at(Symbol{Symbol::Kind::Predicate, p.name(), p.args().size()});
        for (const auto& a : p.args()) c.args.push_back(compile(a));
        break;
      case FormulaKind::Imp:
      case FormulaKind::Dis:
      case FormulaKind::Con:
        c.sub = {compile(p.lhs()), compile(p.rhs())};
        break;
      case FormulaKind::Exi:
      case FormulaKind::Uni:
        c.sub = {compile(p.body())};
        break;
    }
    return c;
  }

  void decode(std::uint64_t rank, std::vector<Element>& digits) const {
    digits.assign(radix_.size(), 0);
    for (std::size_t i = radix_.size(); i-- > 0;) {
      digits[i] = static_cast<Element>(rank % radix_[i]);
      rank /= radix_[i];
    }
  }

  void increment(std::vector<Element>& digits) const {
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < radix_[i]) return;
      digits[i] = 0;
    }
  }

  bool eval(const CFormula& p, const std::vector<Element>& digits, std::vector<Element>& env) const {
    switch (p.kind) {
      case FormulaKind::Falsity:
        return false;
      case FormulaKind::Pre:
        return digits[p.offset + cell(p.args, digits, env)] != 0;
      case FormulaKind::Imp:
        return eval(p.sub[0], digits, env) ? eval(p.sub[1], digits, env) : true;
      case FormulaKind::Dis:
        return eval(p.sub[0], digits, env) ? true : eval(p.sub[1], digits, env);
      case FormulaKind::Con:
        return eval(p.sub[0], digits, env) ? eval(p.sub[1], digits, env) : false;
      case FormulaKind::Exi:
      case FormulaKind::Uni: {
        bool universal = p.kind == FormulaKind::Uni;
        bool result = universal;
        env.push_back(0);
        for (std::size_t x = 0; x < n_; ++x) {
          env.back() = static_cast<Element>(x);
          if (eval(p.sub[0], digits, env) != universal) {
            result = !universal;
            break;
          }
        }
        env.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  Element term(const CTerm& t, const std::vector<Element>& digits, const std::vector<Element>& env) const {
    if (t.var != kNoVar) return env[env.size() - 1 - t.var];
    return digits[t.offset + cell(t.args, digits, env)];
  }

  std::size_t cell(const std::vector<CTerm>& args, const std::vector<Element>& digits,
                   const std::vector<Element>& env) const {
    std::size_t index = 0;
    for (const auto& a : args) index = index * n_ + term(a, digits, env);
    return index;
  }

  std::size_t n_;
  std::map<Symbol, std::size_t> offsets_;
  std::vector<Element> radix_;
};

}  // namespace

std::optional<Countermodel> find_countermodel(const Formula& p, const CountermodelSearch& opts) {
  Formula closure = universal_closure(p);
  Signature sig;
  collect_symbols(closure, sig);

  for (std::size_t size = 1; size <= opts.max_universe; ++size) {
    InterpretationSpace space(sig, size);
    if (space.count() > opts.budget) throw BudgetExceeded(space.count());
    auto total = static_cast<std::uint64_t>(space.count());
    FlatSpace flat(sig, size);
    const FlatSpace::CFormula program = flat.compile(closure);

    unsigned workers = std::max(1u, opts.workers);
    if (total < 1024) workers = 1;
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::atomic<bool> aborted{false};

    // Each range stops at its first hit; the smallest rank over all ranges
    // is the lexicographically first countermodel.
    auto search_range = [&](std::uint64_t lo, std::uint64_t hi) {
      std::vector<Element> digits, env;
      flat.decode(lo, digits);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        if (rank >= best.load(std::memory_order_relaxed)) return;
        if (opts.cancelled && ((rank - lo) & 0xff) == 0 && opts.cancelled()) {
          aborted = true;
          return;
        }
        if (!flat.eval(program, digits, env)) {
          std::uint64_t cur = best.load();
          while (rank < cur && !best.compare_exchange_weak(cur, rank)) {
          }
          return;
        }
        flat.increment(digits);
      }
    };

    if (workers == 1) {
      search_range(0, total);
    } else {
      std::vector<std::thread> pool;
      std::uint64_t chunk = (total + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = w * chunk;
        std::uint64_t hi = std::min(total, lo + chunk);
        if (lo < hi) pool.emplace_back(search_range, lo, hi);
      }
      for (auto& t : pool) t.join();
    }
    if (aborted) return std::nullopt;
    if (best.load() != std::numeric_limits<std::uint64_t>::max())
      return Countermodel{space.at(best.load()), closure};
  }
  return std::nullopt;
}

}  // namespace nadeum
