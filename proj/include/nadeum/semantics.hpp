#ifndef NADEUM_SEMANTICS_HPP_
#define NADEUM_SEMANTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nadeum/error.hpp"
#include "nadeum/syntax.hpp"

namespace nadeum {

class MissingDenotation : public Error {
 public:
  MissingDenotation(const std::string& name, std::size_t arity)
      : Error("MissingDenotation",
              "no denotation for '" + name + "'/" + std::to_string(arity)) {}
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::size_t index)
      : Error("UnboundVariable", "variable " + std::to_string(index) + " is unbound") {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(double estimated)
      : Error("BudgetExceeded", "interpretation space of ~" + std::to_string(estimated) +
                                    " exceeds the search budget"),
        estimated_(estimated) {}

  double estimated() const noexcept { return estimated_; }

 private:
  double estimated_;
};

using Element = std::uint32_t;
using SymbolKey = std::pair<std::string, std::size_t>;  // (name, arity)

// A structure over the universe {0, ..., universe_size - 1}. Tables are
// indexed by the argument tuple read as a base-`universe_size` number with
// the first argument most significant.
struct Interpretation {
  std::size_t universe_size = 1;
  std::vector<Element> env;  // innermost binder last: Var(i) is env[env.size() - 1 - i]
  std::map<SymbolKey, std::vector<Element>> functions;
  std::map<SymbolKey, std::vector<bool>> predicates;
};

Element eval_term(const Term& t, const Interpretation& in);
bool eval(const Formula& p, const Interpretation& in);

std::size_t table_size(std::size_t universe_size, std::size_t arity);

// Lexicographic enumeration of all interpretations of a signature. The table
// cells are digits of a single mixed-radix counter; the last cell of the last
// symbol varies fastest.
class InterpretationSpace {
 public:
  InterpretationSpace(Signature signature, std::size_t universe_size);

  // Number of interpretations, saturated to a double for huge spaces.
  double count() const noexcept { return count_; }
  std::size_t universe_size() const noexcept { return universe_size_; }

  // Interpretation with the given lexicographic rank; requires rank < count().
  Interpretation at(std::uint64_t rank) const;

  // Calls visit for every interpretation in order until it returns false.
  // Returns the rank at which it stopped, or nullopt if exhausted.
  std::optional<std::uint64_t> for_each(
      const std::function<bool(const Interpretation&)>& visit, std::uint64_t begin = 0,
      std::optional<std::uint64_t> end = std::nullopt) const;

 private:
  struct Slot {
    SymbolKey key;
    bool predicate;
    std::size_t cells;
  };
  std::vector<Slot> slots_;
  std::size_t universe_size_;
  double count_;
};

struct CountermodelSearch {
  std::size_t max_universe = 3;
  double budget = 2e6;  // interpretations per universe size
  unsigned workers = 1;
  // Polled between interpretations; returning true aborts the search.
  std::function<bool()> cancelled;
};

struct Countermodel {
  Interpretation interpretation;
  Formula closure;  // the universally closed formula evaluated to false
};

// Searches universe sizes 1..max_universe in order and returns the first
// falsifying interpretation of the universal closure. nullopt means no
// countermodel up to that size (or cancellation), never validity.
std::optional<Countermodel> find_countermodel(const Formula& p,
                                              const CountermodelSearch& opts = {});

}  // namespace nadeum

#endif  // NADEUM_SEMANTICS_HPP_
