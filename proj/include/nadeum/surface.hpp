#ifndef NADEUM_SURFACE_HPP_
#define NADEUM_SURFACE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nadeum/error.hpp"
#include "nadeum/syntax.hpp"

namespace nadeum {

// Concrete ASCII syntax:
//
//   False   ~p   p /\ q   p \/ q   p -> q   uni x. p   exi x. p   name(t1, ..., tn)
//
// Precedence ~ > /\ > \/ > ->, all binary connectives associate to the right,
// binders extend as far right as possible. Unbound names in term position are
// constants or functions. `#n` denotes the free de Bruijn variable n (only
// needed for open formulas such as quantifier bodies).

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class ArityError : public Error {
 public:
  ArityError(std::size_t offset, std::string name, std::size_t first, std::size_t second);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

std::string print_formula(const Formula& p);
std::string print_term(const Term& t);

}  // namespace nadeum

#endif  // NADEUM_SURFACE_HPP_
