#ifndef NADEUM_PROVER_HPP_
#define NADEUM_PROVER_HPP_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nadeum/kernel.hpp"
#include "nadeum/semantics.hpp"

namespace nadeum {

struct SearchConfig {
  std::size_t max_depth = 12;       // choice points along one branch
  std::size_t max_term_depth = 2;   // nesting of synthesized witness terms
  bool classical = true;            // allow Boole
  std::chrono::milliseconds time_budget{5000};
  std::size_t countermodel_max_universe = 3;
};

// Throws std::invalid_argument if a bound is zero.
void validate(const SearchConfig& cfg);

struct Feedback {
  enum class Status { Provable, Refuted, Unknown };
  Status status = Status::Unknown;
  std::optional<ProofScript> script;          // Provable: replays Complete
  std::optional<Countermodel> countermodel;   // Refuted: falsifies the sequent
  std::string note;
};

std::string_view status_name(Feedback::Status s);

// Backward search only. Returns a kernel-checked script or nullopt when the
// bounds or the time budget are exhausted (or `cancel` is raised).
std::optional<ProofScript> search_proof(const Goal& goal, const SearchConfig& cfg,
                                        const std::atomic<bool>* cancel = nullptr);

// The formula whose validity is equivalent to the sequent, oldest assumption
// outermost: introducing its antecedents rebuilds the assumption list.
Formula sequent_formula(const Goal& goal);

// Proof search and countermodel search in parallel; the first definitive
// answer wins.
Feedback prove(const Goal& goal, const SearchConfig& cfg = {});

// Feedback for every open goal of a proof state, in goal order.
std::vector<Feedback> hint(const ProofState& state, const SearchConfig& cfg = {});

}  // namespace nadeum

#endif  // NADEUM_PROVER_HPP_
