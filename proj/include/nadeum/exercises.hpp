#ifndef NADEUM_EXERCISES_HPP_
#define NADEUM_EXERCISES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "nadeum/error.hpp"
#include "nadeum/kernel.hpp"

namespace nadeum {

enum class RevealPolicy { Full, Stepwise, Withheld };

std::string_view policy_name(RevealPolicy p);

struct Exercise {
  std::string id;     // "test-3", "hint-9", "assign-4", "example-1"
  std::string title;  // "Test 3"
  std::string text;   // surface syntax as listed in the manifest
  Formula formula;
  std::optional<ProofScript> solution;
  RevealPolicy policy = RevealPolicy::Full;
};

class CorpusCorrupt : public Error {
 public:
  CorpusCorrupt(const std::string& id, const std::string& why)
      : Error("CorpusCorrupt", "exercise " + id + ": " + why), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class Withheld : public Error {
 public:
  explicit Withheld(const std::string& id)
      : Error("Withheld", "the solution to " + id + " is not provided") {}
};

class StepOutOfRange : public Error {
 public:
  StepOutOfRange(std::size_t asked, std::size_t available)
      : Error("StepOutOfRange", "asked for " + std::to_string(asked) + " steps of " +
                                    std::to_string(available)) {}
};

// Directory holding manifest.json. Taken from NADEUM_EXERCISES if set,
// otherwise the location configured at build time.
std::string default_corpus_dir();

// Reads manifest.json and the referenced scripts; every bundled solution must
// prove its formula, otherwise CorpusCorrupt.
std::vector<Exercise> load_corpus(const std::string& dir = default_corpus_dir());

const Exercise* find_exercise(const std::vector<Exercise>& corpus, const std::string& id);

// The first `upto_step` steps of the solution.
ProofScript reveal(const Exercise& ex, std::size_t upto_step);

}  // namespace nadeum

#endif  // NADEUM_EXERCISES_HPP_
