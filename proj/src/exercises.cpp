#include "nadeum/exercises.hpp"

#include <cstdlib>
#include <filesystem>

#include "nadeum/codec.hpp"
#include "nadeum/surface.hpp"

#ifndef NADEUM_DEFAULT_EXERCISES_DIR
#define NADEUM_DEFAULT_EXERCISES_DIR "exercises"
#endif

namespace nadeum {

std::string_view policy_name(RevealPolicy p) {
  switch (p) {
    case RevealPolicy::Full:
      return "full";
    case RevealPolicy::Stepwise:
      return "stepwise";
    case RevealPolicy::Withheld:
      return "withheld";
  }
  return "withheld";
}

std::string default_corpus_dir() {
  if (const char* env = std::getenv("NADEUM_EXERCISES"); env && *env) return env;
  return NADEUM_DEFAULT_EXERCISES_DIR;
}

std::vector<Exercise> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  using codec::json;
  const fs::path root(dir);
  json manifest = codec::read_file((root / "manifest.json").string());
  if (!manifest.contains("exercises") || !manifest["exercises"].is_array())
    throw FormatError("manifest.json: missing exercise list");

  std::vector<Exercise> corpus;
  for (const auto& entry : manifest["exercises"]) {
    Exercise ex;
    ex.id = entry.value("id", "");
    if (ex.id.empty()) throw FormatError("manifest.json: exercise without id");
    ex.title = entry.value("title", ex.id);
    ex.text = entry.value("formula", "");
    try {
      ex.formula = parse_formula(ex.text);
    } catch (const Error& e) {
      throw CorpusCorrupt(ex.id, e.what());
    }
    std::string policy = entry.value("policy", "full");
    if (policy == "full")
      ex.policy = RevealPolicy::Full;
    else if (policy == "stepwise")
      ex.policy = RevealPolicy::Stepwise;
    else if (policy == "withheld")
      ex.policy = RevealPolicy::Withheld;
    else
      throw CorpusCorrupt(ex.id, "unknown policy '" + policy + "'");

    if (entry.contains("script") && entry["script"].is_string()) {
      ProofScript script;
      try {
        script = codec::script_from_json(codec::read_file((root / entry["script"].get<std::string>()).string()));
      } catch (const Error& e) {
        throw CorpusCorrupt(ex.id, e.what());
      }
      if (!(script.root == ex.formula) || !script.assumptions.empty())
        throw CorpusCorrupt(ex.id, "solution proves a different formula");
      Verdict v = replay(script);
      if (!v.complete()) throw CorpusCorrupt(ex.id, "bundled solution does not replay Complete");
      ex.solution = std::move(script);
    }
    if (ex.policy != RevealPolicy::Withheld && !ex.solution)
      throw CorpusCorrupt(ex.id, "no bundled solution");
    corpus.push_back(std::move(ex));
  }
  return corpus;
}

const Exercise* find_exercise(const std::vector<Exercise>& corpus, const std::string& id) {
  for (const auto& ex : corpus)
    if (ex.id == id) return &ex;
  return nullptr;
}

ProofScript reveal(const Exercise& ex, std::size_t upto_step) {
  if (ex.policy == RevealPolicy::Withheld || !ex.solution) throw Withheld(ex.id);
  const auto& steps = ex.solution->steps;
  if (upto_step > steps.size()) throw StepOutOfRange(upto_step, steps.size());
  ProofScript prefix{ex.solution->root, ex.solution->assumptions, {}};
  prefix.steps.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(upto_step));
  return prefix;
}

}  // namespace nadeum
