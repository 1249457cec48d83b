// nadeum: batch front end for the proof kernel, prover and service.

#include <chrono>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "nadeum/codec.hpp"
#include "nadeum/exercises.hpp"
#include "nadeum/service.hpp"
#include "nadeum/surface.hpp"

using namespace nadeum;
using codec::json;

namespace {

int exit_code(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Complete:
      return 0;
    case Verdict::Status::Incomplete:
      return 1;
    case Verdict::Status::Rejected:
      return 2;
  }
  return 2;
}

int run_check(const std::string& path) {
  ProofScript script = codec::script_from_json(codec::read_file(path));
  Verdict v = replay(script);
  std::cout << codec::to_json(v).dump(2) << '\n';
  return exit_code(v.status);
}

void print_countermodel(const Countermodel& m) {
  std::cout << "countermodel of size " << m.interpretation.universe_size << " for "
            << print_formula(m.closure) << '\n';
  for (const auto& [key, table] : m.interpretation.functions) {
    std::cout << "  " << key.first << '/' << key.second << ':';
    for (Element e : table) std::cout << ' ' << e;
    std::cout << '\n';
  }
  for (const auto& [key, table] : m.interpretation.predicates) {
    std::cout << "  " << key.first << '/' << key.second << ':';
    for (bool b : table) std::cout << ' ' << (b ? 1 : 0);
    std::cout << '\n';
  }
}

int run_prove(const std::string& text, const SearchConfig& cfg) {
  Formula f = parse_formula(text);
  Feedback fb = prove(Goal{{}, f}, cfg);
  switch (fb.status) {
    case Feedback::Status::Provable:
      std::cout << codec::to_json(*fb.script).dump(2) << '\n';
      return 0;
    case Feedback::Status::Refuted:
      std::cout << "Refuted\n";
      print_countermodel(*fb.countermodel);
      return 1;
    case Feedback::Status::Unknown:
      std::cout << "Unknown";
      if (!fb.note.empty()) std::cout << ": " << fb.note;
      std::cout << '\n';
      return 1;
  }
  return 1;
}

int run_countermodel(const std::string& text, std::size_t max_universe) {
  CountermodelSearch opts;
  opts.max_universe = max_universe;
  auto m = find_countermodel(parse_formula(text), opts);
  if (!m) {
    std::cout << "no countermodel with at most " << max_universe << " elements\n";
    return 1;
  }
  print_countermodel(*m);
  return 0;
}

int run_hilbert(const std::string& path) {
  hilbert::Verdict v = hilbert::check(codec::hilbert_proof_from_json(codec::read_file(path)));
  std::cout << codec::to_json(v).dump(2) << '\n';
  return v.accepted ? 0 : 2;
}

int run_exercises(const std::string& dir) {
  auto started = std::chrono::steady_clock::now();
  std::vector<Exercise> corpus = load_corpus(dir);
  std::size_t complete = 0, checked = 0, withheld = 0;
  for (const auto& ex : corpus) {
    std::cout << std::left << std::setw(12) << ex.id << std::setw(10) << policy_name(ex.policy);
    if (!ex.solution) {
      ++withheld;
      std::cout << "withheld\n";
      continue;
    }
    ++checked;
    Verdict v = replay(*ex.solution);
    ProofScript trimmed = trim(SessionHistory{ex.solution->root, [&] {
      std::vector<HistoryEvent> events;
      for (const auto& s : ex.solution->steps) events.push_back(HistoryEvent::applied(s));
      return events;
    }()});
    if (v.complete()) ++complete;
    std::cout << (v.complete() ? "complete" : "FAILED  ") << "  " << trimmed.steps.size()
              << " steps\n";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - started)
                .count();
  std::cout << complete << '/' << checked << " complete, " << withheld << " withheld, " << ms
            << " ms\n";
  return complete == checked ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural deduction proof assistant"};
  app.require_subcommand(1);

  std::string path, text;
  auto* check = app.add_subcommand("check", "Replay a proof script (exit 0/1/2)");
  check->add_option("script", path, "ProofScript JSON")->required();

  SearchConfig cfg;
  bool no_classical = false;
  std::size_t budget_ms = static_cast<std::size_t>(cfg.time_budget.count());
  auto* prove_cmd = app.add_subcommand("prove", "Search for a proof of a formula");
  prove_cmd->add_option("formula", text)->required();
  prove_cmd->add_option("--depth", cfg.max_depth, "Choice-point depth bound")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--term-depth", cfg.max_term_depth, "Witness term depth")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--budget", budget_ms, "Time budget in milliseconds")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-universe", cfg.countermodel_max_universe, "Countermodel size bound")
      ->check(CLI::PositiveNumber);
  prove_cmd->add_flag("--no-classical", no_classical, "Disable the Boole rule");

  std::size_t max_universe = 3;
  auto* cm = app.add_subcommand("countermodel", "Search for a finite countermodel");
  cm->add_option("formula", text)->required();
  cm->add_option("--max-universe", max_universe)->check(CLI::PositiveNumber);

  auto* trim_cmd = app.add_subcommand("trim", "Reduce a session history to its net script");
  trim_cmd->add_option("history", path)->required();

  auto* export_cmd = app.add_subcommand("export", "Print a certificate for a complete script");
  export_cmd->add_option("script", path)->required();

  auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert-style derivations");
  hilbert_cmd->require_subcommand(1);
  auto* hcheck = hilbert_cmd->add_subcommand("check", "Check a Hilbert derivation");
  hcheck->add_option("proof", path)->required();

  std::string corpus_dir = default_corpus_dir();
  auto* ex_cmd = app.add_subcommand("exercises", "Exercise corpus");
  ex_cmd->require_subcommand(1);
  auto* ex_run = ex_cmd->add_subcommand("run", "Replay every bundled solution");
  ex_run->add_option("--dir", corpus_dir, "Corpus directory");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  std::string address;
  serve_cmd->add_option("--addr", address, "host:port (overrides NADEUM_ADDR)");
  serve_cmd->add_option("--dir", corpus_dir, "Corpus directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(path);
    if (*prove_cmd) {
      cfg.classical = !no_classical;
      cfg.time_budget = std::chrono::milliseconds(budget_ms);
      return run_prove(text, cfg);
    }
    if (*cm) return run_countermodel(text, max_universe);
    if (*trim_cmd) {
      std::cout << codec::to_json(trim(codec::history_from_json(codec::read_file(path)))).dump(2)
                << '\n';
      return 0;
    }
    if (*export_cmd) {
      std::cout << export_certificate(codec::script_from_json(codec::read_file(path)));
      return 0;
    }
    if (*hcheck) return run_hilbert(path);
    if (*ex_run) return run_exercises(corpus_dir);
    if (*serve_cmd) {
      ServiceOptions opts = options_from_env();
      opts.corpus_dir = corpus_dir;
      if (!address.empty()) opts.address = address;
      Service service(opts);
      std::size_t restored = service.recover();
      std::cerr << "nadeum: listening on " << opts.address << " (" << restored
                << " sessions restored)\n";
      serve(service);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
