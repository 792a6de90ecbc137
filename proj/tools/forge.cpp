// forge: command-line driver for the lattice single-identity toolkit.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "forge/enumerate.hpp"
#include "forge/fixtures.hpp"
#include "forge/model_finder.hpp"
#include "forge/pipeline.hpp"
#include "forge/proof.hpp"
#include "forge/prover.hpp"
#include "forge/whitman.hpp"

namespace {

using namespace forge;

std::vector<Equation> read_equation_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::vector<Equation> out;
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(parse_equation(t));
  }
  return out;
}

std::string default_library_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FORGE_LIBRARY")) return env;
  return "";
}

struct LeavesRange {
  int lo = 2, hi = 2;
};

LeavesRange parse_leaves(const std::string& s) {
  size_t dots = s.find("..");
  LeavesRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = std::stoi(s);
  } else {
    r.lo = std::stoi(s.substr(0, dots));
    r.hi = std::stoi(s.substr(dots + 2));
  }
  return r;
}

int cmd_enumerate(const std::string& leaves, int max_vars, bool allow_x_absent,
                  const std::string& shard, bool count_only) {
  EnumSpec spec;
  LeavesRange r = parse_leaves(leaves);
  spec.min_leaves = r.lo;
  spec.max_leaves = r.hi;
  spec.max_distinct_vars = max_vars;
  spec.require_x_in_alpha = !allow_x_absent;
  if (!shard.empty()) {
    size_t slash = shard.find('/');
    if (slash == std::string::npos)
      throw std::runtime_error("--shard wants I/N");
    spec.shard_index = std::stoi(shard.substr(0, slash));
    spec.shard_count = std::stoi(shard.substr(slash + 1));
  }
  if (count_only) {
    std::cout << count_candidates(spec) << "\n";
    return 0;
  }
  spec.validate();
  enumerate_candidates(spec, [](const Equation& e) {
    std::cout << print_equation(e) << "\n";
  });
  return 0;
}

int cmd_filter_identity(bool invert) {
  std::string line;
  while (std::getline(std::cin, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    Equation e = parse_equation(t);
    if (is_identity(e) != invert) std::cout << t << "\n";
  }
  return 0;
}

int cmd_filter_models(const std::string& library) {
  std::string dir = default_library_dir(library);
  ModelLibrary lib = dir.empty() ? ModelLibrary{} : load_library(dir);
  std::string line;
  while (std::getline(std::cin, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    Equation e = parse_equation(t);
    if (passes_model_filter(lib, e)) std::cout << t << "\n";
  }
  return 0;
}

int cmd_find_model(int max_size, const std::string& constraints_file,
                   uint64_t budget) {
  std::vector<Equation> constraints = read_equation_file(constraints_file);
  ModelSearchResult r = find_nonlattice_model(constraints, max_size, budget);
  switch (r.status) {
    case SearchStatus::Found: {
      LibraryModel m;
      m.algebra = *r.model;
      m.provenance = "found-by-search";
      std::string texts;
      for (const Equation& e : constraints) {
        if (!texts.empty()) texts += " ; ";
        texts += canonical_text(e);
      }
      m.candidate = texts;
      write_model(std::cout, m);
      return 0;
    }
    case SearchStatus::None:
      std::cerr << "none: no nonlattice model of size <= " << max_size << " ("
                << r.nodes << " nodes)\n";
      return 1;
    case SearchStatus::BudgetExhausted:
      std::cerr << "budget exhausted after " << r.nodes << " nodes\n";
      return 2;
  }
  return 2;
}

int cmd_verify_model(const std::string& model_file,
                     const std::string& constraints_file) {
  std::ifstream is(model_file);
  if (!is) throw std::runtime_error("cannot open " + model_file);
  LibraryModel m = read_model(is);
  std::vector<Equation> constraints;
  if (!constraints_file.empty())
    constraints = read_equation_file(constraints_file);
  bool ok = verify_model(m.algebra, constraints);
  std::cout << (ok ? "ok" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_verify_library(const std::string& library) {
  std::string dir = default_library_dir(library);
  if (dir.empty()) throw std::runtime_error("no library directory given");
  ModelLibrary lib = load_library(dir);
  bool all_ok_flag = true;
  int index = 0;
  for (const LibraryModel& m : lib) {
    bool ok = !is_lattice(m.algebra);
    if (ok && !m.candidate.empty() &&
        m.candidate.find(';') == std::string::npos)
      ok = holds(m.algebra, parse_equation(m.candidate));
    std::cout << "model " << index++ << ": " << (ok ? "ok" : "FAIL") << "\n";
    all_ok_flag = all_ok_flag && ok;
  }
  return all_ok_flag ? 0 : 1;
}

int cmd_check_proof(const std::string& proof_file, const std::string& axioms_file,
                    const std::string& targets_file, bool verbose) {
  std::ifstream is(proof_file);
  if (!is) throw std::runtime_error("cannot open " + proof_file);
  Derivation d = parse_derivation(is);
  std::vector<Equation> axioms = read_equation_file(axioms_file);
  std::vector<Verdict> verdicts = check_derivation(d, axioms);
  bool ok = all_ok(verdicts);
  for (size_t i = 0; i < verdicts.size(); ++i) {
    if (!verbose && verdicts[i].ok) continue;
    std::cout << "step " << d.steps[i].id << ": "
              << (verdicts[i].ok
                      ? (verdicts[i].via_instance ? "ok (instance)" : "ok")
                      : "FAIL: " + verdicts[i].reason)
              << "\n";
  }
  if (!targets_file.empty()) {
    std::vector<Equation> targets = read_equation_file(targets_file);
    for (const Equation& t : targets) {
      int line = find_target_line(d, t);
      std::cout << "target " << print_equation(t) << ": "
                << (line ? "line " + std::to_string(line) : "NOT FOUND")
                << "\n";
      ok = ok && line != 0;
    }
  }
  std::cout << (ok ? "PROOF OK" : "PROOF FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_prove(const std::string& axioms_file, const std::string& targets_file,
              const std::string& hints_file, uint64_t max_generated,
              int max_weight, double max_seconds) {
  std::vector<Equation> axioms = read_equation_file(axioms_file);
  ProverConfig cfg;
  cfg.targets = read_equation_file(targets_file);
  if (!hints_file.empty()) cfg.hints = read_equation_file(hints_file);
  ProverLimits limits;
  limits.max_generated = max_generated;
  limits.max_equation_symbols = max_weight;
  limits.max_seconds = max_seconds;
  ProveResult r = prove(axioms, cfg, limits);
  if (!r.found) {
    std::cerr << "not found (" << r.limit_fired << ", generated "
              << r.generated << ")\n";
    return 1;
  }
  write_derivation(std::cout, *r.derivation);
  return 0;
}

int cmd_triage(uint64_t max_generated, int max_weight, double max_seconds) {
  ProverLimits limits;
  limits.max_generated = max_generated;
  limits.max_equation_symbols = max_weight;
  limits.max_seconds = max_seconds;
  std::string line;
  while (std::getline(std::cin, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    Equation cand = parse_equation(t);
    TriageReport report = triage(cand, fixtures::lattice_axioms(), limits);
    std::cout << t << "\t" << report.found_count;
    for (const auto& [target, found] : report.targets)
      std::cout << "\t" << target << (found ? ":proved" : ":open");
    std::cout << "\n";
  }
  return 0;
}

int cmd_pipeline(const std::string& config_file) {
  std::ifstream is(config_file);
  if (!is) throw std::runtime_error("cannot open " + config_file);
  PipelineConfig cfg = parse_pipeline_config(is);
  if (cfg.library_dir.empty()) cfg.library_dir = default_library_dir("");
  PipelineResult r = run_pipeline(cfg);
  std::cout << stats_report(r.stats) << "\n";
  return 0;
}

int cmd_stats() {
  std::string line;
  while (std::getline(std::cin, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream is(t);
    RunStats s;
    char tab;
    if (!(is >> s.enumerated >> s.identity_pass >> s.model_filter_pass >>
          s.triage_pass >> s.models_added >> s.elapsed_seconds)) {
      (void)tab;
      throw std::runtime_error("malformed stats line");
    }
    bool monotone = s.enumerated >= s.identity_pass &&
                    s.identity_pass >= s.model_filter_pass &&
                    s.model_filter_pass >= s.triage_pass;
    std::cout << "enumerated\t" << s.enumerated << "\n"
              << "identity_pass\t" << s.identity_pass << "\n"
              << "model_filter_pass\t" << s.model_filter_pass << "\n"
              << "triage_pass\t" << s.triage_pass << "\n"
              << "models_added\t" << s.models_added << "\n"
              << "elapsed_seconds\t" << s.elapsed_seconds << "\n"
              << "funnel\t" << (monotone ? "ok" : "VIOLATED") << "\n";
    if (!monotone) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: discovery toolkit for lattice single identities"};
  app.require_subcommand(1);

  // enumerate
  std::string leaves = "2..2", shard, library, config_file;
  int max_vars = 8;
  bool allow_x_absent = false, count_only = false, invert = false,
       verbose = false;
  auto* enumerate = app.add_subcommand("enumerate", "stream candidates a = x");
  enumerate->add_option("--leaves", leaves, "leaf count range LO..HI");
  enumerate->add_option("--max-vars", max_vars, "max distinct variables");
  enumerate->add_flag("--allow-x-absent", allow_x_absent,
                      "do not require x to occur in alpha");
  enumerate->add_option("--shard", shard, "shard spec I/N");
  enumerate->add_flag("--count", count_only, "print the count only");

  auto* filter_identity =
      app.add_subcommand("filter-identity", "keep lattice identities (stdin)");
  filter_identity->add_flag("--invert", invert, "keep non-identities instead");

  auto* filter_models =
      app.add_subcommand("filter-models", "drop equations true in a library model");
  filter_models->add_option("--library", library, "model library directory");

  int max_size = 4;
  uint64_t budget = forge::kDefaultSearchBudget;
  std::string constraints_file, model_file;
  auto* find_model =
      app.add_subcommand("find-model", "search for a nonlattice model");
  find_model->add_option("--max-size", max_size, "largest carrier size");
  find_model->add_option("--constraints", constraints_file, "equation file")
      ->required();
  find_model->add_option("--budget", budget, "node budget");

  auto* verify_model_cmd =
      app.add_subcommand("verify-model", "re-check a model file");
  verify_model_cmd->add_option("file", model_file, "model file")->required();
  verify_model_cmd->add_option("--constraints", constraints_file,
                               "equation file");

  auto* verify_library =
      app.add_subcommand("verify-library", "re-check every library model");
  verify_library->add_option("--library", library, "model library directory");

  std::string proof_file, axioms_file, targets_file, hints_file;
  auto* check_proof = app.add_subcommand("check-proof", "check a derivation");
  check_proof->add_option("file", proof_file, "proof file")->required();
  check_proof->add_option("--axioms", axioms_file, "axiom equation file")
      ->required();
  check_proof->add_option("--targets", targets_file, "target equation file");
  check_proof->add_flag("--verbose", verbose, "print every step verdict");

  uint64_t max_generated = 200'000;
  int max_weight = 60;
  double max_seconds = 0;
  auto* prove_cmd = app.add_subcommand("prove", "search for a derivation");
  prove_cmd->add_option("--axioms", axioms_file, "axiom equation file")
      ->required();
  prove_cmd->add_option("--targets", targets_file, "target equation file")
      ->required();
  prove_cmd->add_option("--hints", hints_file, "hint equation file");
  prove_cmd->add_option("--max-generated", max_generated, "generated cap");
  prove_cmd->add_option("--max-weight", max_weight, "equation weight cap");
  prove_cmd->add_option("--max-seconds", max_seconds, "advisory time cap");

  auto* triage_cmd =
      app.add_subcommand("triage", "per-candidate lattice-property reports");
  triage_cmd->add_option("--max-generated", max_generated, "generated cap");
  triage_cmd->add_option("--max-weight", max_weight, "equation weight cap");
  triage_cmd->add_option("--max-seconds", max_seconds, "advisory time cap");

  auto* pipeline_cmd = app.add_subcommand("pipeline", "run the full loop");
  pipeline_cmd->add_option("--config", config_file, "config file")->required();

  auto* stats_cmd = app.add_subcommand("stats", "pretty-print a stats line");
  (void)stats_cmd;

  CLI11_PARSE(app, argc, argv);

  try {
    if (enumerate->parsed())
      return cmd_enumerate(leaves, max_vars, allow_x_absent, shard, count_only);
    if (filter_identity->parsed()) return cmd_filter_identity(invert);
    if (filter_models->parsed()) return cmd_filter_models(library);
    if (find_model->parsed())
      return cmd_find_model(max_size, constraints_file, budget);
    if (verify_model_cmd->parsed())
      return cmd_verify_model(model_file, constraints_file);
    if (verify_library->parsed()) return cmd_verify_library(library);
    if (check_proof->parsed())
      return cmd_check_proof(proof_file, axioms_file, targets_file, verbose);
    if (prove_cmd->parsed())
      return cmd_prove(axioms_file, targets_file, hints_file, max_generated,
                       max_weight, max_seconds);
    if (triage_cmd->parsed())
      return cmd_triage(max_generated, max_weight, max_seconds);
    if (pipeline_cmd->parsed()) return cmd_pipeline(config_file);
    if (stats_cmd->parsed()) return cmd_stats();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
