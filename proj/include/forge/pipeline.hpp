#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "forge/enumerate.hpp"
#include "forge/fixtures.hpp"
#include "forge/model_finder.hpp"
#include "forge/prover.hpp"
#include "forge/whitman.hpp"

// End-to-end discovery loop: enumerate -> identity filter -> model filter
// -> model search (growing the countermodel library) -> triage.

namespace forge {

struct PipelineConfig {
  EnumSpec enum_spec;
  std::string library_dir;
  int model_max_size = 4;
  uint64_t model_budget = kDefaultSearchBudget;
  ProverLimits triage_limits;
  int workers = 1;
  std::string output;

  void validate() const {
    enum_spec.validate();
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (model_max_size < 1 || model_max_size > 5)
      throw std::invalid_argument("model_max_size must be in 1..5");
  }
};

struct RunStats {
  uint64_t enumerated = 0;
  uint64_t identity_pass = 0;
  uint64_t model_filter_pass = 0;
  uint64_t triage_pass = 0;
  uint64_t models_added = 0;
  double elapsed_seconds = 0;
};

inline std::string stats_report(const RunStats& s) {
  std::ostringstream os;
  os << s.enumerated << "\t" << s.identity_pass << "\t" << s.model_filter_pass
     << "\t" << s.triage_pass << "\t" << s.models_added << "\t"
     << s.elapsed_seconds;
  return os.str();
}

// ---------------------------------------------------------------------------
// Library directory: one model file per entry, loaded in filename order.

inline ModelLibrary load_library(const std::string& dir) {
  ModelLibrary lib;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream is(path);
    lib.push_back(read_model(is));
  }
  return lib;
}

inline void save_model(const std::string& dir, const LibraryModel& m,
                       int sequence) {
  std::ostringstream name;
  name << "model_" << std::setw(5) << std::setfill('0') << sequence << ".txt";
  std::ofstream os(std::filesystem::path(dir) / name.str());
  write_model(os, m);
}

// ---------------------------------------------------------------------------
// key = value config files mirroring PipelineConfig.

inline PipelineConfig parse_pipeline_config(std::istream& is) {
  PipelineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "leaves") {
      size_t dots = value.find("..");
      if (dots == std::string::npos)
        throw std::runtime_error("leaves wants LO..HI");
      cfg.enum_spec.min_leaves = std::stoi(value.substr(0, dots));
      cfg.enum_spec.max_leaves = std::stoi(value.substr(dots + 2));
    } else if (key == "max_vars") {
      cfg.enum_spec.max_distinct_vars = std::stoi(value);
    } else if (key == "allow_x_absent") {
      cfg.enum_spec.require_x_in_alpha = !(value == "true" || value == "1");
    } else if (key == "library") {
      cfg.library_dir = value;
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "workers") {
      cfg.workers = std::stoi(value);
    } else if (key == "model_max_size") {
      cfg.model_max_size = std::stoi(value);
    } else if (key == "model_budget") {
      cfg.model_budget = std::stoull(value);
    } else if (key == "triage_max_generated") {
      cfg.triage_limits.max_generated = std::stoull(value);
    } else if (key == "triage_max_weight") {
      cfg.triage_limits.max_equation_symbols = std::stoi(value);
    } else if (key == "triage_max_seconds") {
      cfg.triage_limits.max_seconds = std::stod(value);
    } else {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

struct Survivor {
  Equation equation;
  TriageReport report;
};

namespace detail {

struct WorkerOutput {
  std::vector<Equation> survivors;
  std::vector<LibraryModel> new_models;
  uint64_t enumerated = 0;
  uint64_t identity_pass = 0;
  uint64_t model_filter_pass = 0;
  uint64_t triage_pass = 0;
};

// One worker processes one shard sequentially. The base library is a
// shared snapshot; models found here filter only this worker's later
// candidates until the merge.
inline WorkerOutput run_worker(const PipelineConfig& cfg, int shard_index) {
  WorkerOutput out;
  EnumSpec spec = cfg.enum_spec;
  spec.shard_index = shard_index;
  spec.shard_count = cfg.workers;
  ModelLibrary base = cfg.library_dir.empty() ? ModelLibrary{}
                                              : load_library(cfg.library_dir);
  enumerate_candidates(spec, [&](const Equation& cand) {
    ++out.enumerated;
    if (!is_identity(cand)) return;
    ++out.identity_pass;
    if (!passes_model_filter(base, cand)) return;
    bool filtered = false;
    for (const LibraryModel& m : out.new_models)
      if (holds(m.algebra, cand)) {
        filtered = true;
        break;
      }
    if (filtered) return;
    ++out.model_filter_pass;
    ModelSearchResult search =
        find_nonlattice_model({cand}, cfg.model_max_size, cfg.model_budget);
    if (search.status == SearchStatus::Found) {
      LibraryModel m;
      m.algebra = *search.model;
      m.provenance = "found-by-search";
      m.candidate = canonical_text(cand);
      out.new_models.push_back(std::move(m));
      return;
    }
    // None or budget-exhausted: the candidate survives to triage.
    ++out.triage_pass;
    out.survivors.push_back(cand);
  });
  return out;
}

}  // namespace detail

struct PipelineResult {
  RunStats stats;
  std::vector<Survivor> survivors;
};

inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();

  std::vector<detail::WorkerOutput> outputs(cfg.workers);
  if (cfg.workers == 1) {
    outputs[0] = detail::run_worker(cfg, 0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < cfg.workers; ++w)
      threads.emplace_back(
          [&, w] { outputs[w] = detail::run_worker(cfg, w); });
    for (auto& t : threads) t.join();
  }

  PipelineResult result;
  ModelLibrary merged = cfg.library_dir.empty()
                            ? ModelLibrary{}
                            : load_library(cfg.library_dir);
  int sequence = static_cast<int>(merged.size());
  for (auto& out : outputs) {
    result.stats.enumerated += out.enumerated;
    result.stats.identity_pass += out.identity_pass;
    result.stats.model_filter_pass += out.model_filter_pass;
    result.stats.triage_pass += out.triage_pass;
    for (LibraryModel& m : out.new_models) {
      if (!cfg.library_dir.empty()) save_model(cfg.library_dir, m, sequence++);
      merged.push_back(std::move(m));
      ++result.stats.models_added;
    }
  }

  // Re-filter against the merged library so the survivor set does not
  // depend on which worker found which model.
  std::vector<Equation> survivors;
  for (const auto& out : outputs)
    for (const Equation& e : out.survivors)
      if (passes_model_filter(merged, e)) survivors.push_back(e);
  std::sort(survivors.begin(), survivors.end(),
            [](const Equation& a, const Equation& b) {
              return canonical_text(a) < canonical_text(b);
            });
  result.stats.triage_pass = survivors.size();

  for (const Equation& e : survivors) {
    Survivor s;
    s.equation = e;
    s.report = triage(e, fixtures::lattice_axioms(), cfg.triage_limits);
    result.survivors.push_back(std::move(s));
  }

  if (!cfg.output.empty()) {
    std::ofstream os(cfg.output);
    if (!os) throw std::runtime_error("cannot open output: " + cfg.output);
    for (const Survivor& s : result.survivors) {
      os << canonical_text(s.equation);
      for (const auto& [target, found] : s.report.targets)
        os << "\t" << target << (found ? ":proved" : ":open");
      os << "\n";
    }
  }

  std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  result.stats.elapsed_seconds = elapsed.count();
  return result;
}

}  // namespace forge
