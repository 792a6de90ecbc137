#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/proof.hpp"
#include "forge/term.hpp"

// Bounded given-clause paramodulation prover. Selection is by symbol
// count with a large bonus for equations matching a hint, so a hint list
// transcribed from a known derivation steers the search along it.

namespace forge {

struct ProverLimits {
  uint64_t max_generated = 200'000;
  int max_equation_symbols = 60;  // weight cap, length() of the equation
  double max_seconds = 0;         // 0 = unlimited; advisory, see docs
};

struct ProverConfig {
  std::vector<Equation> hints;
  std::vector<Equation> targets;
};

struct ProveResult {
  bool found = false;
  std::optional<Derivation> derivation;
  std::string limit_fired;  // "generated", "saturated", "time"
  std::vector<bool> targets_found;
  uint64_t generated = 0;
  uint64_t selected = 0;
};

namespace detail {

struct KeptEquation {
  Equation eq;            // canonical form
  int parent_from = -1;   // indices into the kept list, -1 for axioms
  int parent_into = -1;
  int priority = 0;
};

constexpr int kHintBonus = 1'000'000;

// Orientation-independent normal form: of the two canonicalized
// orientations, keep the one with the heavier left side, ties broken by
// printed text. Derived equations get oriented this way (as the printed
// fixture proof does), and the kernel accepts either orientation.
inline Equation normalize(const Equation& e) {
  Equation a = canonicalize_vars(e);
  Equation b = canonicalize_vars(Equation{e.rhs, e.lhs});
  int wa = a.lhs.symbol_count() - a.rhs.symbol_count();
  int wb = b.lhs.symbol_count() - b.rhs.symbol_count();
  if (wa != wb) return wa > wb ? a : b;
  return print_equation(a) >= print_equation(b) ? a : b;
}

// Paramodulants of `from` into both sides of `into`; rhs results keep the
// untouched side on the left, matching the kernel's into-rhs acceptance.
inline std::vector<Equation> paramodulants_both(const Equation& from,
                                                const Equation& into) {
  std::vector<Equation> out = paramodulants(from, into);
  for (const Equation& e : paramodulants(from, Equation{into.rhs, into.lhs}))
    out.push_back(canonicalize_vars(Equation{e.rhs, e.lhs}));
  return out;
}

}  // namespace detail

class Prover {
 public:
  Prover(std::vector<Equation> axioms, ProverConfig cfg, ProverLimits limits)
      : axioms_(std::move(axioms)), cfg_(std::move(cfg)), limits_(limits) {
    for (const Equation& h : cfg_.hints)
      hint_texts_.insert(print_equation(detail::normalize(h)));
  }

  ProveResult run() {
    ProveResult result;
    result.targets_found.assign(cfg_.targets.size(), false);
    auto start = std::chrono::steady_clock::now();

    for (const Equation& ax : axioms_) insert(canonicalize_vars(ax), -1, -1);
    check_targets_against_new(result, 0);

    while (!result.found) {
      int gi = select_given();
      if (gi < 0) {
        result.limit_fired = "saturated";
        break;
      }
      ++result.selected;
      size_t before = kept_.size();
      // Inferences between the given equation and every already-selected
      // equation, both orders, plus self-paramodulation.
      for (int ui : usable_) expand(gi, ui, result);
      expand(gi, gi, result);
      usable_.push_back(gi);
      check_targets_against_new(result, before);
      if (result.found) break;
      if (result.generated >= limits_.max_generated) {
        result.limit_fired = "generated";
        break;
      }
      if (limits_.max_seconds > 0) {
        std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        if (elapsed.count() > limits_.max_seconds) {
          result.limit_fired = "time";
          break;
        }
      }
    }

    if (result.found) result.derivation = extract_derivation();
    return result;
  }

 private:
  void expand(int given, int other, ProveResult& result) {
    infer(kept_[given].eq, kept_[other].eq, given, other, result);
    if (given != other)
      infer(kept_[other].eq, kept_[given].eq, other, given, result);
  }

  void infer(const Equation& from, const Equation& into, int from_idx,
             int into_idx, ProveResult& result) {
    for (const Equation& g : detail::paramodulants_both(from, into)) {
      ++result.generated;
      if (length(g) > limits_.max_equation_symbols) continue;
      insert(detail::normalize(g), from_idx, into_idx);
    }
  }

  void insert(const Equation& e, int from_idx, int into_idx) {
    std::string text = print_equation(detail::normalize(e));
    if (!seen_.insert(text).second) return;
    detail::KeptEquation k;
    k.eq = e;
    k.parent_from = from_idx;
    k.parent_into = into_idx;
    k.priority = length(e);
    if (hint_texts_.count(text)) k.priority -= detail::kHintBonus;
    kept_.push_back(std::move(k));
    unprocessed_.insert({kept_.back().priority, static_cast<int>(kept_.size()) - 1});
  }

  int select_given() {
    if (unprocessed_.empty()) return -1;
    auto it = unprocessed_.begin();
    int idx = it->second;
    unprocessed_.erase(it);
    return idx;
  }

  void check_targets_against_new(ProveResult& result, size_t from_index) {
    if (target_texts_.empty())
      for (const Equation& t : cfg_.targets)
        target_texts_.push_back(print_equation(detail::normalize(t)));
    for (size_t i = from_index; i < kept_.size(); ++i) {
      const std::string text = print_equation(detail::normalize(kept_[i].eq));
      for (size_t t = 0; t < cfg_.targets.size(); ++t) {
        if (!result.targets_found[t] && text == target_texts_[t]) {
          result.targets_found[t] = true;
          target_witness_[t] = static_cast<int>(i);
        }
      }
    }
    result.found = !cfg_.targets.empty() &&
                   std::all_of(result.targets_found.begin(),
                               result.targets_found.end(),
                               [](bool b) { return b; });
  }

  // Ancestor closure of the target witnesses, renumbered 1..k in
  // generation order.
  Derivation extract_derivation() {
    std::set<int> needed;
    std::vector<int> stack;
    for (const auto& [t, w] : target_witness_) stack.push_back(w);
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      if (!needed.insert(i).second) continue;
      if (kept_[i].parent_from >= 0) stack.push_back(kept_[i].parent_from);
      if (kept_[i].parent_into >= 0) stack.push_back(kept_[i].parent_into);
    }
    std::map<int, int> line_of;
    Derivation d;
    for (int i : needed) {  // ascending kept index = generation order
      ProofStep step;
      step.id = static_cast<int>(line_of.size()) + 1;
      line_of[i] = step.id;
      step.equation = kept_[i].eq;
      if (kept_[i].parent_from < 0) {
        step.just.is_axiom = true;
      } else {
        step.just.is_axiom = false;
        step.just.from_id = line_of.at(kept_[i].parent_from);
        step.just.into_id = line_of.at(kept_[i].parent_into);
      }
      d.steps.push_back(step);
    }
    return d;
  }

  std::vector<Equation> axioms_;
  ProverConfig cfg_;
  ProverLimits limits_;
  std::vector<detail::KeptEquation> kept_;
  std::vector<int> usable_;
  std::set<std::pair<int, int>> unprocessed_;  // (priority, kept index)
  std::set<std::string> seen_;
  std::set<std::string> hint_texts_;
  std::vector<std::string> target_texts_;
  std::map<size_t, int> target_witness_;
};

// Succeeds only with a kernel-checked derivation (unless both_sides, in
// which case only the report is produced).
inline ProveResult prove(const std::vector<Equation>& axioms,
                         const ProverConfig& cfg, const ProverLimits& limits) {
  ProveResult result = Prover(axioms, cfg, limits).run();
  if (result.derivation) {
    if (!all_ok(check_derivation(*result.derivation, axioms)))
      throw std::logic_error("prover produced a derivation the kernel rejects");
    for (const Equation& t : cfg.targets) {
      bool found = false;
      for (const ProofStep& s : result.derivation->steps)
        found = found || variant_eq(s.equation, t) ||
                variant_eq(s.equation, Equation{t.rhs, t.lhs});
      if (!found) throw std::logic_error("prover derivation misses a target");
    }
  }
  return result;
}

// Per-target triage of one candidate against the 8-axiom lattice basis.
struct TriageReport {
  std::vector<std::pair<std::string, bool>> targets;  // canonical text, found
  int found_count = 0;
};

inline TriageReport triage(const Equation& candidate,
                           const std::vector<Equation>& basis,
                           const ProverLimits& limits) {
  TriageReport report;
  for (const Equation& target : basis) {
    ProverConfig cfg;
    cfg.targets = {target};
    ProveResult r = prove({candidate}, cfg, limits);
    report.targets.emplace_back(canonical_text(target), r.found);
    if (r.found) ++report.found_count;
  }
  return report;
}

}  // namespace forge
