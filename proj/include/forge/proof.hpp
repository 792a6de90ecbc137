#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "forge/term.hpp"

// Paramodulation proof kernel. A derivation is a numbered list of
// equations, each justified as an axiom or by a paramodulation step
// [i -> j]: rewrite some subterm of u_j with equation i, left to right,
// under the most general unifier.

namespace forge {

struct Justification {
  bool is_axiom = true;
  int from_id = 0;  // i of [i -> j]
  int into_id = 0;  // j of [i -> j]
};

struct ProofStep {
  int id = 0;
  Equation equation;
  Justification just;
};

struct Derivation {
  std::vector<ProofStep> steps;
};

struct Verdict {
  bool ok = false;
  bool via_instance = false;  // matched as a proper instance, not a variant
  bool via_flip = false;      // matched with the stated sides swapped
  bool via_rhs = false;       // rewrite position was in the into-equation's rhs
  std::string reason;         // set when !ok
};

// All paramodulants of `from` into the left side of `into`: for every
// position p of into.lhs whose subterm unifies with from.lhs (mgu s),
// s(into.lhs) with the occurrence at p replaced by s(from.rhs), equated
// to s(into.rhs). Results are canonicalized, deduplicated, and ordered
// by position in preorder.
inline std::vector<Equation> paramodulants(const Equation& from,
                                           const Equation& into) {
  auto [f, g] = rename_apart(from, into);
  std::vector<Equation> out;
  std::set<std::string> seen;
  for (const Position& p : all_positions(g.lhs)) {
    Term sub = subterm_at(g.lhs, p);
    std::optional<Substitution> mgu = unify(f.lhs, sub);
    if (!mgu) continue;
    Term new_lhs = replace_at(mgu->apply(g.lhs), p, mgu->apply(f.rhs));
    Equation result =
        canonicalize_vars(Equation{new_lhs, mgu->apply(g.rhs)});
    std::string text = print_equation(result);
    if (seen.insert(text).second) out.push_back(result);
  }
  return out;
}

namespace detail {

inline bool match_rec(const Term& pattern, const Term& target,
                      std::map<int, Term>& bindings) {
  if (pattern.is_var()) {
    auto [it, inserted] = bindings.emplace(pattern.var_id().index, target);
    return inserted || it->second == target;
  }
  if (pattern.kind() != target.kind()) return false;
  return match_rec(pattern.left(), target.left(), bindings) &&
         match_rec(pattern.right(), target.right(), bindings);
}

}  // namespace detail

// True iff `e` is a substitution instance of `general`.
inline bool is_instance_of(const Equation& e, const Equation& general) {
  std::map<int, Term> bindings;
  return detail::match_rec(general.lhs, e.lhs, bindings) &&
         detail::match_rec(general.rhs, e.rhs, bindings);
}

namespace detail {
inline Verdict fail(std::string reason) {
  Verdict v;
  v.reason = std::move(reason);
  return v;
}
}  // namespace detail

inline Verdict check_step(const Derivation& prefix, const ProofStep& step,
                          const std::vector<Equation>& axioms) {
  using detail::fail;
  if (step.just.is_axiom) {
    for (const Equation& ax : axioms)
      if (variant_eq(step.equation, ax))
        return Verdict{true, false, false, false, ""};
    return fail("axiom step is not a variant of any axiom");
  }
  const Equation* from = nullptr;
  const Equation* into = nullptr;
  for (const ProofStep& s : prefix.steps) {
    if (s.id >= step.id) break;
    if (s.id == step.just.from_id) from = &s.equation;
    if (s.id == step.just.into_id) into = &s.equation;
  }
  if (!from || !into)
    return fail("bad reference: cited step missing or not earlier");
  // Primary reading: rewrite inside into's lhs. The printed proofs also
  // orient result equations and occasionally rewrite inside the rhs, so
  // those acceptances exist too, each flagged in the verdict.
  std::vector<Equation> into_lhs = paramodulants(*from, *into);
  std::vector<Equation> into_rhs;
  for (const Equation& g :
       paramodulants(*from, Equation{into->rhs, into->lhs}))
    into_rhs.push_back(canonicalize_vars(Equation{g.rhs, g.lhs}));
  if (into_lhs.empty() && into_rhs.empty())
    return fail("no position of the into-term unifies");
  Equation flipped =
      canonicalize_vars(Equation{step.equation.rhs, step.equation.lhs});
  for (const Equation& g : into_lhs) {
    if (variant_eq(step.equation, g)) return Verdict{true, false, false, false, ""};
    if (variant_eq(flipped, g)) return Verdict{true, false, true, false, ""};
  }
  for (const Equation& g : into_rhs) {
    if (variant_eq(step.equation, g)) return Verdict{true, false, false, true, ""};
    if (variant_eq(flipped, g)) return Verdict{true, false, true, true, ""};
  }
  for (const Equation& g : into_lhs) {
    if (is_instance_of(step.equation, g)) return Verdict{true, true, false, false, ""};
    if (is_instance_of(flipped, g)) return Verdict{true, true, true, false, ""};
  }
  for (const Equation& g : into_rhs) {
    if (is_instance_of(step.equation, g)) return Verdict{true, true, false, true, ""};
    if (is_instance_of(flipped, g)) return Verdict{true, true, true, true, ""};
  }
  return fail("no generated paramodulant matches");
}

inline std::vector<Verdict> check_derivation(
    const Derivation& d, const std::vector<Equation>& axioms) {
  std::vector<Verdict> out;
  Derivation prefix;
  int last_id = 0;
  for (const ProofStep& step : d.steps) {
    if (step.id <= last_id) {
      out.push_back(detail::fail("step ids not strictly increasing"));
      prefix.steps.push_back(step);
      continue;
    }
    last_id = step.id;
    out.push_back(check_step(prefix, step, axioms));
    prefix.steps.push_back(step);
  }
  return out;
}

inline bool all_ok(const std::vector<Verdict>& verdicts) {
  for (const Verdict& v : verdicts)
    if (!v.ok) return false;
  return true;
}

// True iff every target is a variant of some step's equation.
inline bool check_targets(const Derivation& d,
                          const std::vector<Equation>& targets) {
  for (const Equation& t : targets) {
    bool found = false;
    for (const ProofStep& s : d.steps)
      if (variant_eq(s.equation, t)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Line number of the first step matching the target, or 0.
inline int find_target_line(const Derivation& d, const Equation& target) {
  for (const ProofStep& s : d.steps)
    if (variant_eq(s.equation, target)) return s.id;
  return 0;
}

// ---------------------------------------------------------------------------
// Proof file format, one step per line:
//   <id> | <term> = <term> | axiom
//   <id> | <term> = <term> | <i> -> <j>
// Whitespace around '|' ignored; '#' starts a comment line.

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Derivation parse_derivation(std::istream& is) {
  Derivation d;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t p1 = t.find('|');
    size_t p2 = t.rfind('|');
    if (p1 == std::string::npos || p2 == p1)
      throw std::runtime_error("proof line " + std::to_string(lineno) +
                               ": expected two '|' separators");
    ProofStep step;
    step.id = std::stoi(trim(t.substr(0, p1)));
    step.equation = parse_equation(trim(t.substr(p1 + 1, p2 - p1 - 1)));
    std::string just = trim(t.substr(p2 + 1));
    if (just == "axiom") {
      step.just.is_axiom = true;
    } else {
      size_t arrow = just.find("->");
      if (arrow == std::string::npos)
        throw std::runtime_error("proof line " + std::to_string(lineno) +
                                 ": expected 'axiom' or '<i> -> <j>'");
      step.just.is_axiom = false;
      step.just.from_id = std::stoi(trim(just.substr(0, arrow)));
      step.just.into_id = std::stoi(trim(just.substr(arrow + 2)));
    }
    d.steps.push_back(step);
  }
  return d;
}

inline Derivation parse_derivation(const std::string& text) {
  std::istringstream is(text);
  return parse_derivation(is);
}

inline void write_derivation(std::ostream& os, const Derivation& d) {
  for (const ProofStep& s : d.steps) {
    os << s.id << " | " << print_term(s.equation.lhs) << " = "
       << print_term(s.equation.rhs) << " | ";
    if (s.just.is_axiom)
      os << "axiom";
    else
      os << s.just.from_id << " -> " << s.just.into_id;
    os << "\n";
  }
}

}  // namespace forge
