#pragma once

#include <set>
#include <string>
#include <vector>

#include "forge/enumerate.hpp"

// Independent oracle for the candidate enumerator. Shapes come from
// dedup-from-text dynamic programming, labelings from brute force over
// the subset of leaves that become x; nothing here shares code with the
// streaming enumerator beyond the Term type.

namespace forge::testing {

inline std::vector<Term> oracle_shapes(int leaves) {
  static std::vector<std::vector<Term>> memo;  // memo[n] = shapes, n leaves
  if (memo.empty()) memo.push_back({});
  for (int n = static_cast<int>(memo.size()); n <= leaves; ++n) {
    std::vector<Term> out;
    std::set<std::string> seen;
    if (n == 1) {
      out.push_back(Term::var(0));
    } else {
      for (int k = 1; k < n; ++k)
        for (const Term& l : memo[k])
          for (const Term& r : memo[n - k])
            for (Term t : {Term::meet(l, r), Term::join(l, r)})
              if (seen.insert(print_term(t)).second) out.push_back(t);
    }
    memo.push_back(out);
  }
  return memo[leaves];
}

inline Term relabel_leaves(const Term& shape, const std::vector<int>& leaf_vars,
                           size_t& next) {
  if (shape.is_var()) return Term::var(leaf_vars[next++]);
  Term l = relabel_leaves(shape.left(), leaf_vars, next);
  Term r = relabel_leaves(shape.right(), leaf_vars, next);
  return shape.kind() == TermKind::Meet ? Term::meet(l, r) : Term::join(l, r);
}

inline std::set<std::string> oracle_candidates(const EnumSpec& spec) {
  std::set<std::string> out;
  for (int n = spec.min_leaves; n <= spec.max_leaves; ++n) {
    for (const Term& shape : oracle_shapes(n)) {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (mask & 1u) continue;               // leftmost leaf is never x
        if (mask & (1u << (n - 1))) continue;  // nor the rightmost
        int x_count = __builtin_popcount(mask);
        int distinct = (n - x_count) + (x_count > 0 ? 1 : 0);
        if (distinct > spec.max_distinct_vars) continue;
        if (spec.require_x_in_alpha && x_count == 0) continue;
        std::vector<int> leaf_vars(n);
        int fresh = 1;
        for (int i = 0; i < n; ++i)
          leaf_vars[i] = (mask & (1u << i)) ? 0 : fresh++;
        size_t idx = 0;
        Equation e{relabel_leaves(shape, leaf_vars, idx), Term::var(0)};
        out.insert(print_equation(e));
      }
    }
  }
  return out;
}

}  // namespace forge::testing
