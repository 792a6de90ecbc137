#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/term.hpp"

// Streams candidate absorption equations alpha = x: every variable of
// alpha other than x occurs exactly once, and neither the leftmost nor
// the rightmost leaf of alpha is x.

namespace forge {

struct EnumSpec {
  int min_leaves = 2;
  int max_leaves = 2;
  int max_distinct_vars = 8;
  bool require_x_in_alpha = true;
  int shard_index = 0;
  int shard_count = 1;

  void validate() const {
    if (min_leaves < 2) throw std::invalid_argument("leaf range starts below 2");
    if (max_distinct_vars < 1)
      throw std::invalid_argument("max_distinct_vars must be >= 1");
    if (shard_count < 1 || shard_index < 0 || shard_index >= shard_count)
      throw std::invalid_argument("bad shard spec");
  }
};

namespace detail {

// Operator-labeled binary tree shape; variables get filled in later.
// Leaves are marked Var with index 0.
inline void enumerate_shapes_rec(int leaves,
                                 const std::function<void(const Term&)>& fn) {
  if (leaves == 1) {
    fn(Term::var(0));
    return;
  }
  // Shapes ordered by left-subtree leaf count, then left shape, then right
  // shape; per split the two root labels in order Meet < Join.
  for (int k = 1; k < leaves; ++k) {
    enumerate_shapes_rec(k, [&](const Term& l) {
      enumerate_shapes_rec(leaves - k, [&](const Term& r) {
        fn(Term::meet(l, r));
        fn(Term::join(l, r));
      });
    });
  }
}

// FNV-1a, fixed so shard membership is stable across platforms.
inline uint64_t text_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Rebuilds `shape` with the given leaf variables, left to right.
inline Term fill_leaves(const Term& shape, const std::vector<int>& leaf_vars,
                        size_t& next) {
  if (shape.is_var()) return Term::var(leaf_vars[next++]);
  Term l = fill_leaves(shape.left(), leaf_vars, next);
  Term r = fill_leaves(shape.right(), leaf_vars, next);
  return shape.kind() == TermKind::Meet ? Term::meet(l, r) : Term::join(l, r);
}

}  // namespace detail

// Every operator-labeled binary tree with the given leaf count, exactly
// once, in a fixed deterministic order.
inline void enumerate_shapes(int leaves,
                             const std::function<void(const Term&)>& fn) {
  if (leaves < 1) return;
  detail::enumerate_shapes_rec(leaves, fn);
}

// Every admissible variable assignment for one shape: each leaf is x
// (index 0) or a fresh single-occurrence variable numbered by first
// occurrence; leftmost and rightmost leaves are never x. Assignments are
// ordered lexicographically over leaves with x before fresh.
inline void assign_variables(const Term& shape, const EnumSpec& spec,
                             const std::function<void(const Term&)>& fn) {
  int n = shape.leaf_count();
  if (n < 2) return;
  std::vector<int> leaf_vars(n);
  int next_fresh = 1;
  std::function<void(int, int)> rec = [&](int pos, int x_count) {
    if (pos == n) {
      if (spec.require_x_in_alpha && x_count == 0) return;
      size_t idx = 0;
      fn(detail::fill_leaves(shape, leaf_vars, idx));
      return;
    }
    bool interior = pos != 0 && pos != n - 1;
    if (interior && (next_fresh - 1) + 1 <= spec.max_distinct_vars) {
      leaf_vars[pos] = 0;
      rec(pos + 1, x_count + 1);
    }
    int distinct_if_fresh = next_fresh + (x_count > 0 ? 1 : 0);
    if (distinct_if_fresh <= spec.max_distinct_vars) {
      leaf_vars[pos] = next_fresh++;
      rec(pos + 1, x_count);
      --next_fresh;
    }
  };
  rec(0, 0);
}

// The full candidate stream alpha = x for the spec, restricted to its
// shard by a hash of the canonical equation text.
inline void enumerate_candidates(const EnumSpec& spec,
                                 const std::function<void(const Equation&)>& fn) {
  spec.validate();
  for (int leaves = spec.min_leaves; leaves <= spec.max_leaves; ++leaves) {
    enumerate_shapes(leaves, [&](const Term& shape) {
      assign_variables(shape, spec, [&](const Term& alpha) {
        Equation e{alpha, Term::var(0)};
        if (spec.shard_count > 1) {
          uint64_t h = detail::text_hash(canonical_text(e));
          if (h % static_cast<uint64_t>(spec.shard_count) !=
              static_cast<uint64_t>(spec.shard_index))
            return;
        }
        fn(e);
      });
    });
  }
}

inline constexpr int kCountLeafBudget = 7;

struct CountBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact count by generation, unsharded. Guarded by a leaf budget.
inline uint64_t count_candidates(EnumSpec spec) {
  if (spec.max_leaves > kCountLeafBudget)
    throw CountBudgetError("counting budget: leaves > " +
                           std::to_string(kCountLeafBudget));
  spec.shard_index = 0;
  spec.shard_count = 1;
  uint64_t count = 0;
  enumerate_candidates(spec, [&](const Equation&) { ++count; });
  return count;
}

}  // namespace forge
