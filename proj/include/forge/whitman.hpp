#pragma once

#include <unordered_map>
#include <utility>

#include "forge/term.hpp"

// Word problem for free lattices. leq decides a <= b in the free lattice
// on the occurring variables by Whitman's condition; is_identity is the
// pipeline's lattice-identity filter.

namespace forge {

namespace detail {

struct PtrPairHash {
  size_t operator()(const std::pair<const void*, const void*>& p) const {
    size_t h = reinterpret_cast<size_t>(p.first);
    h ^= reinterpret_cast<size_t>(p.second) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    return h;
  }
};

using LeqMemo =
    std::unordered_map<std::pair<const void*, const void*>, bool, PtrPairHash>;

// The recursion revisits subproblems exponentially often without the memo;
// subterms of one query share nodes, so node identity is a sound key.
inline bool leq_rec(const Term& a, const Term& b, LeqMemo* memo) {
  std::pair<const void*, const void*> key{a.id(), b.id()};
  if (memo) {
    auto it = memo->find(key);
    if (it != memo->end()) return it->second;
  }
  bool result;
  if (a.kind() == TermKind::Join) {
    result = leq_rec(a.left(), b, memo) && leq_rec(a.right(), b, memo);
  } else if (b.kind() == TermKind::Meet) {
    result = leq_rec(a, b.left(), memo) && leq_rec(a, b.right(), memo);
  } else if (a.is_var() && b.is_var()) {
    result = a.var_id() == b.var_id();
  } else if (a.is_var()) {
    // b is a join
    result = leq_rec(a, b.left(), memo) || leq_rec(a, b.right(), memo);
  } else if (b.is_var()) {
    // a is a meet
    result = leq_rec(a.left(), b, memo) || leq_rec(a.right(), b, memo);
  } else {
    // a meet, b join: Whitman's condition
    result = leq_rec(a.left(), b, memo) || leq_rec(a.right(), b, memo) ||
             leq_rec(a, b.left(), memo) || leq_rec(a, b.right(), memo);
  }
  if (memo) memo->emplace(key, result);
  return result;
}

}  // namespace detail

inline bool leq(const Term& a, const Term& b, bool memoize = true) {
  detail::LeqMemo memo;
  return detail::leq_rec(a, b, memoize ? &memo : nullptr);
}

// True iff e holds in every lattice.
inline bool is_identity(const Equation& e, bool memoize = true) {
  return leq(e.lhs, e.rhs, memoize) && leq(e.rhs, e.lhs, memoize);
}

}  // namespace forge
