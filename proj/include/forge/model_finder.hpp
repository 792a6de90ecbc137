#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "forge/algebra.hpp"
#include "forge/term.hpp"

// Backtracking finite model finder over the two operation tables, with
// incremental constraint checking and least-number symmetry breaking.
//
// Cells are assigned in a fixed order that completes both operations on
// {0..d} before introducing element d+1, so ground constraint instances
// over small elements evaluate (and prune) as early as possible.
//
// All ground instances of the constraints are hash-consed into one DAG
// whose leaves are the domain constants, so shared subterms are evaluated
// once per branch. A node whose operands are known waits on a single
// table cell; assigning that cell values the node and propagates upward.
// When one side of an equation instance is known and the other side only
// lacks its topmost cell, that cell's value is forced ("required") and
// every other choice for it is pruned.

namespace forge {

enum class SearchStatus { Found, None, BudgetExhausted };

struct ModelSearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<FiniteAlgebra> model;
  uint64_t nodes = 0;
};

namespace detail {

struct Cell {
  bool is_join;
  int i, j;
};

// For d = 0..n-1, the cells (i,j) with max(i,j) = d in row-major order,
// meet before join per cell.
inline std::vector<Cell> cell_order(int n) {
  std::vector<Cell> cells;
  for (int d = 0; d < n; ++d)
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        if (i != d && j != d) continue;
        cells.push_back({false, i, j});
        cells.push_back({true, i, j});
      }
  return cells;
}

class ModelSearcher {
 public:
  ModelSearcher(const std::vector<Equation>& constraints, int size,
                uint64_t budget)
      : size_(size), budget_(budget) {
    alg_.size = size;
    alg_.meet.assign(size * size, -1);
    alg_.join.assign(size * size, -1);
    order_ = cell_order(size);
    waiters_.resize(2 * size * size);
    requirements_.assign(2 * size * size, -1);
    constraints_ = constraints;
    feasible_ = build_dag();
  }

  // Invokes on_model for each complete consistent algebra; on_model
  // returning true stops the search. Returns false when the node budget
  // fired before the space was covered.
  bool run(const std::function<bool(const FiniteAlgebra&)>& on_model) {
    on_model_ = &on_model;
    stopped_ = false;
    budget_ok_ = true;
    if (feasible_ && initial_propagate()) search(0, 0);
    return budget_ok_;
  }

  uint64_t nodes() const { return nodes_; }

 private:
  // Ground DAG node. Ids 0..size-1 are the domain constants; the l/r/op
  // fields of those entries are unused.
  struct GNode {
    bool is_join;
    int l, r;
  };

  enum : int8_t { kVal, kWait, kReq };
  struct TrailEntry {
    int8_t kind;
    int idx;
  };

  int cell_id(bool is_join, int i, int j) const {
    return (is_join ? size_ * size_ : 0) + i * size_ + j;
  }

  int cell_value(int cell) const {
    int nn = size_ * size_;
    return cell < nn ? alg_.meet[cell] : alg_.join[cell - nn];
  }

  int& slot_ref(int cell) {
    int nn = size_ * size_;
    return cell < nn ? alg_.meet[cell] : alg_.join[cell - nn];
  }

  int intern(bool is_join, int l, int r) {
    uint64_t key = (static_cast<uint64_t>(l) << 32) |
                   (static_cast<uint64_t>(r) << 1) | (is_join ? 1 : 0);
    auto [it, fresh] = interned_.try_emplace(key, 0);
    if (!fresh) return it->second;
    int id = static_cast<int>(dag_.size());
    it->second = id;
    dag_.push_back({is_join, l, r});
    value_.push_back(-1);
    parents_.emplace_back();
    partners_.emplace_back();
    parents_[l].push_back(id);
    if (r != l) parents_[r].push_back(id);
    return id;
  }

  int ground(const Term& t, const std::vector<VarId>& vars,
             const std::vector<int>& digits) {
    if (t.is_var()) {
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == t.var_id()) return digits[i];
      throw std::logic_error("unmapped variable in constraint");
    }
    int l = ground(t.left(), vars, digits);
    int r = ground(t.right(), vars, digits);
    return intern(t.kind() == TermKind::Join, l, r);
  }

  // Interns every ground instance of every constraint and records the
  // lhs/rhs equalities as partner links. False iff some instance is a
  // pair of distinct constants, i.e. the size is infeasible outright.
  bool build_dag() {
    dag_.resize(size_);
    value_.resize(size_, -1);
    parents_.resize(size_);
    partners_.resize(size_);
    for (int c = 0; c < size_; ++c) value_[c] = c;
    std::unordered_set<uint64_t> seen_pairs;
    bool ok = true;
    for (const Equation& e : constraints_) {
      std::vector<VarId> vars = distinct_vars(e);
      size_t k = vars.size();
      std::vector<int> digits(k, 0);
      while (true) {
        int lid = ground(e.lhs, vars, digits);
        int rid = ground(e.rhs, vars, digits);
        if (lid != rid) {
          if (lid < size_ && rid < size_) ok = false;
          uint64_t pk = (static_cast<uint64_t>(std::min(lid, rid)) << 32) |
                        static_cast<uint64_t>(std::max(lid, rid));
          if (seen_pairs.insert(pk).second) {
            partners_[lid].push_back(rid);
            partners_[rid].push_back(lid);
          }
        }
        size_t i = 0;
        for (; i < k; ++i) {
          if (++digits[i] < size_) break;
          digits[i] = 0;
        }
        if (i == k) break;
      }
    }
    return ok;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      TrailEntry e = trail_.back();
      trail_.pop_back();
      switch (e.kind) {
        case kVal:
          value_[e.idx] = -1;
          break;
        case kWait:
          waiters_[e.idx].pop_back();
          break;
        case kReq:
          requirements_[e.idx] = -1;
          break;
      }
    }
  }

  bool set_requirement(int cell, int v) {
    int cur = cell_value(cell);
    if (cur >= 0) return cur == v;
    if (requirements_[cell] >= 0) return requirements_[cell] == v;
    requirements_[cell] = v;
    trail_.push_back({kReq, cell});
    return true;
  }

  // Both children of p are valued and p is not: either its cell is
  // already assigned (value propagates) or p starts waiting on the cell,
  // which inherits a requirement from any valued equality partner.
  bool on_ready(int p) {
    const GNode& g = dag_[p];
    int cell = cell_id(g.is_join, value_[g.l], value_[g.r]);
    int cv = cell_value(cell);
    if (cv >= 0) {
      queue_.push_back({p, cv});
      return true;
    }
    waiters_[cell].push_back(p);
    trail_.push_back({kWait, cell});
    for (int q : partners_[p])
      if (value_[q] >= 0 && !set_requirement(cell, value_[q])) return false;
    return true;
  }

  bool value_node(int a, int v) {
    value_[a] = v;
    trail_.push_back({kVal, a});
    for (int b : partners_[a]) {
      if (value_[b] >= 0) {
        if (value_[b] != v) return false;
      } else if (value_[dag_[b].l] >= 0 && value_[dag_[b].r] >= 0) {
        // b is ready but unvalued, so its cell is unassigned: force it.
        int cell = cell_id(dag_[b].is_join, value_[dag_[b].l], value_[dag_[b].r]);
        if (!set_requirement(cell, v)) return false;
      }
    }
    for (int p : parents_[a]) {
      if (value_[p] >= 0) continue;
      if (value_[dag_[p].l] < 0 || value_[dag_[p].r] < 0) continue;
      if (!on_ready(p)) return false;
    }
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      auto [node, v] = queue_.back();
      queue_.pop_back();
      if (value_[node] >= 0) {
        if (value_[node] != v) return false;
        continue;
      }
      if (!value_node(node, v)) return false;
    }
    return true;
  }

  // Wakes every node waiting on the just-assigned cell. The table slot
  // itself is written by search() before the call.
  bool assign_cell(int cell, int v) {
    queue_.clear();
    for (int p : waiters_[cell])
      if (value_[p] < 0) queue_.push_back({p, v});
    return propagate();
  }

  // Values the nodes over constant operands and lets requirements from
  // fully-constant instances take effect before any cell is chosen.
  bool initial_propagate() {
    queue_.clear();
    for (int c = 0; c < size_; ++c) {
      for (int b : partners_[c])
        if (value_[b] >= 0 && value_[b] != c) return false;
      for (int p : parents_[c]) {
        if (value_[p] >= 0) continue;
        if (value_[dag_[p].l] < 0 || value_[dag_[p].r] < 0) continue;
        if (!on_ready(p)) return false;
      }
    }
    return propagate();
  }

  void search(size_t depth, int max_used) {
    if (stopped_ || !budget_ok_) return;
    // A pending requirement admits exactly one value for its cell, so
    // serving it first is branching-free and entailed by the current
    // partial table: every completion agrees on it regardless of where
    // the cell sits in the decision order.
    int ncells = 2 * size_ * size_;
    for (int fc = 0; fc < ncells; ++fc) {
      int fv = requirements_[fc];
      if (fv < 0 || cell_value(fc) >= 0) continue;
      if (++nodes_ > budget_) {
        budget_ok_ = false;
        return;
      }
      size_t fmark = trail_.size();
      slot_ref(fc) = fv;
      if (assign_cell(fc, fv)) search(depth, std::max(max_used, fv));
      undo_to(fmark);
      slot_ref(fc) = -1;
      return;
    }
    while (depth < order_.size() &&
           cell_value(cell_id(order_[depth].is_join, order_[depth].i,
                              order_[depth].j)) >= 0)
      ++depth;
    if (depth == order_.size()) {
      report_model();
      return;
    }
    const Cell& c = order_[depth];
    int cell = cell_id(c.is_join, c.i, c.j);
    int& slot = slot_ref(cell);
    // Least-number heuristic: values beyond every element referenced so
    // far are interchangeable, so only the first fresh one is tried.
    // max_used counts entailed assignments too, so the bound stays valid
    // when cells are filled out of decision order.
    int referenced = std::max(std::max(c.i, c.j), max_used);
    int limit = std::min(size_ - 1, referenced + 1);
    for (int v = 0; v <= limit; ++v) {
      if (++nodes_ > budget_) {
        budget_ok_ = false;
        break;
      }
      size_t mark = trail_.size();
      slot = v;
      if (assign_cell(cell, v)) search(depth + 1, std::max(max_used, v));
      undo_to(mark);
      if (stopped_ || !budget_ok_) break;
    }
    slot = -1;
  }

  void report_model() {
    // Propagation guarantees every instance evaluated and matched here;
    // re-verify directly to make that a hard guarantee.
    for (const Equation& e : constraints_)
      if (!holds(alg_, e))
        throw std::logic_error("model finder reached an inconsistent leaf");
    if ((*on_model_)(alg_)) stopped_ = true;
  }

  int size_;
  FiniteAlgebra alg_;
  std::vector<Cell> order_;
  std::vector<Equation> constraints_;
  std::vector<GNode> dag_;
  std::unordered_map<uint64_t, int> interned_;
  std::vector<int> value_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> partners_;
  std::vector<std::vector<int>> waiters_;
  std::vector<int> requirements_;  // forced cell values, -1 = free
  std::vector<TrailEntry> trail_;
  std::vector<std::pair<int, int>> queue_;
  const std::function<bool(const FiniteAlgebra&)>* on_model_ = nullptr;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  bool stopped_ = false;
  bool feasible_ = true;
  bool budget_ok_ = true;
};

}  // namespace detail

inline constexpr uint64_t kDefaultSearchBudget = 2'000'000'000;

// First algebra of exactly `size` satisfying the constraints and accepted
// by `accept` (called on complete tables only), under the symmetry
// reduction. Exhaustive: None means no such algebra exists at this size.
inline ModelSearchResult search_model(
    const std::vector<Equation>& constraints, int size,
    const std::function<bool(const FiniteAlgebra&)>& accept,
    uint64_t budget = kDefaultSearchBudget) {
  detail::ModelSearcher searcher(constraints, size, budget);
  ModelSearchResult result;
  bool covered = searcher.run([&](const FiniteAlgebra& alg) {
    if (accept && !accept(alg)) return false;
    result.model = alg;
    return true;
  });
  result.nodes = searcher.nodes();
  if (result.model)
    result.status = SearchStatus::Found;
  else
    result.status =
        covered ? SearchStatus::None : SearchStatus::BudgetExhausted;
  return result;
}

// Every accepted algebra of exactly `size`, in search order. Returns
// false if the budget fired.
inline bool for_each_model(
    const std::vector<Equation>& constraints, int size,
    const std::function<bool(const FiniteAlgebra&)>& accept,
    const std::function<void(const FiniteAlgebra&)>& fn,
    uint64_t budget = kDefaultSearchBudget) {
  detail::ModelSearcher searcher(constraints, size, budget);
  return searcher.run([&](const FiniteAlgebra& alg) {
    if (!accept || accept(alg)) fn(alg);
    return false;
  });
}

// Smallest nonlattice satisfying every constraint, sizes 1..max_size.
inline ModelSearchResult find_nonlattice_model(
    const std::vector<Equation>& constraints, int max_size,
    uint64_t budget = kDefaultSearchBudget) {
  ModelSearchResult out;
  for (int n = 1; n <= max_size; ++n) {
    ModelSearchResult r = search_model(
        constraints, n, [](const FiniteAlgebra& a) { return !is_lattice(a); },
        budget > out.nodes ? budget - out.nodes : 0);
    out.nodes += r.nodes;
    if (r.status == SearchStatus::Found) {
      out.status = SearchStatus::Found;
      out.model = r.model;
      return out;
    }
    if (r.status == SearchStatus::BudgetExhausted) {
      out.status = SearchStatus::BudgetExhausted;
      return out;
    }
  }
  out.status = SearchStatus::None;
  return out;
}

// Independent re-check of a search result: direct evaluation of every
// constraint plus the lattice test, sharing nothing with the searcher's
// propagation.
inline bool verify_model(const FiniteAlgebra& alg,
                         const std::vector<Equation>& constraints) {
  for (const Equation& e : constraints)
    if (!holds(alg, e)) return false;
  return !is_lattice(alg);
}

// True iff the complete tables are reachable under the searcher's value
// order, i.e. the algebra is the least-number representative for the
// fixed cell order. Used by oracle tests comparing against naive
// enumeration.
inline bool is_symmetry_canonical(const FiniteAlgebra& alg) {
  int max_used = 0;
  for (const detail::Cell& c : detail::cell_order(alg.size)) {
    int v = c.is_join ? alg.join_at(c.i, c.j) : alg.meet_at(c.i, c.j);
    int referenced = std::max(std::max(c.i, c.j), max_used);
    if (v > referenced + 1) return false;
    max_used = std::max(max_used, v);
  }
  return true;
}

}  // namespace forge
