#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/term.hpp"

// Finite algebras with two binary operations: equation evaluation, the
// lattice-axiom test, and the nonlattice model filter.

namespace forge {

struct FiniteAlgebra {
  int size = 0;
  std::vector<int> meet;  // size*size, row-major
  std::vector<int> join;

  int meet_at(int i, int j) const { return meet[i * size + j]; }
  int join_at(int i, int j) const { return join[i * size + j]; }

  bool operator==(const FiniteAlgebra& other) const {
    return size == other.size && meet == other.meet && join == other.join;
  }
};

// Total map from the tested equation's variables to carrier elements,
// indexed by VarId.
using Assignment = std::vector<std::pair<VarId, int>>;

inline int eval_term(const FiniteAlgebra& alg, const Term& t,
                     const Assignment& a) {
  if (t.is_var()) {
    for (const auto& [v, e] : a)
      if (v == t.var_id()) return e;
    throw std::runtime_error("unbound variable " + var_name(t.var_id()));
  }
  int l = eval_term(alg, t.left(), a);
  int r = eval_term(alg, t.right(), a);
  return t.kind() == TermKind::Meet ? alg.meet_at(l, r) : alg.join_at(l, r);
}

// All n^k assignments in odometer order over variables sorted by VarId,
// early exit on the first violation.
inline bool holds(const FiniteAlgebra& alg, const Equation& e) {
  std::vector<VarId> vars = distinct_vars(e);
  std::sort(vars.begin(), vars.end());
  size_t k = vars.size();
  Assignment a;
  for (VarId v : vars) a.emplace_back(v, 0);
  while (true) {
    if (eval_term(alg, e.lhs, a) != eval_term(alg, e.rhs, a)) return false;
    size_t i = 0;
    for (; i < k; ++i) {
      if (++a[i].second < alg.size) break;
      a[i].second = 0;
    }
    if (i == k) return true;
    if (k == 0) return true;
  }
}

// The standard 8-axiom basis: commutativity, associativity, idempotence
// and both absorptions.
inline bool is_lattice(const FiniteAlgebra& alg) {
  int n = alg.size;
  for (int x = 0; x < n; ++x) {
    if (alg.meet_at(x, x) != x || alg.join_at(x, x) != x) return false;
    for (int y = 0; y < n; ++y) {
      if (alg.meet_at(x, y) != alg.meet_at(y, x)) return false;
      if (alg.join_at(x, y) != alg.join_at(y, x)) return false;
      if (alg.meet_at(x, alg.join_at(x, y)) != x) return false;
      if (alg.join_at(x, alg.meet_at(x, y)) != x) return false;
      for (int z = 0; z < n; ++z) {
        if (alg.meet_at(alg.meet_at(x, y), z) !=
            alg.meet_at(x, alg.meet_at(y, z)))
          return false;
        if (alg.join_at(alg.join_at(x, y), z) !=
            alg.join_at(x, alg.join_at(y, z)))
          return false;
      }
    }
  }
  return true;
}

struct LibraryModel {
  FiniteAlgebra algebra;
  std::string provenance;  // "found-by-search" or "hand-entered"
  std::string candidate;   // canonical text of the triggering equation
};

// Nonlattice countermodels; an equation satisfied by any member is not a
// single identity.
using ModelLibrary = std::vector<LibraryModel>;

inline bool passes_model_filter(const ModelLibrary& lib, const Equation& e) {
  for (const LibraryModel& m : lib)
    if (holds(m.algebra, e)) return false;
  return true;
}

inline std::vector<Equation> model_filter(const std::vector<Equation>& in,
                                          const ModelLibrary& lib) {
  std::vector<Equation> out;
  for (const Equation& e : in)
    if (passes_model_filter(lib, e)) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Model file format: line 1 is n, the next n lines the meet table, the
// next n the join table, then optional '#' comment lines.

inline void write_model(std::ostream& os, const LibraryModel& m) {
  os << m.algebra.size << "\n";
  for (int i = 0; i < m.algebra.size; ++i) {
    for (int j = 0; j < m.algebra.size; ++j)
      os << (j ? " " : "") << m.algebra.meet_at(i, j);
    os << "\n";
  }
  for (int i = 0; i < m.algebra.size; ++i) {
    for (int j = 0; j < m.algebra.size; ++j)
      os << (j ? " " : "") << m.algebra.join_at(i, j);
    os << "\n";
  }
  if (!m.provenance.empty()) os << "# provenance: " << m.provenance << "\n";
  if (!m.candidate.empty()) os << "# candidate: " << m.candidate << "\n";
}

inline LibraryModel read_model(std::istream& is) {
  LibraryModel m;
  int n = 0;
  if (!(is >> n) || n < 1) throw std::runtime_error("bad model size");
  m.algebra.size = n;
  m.algebra.meet.resize(n * n);
  m.algebra.join.resize(n * n);
  for (int& v : m.algebra.meet) {
    if (!(is >> v) || v < 0 || v >= n)
      throw std::runtime_error("bad meet table entry");
  }
  for (int& v : m.algebra.join) {
    if (!(is >> v) || v < 0 || v >= n)
      throw std::runtime_error("bad join table entry");
  }
  std::string line;
  std::getline(is, line);  // rest of last table row
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') throw std::runtime_error("unexpected trailing line");
    std::string body = line.substr(1);
    size_t start = body.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    body = body.substr(start);
    if (body.rfind("provenance: ", 0) == 0)
      m.provenance = body.substr(12);
    else if (body.rfind("candidate: ", 0) == 0)
      m.candidate = body.substr(11);
  }
  return m;
}

}  // namespace forge
