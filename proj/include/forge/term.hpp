#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Immutable lattice terms over meet (*) and join (+) with variable leaves,
// plus the operations everything else is built from: parsing, printing,
// positions, substitution, unification, canonical renaming and the
// length/variable metrics.

namespace forge {

enum class TermKind { Var, Meet, Join };

// Variables are 0-based indices. Indices 0..7 display as x y z u v w s t;
// index k >= 8 displays as x<k>.
struct VarId {
  int index = 0;
  auto operator<=>(const VarId&) const = default;
};

inline std::string var_name(VarId v) {
  static constexpr const char* kNames[8] = {"x", "y", "z", "u",
                                            "v", "w", "s", "t"};
  if (v.index >= 0 && v.index < 8) return kNames[v.index];
  return "x" + std::to_string(v.index);
}

class Term {
  struct Node {
    TermKind kind;
    int var;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    int symbols;
  };

 public:
  // Default-constructed terms are empty placeholders; every operation
  // below requires a real term.
  Term() = default;

  static Term var(int index) {
    return Term(std::make_shared<Node>(
        Node{TermKind::Var, index, nullptr, nullptr, 1}));
  }
  static Term var(VarId v) { return var(v.index); }
  static Term meet(const Term& l, const Term& r) {
    return combine(TermKind::Meet, l, r);
  }
  static Term join(const Term& l, const Term& r) {
    return combine(TermKind::Join, l, r);
  }

  TermKind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == TermKind::Var; }
  VarId var_id() const { return VarId{node_->var}; }
  Term left() const { return Term(node_->left); }
  Term right() const { return Term(node_->right); }

  // Total number of variable occurrences plus operation symbols.
  int symbol_count() const { return node_->symbols; }
  int leaf_count() const { return (node_->symbols + 1) / 2; }

  bool operator==(const Term& other) const {
    return equal(node_.get(), other.node_.get());
  }
  bool operator!=(const Term& other) const { return !(*this == other); }

  const void* id() const { return node_.get(); }

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->symbols != b->symbols) return false;
    if (a->kind == TermKind::Var) return a->var == b->var;
    return equal(a->left.get(), b->left.get()) &&
           equal(a->right.get(), b->right.get());
  }

  static Term combine(TermKind k, const Term& l, const Term& r) {
    int symbols = l.symbol_count() + r.symbol_count() + 1;
    return Term(
        std::make_shared<Node>(Node{k, 0, l.node_, r.node_, symbols}));
  }

  std::shared_ptr<const Node> node_;
};

struct Equation {
  Term lhs;
  Term rhs;
  bool operator==(const Equation& other) const {
    return lhs == other.lhs && rhs == other.rhs;
  }
};

// length counts variable occurrences, operation symbols, and the
// equality sign.
inline int length(const Equation& e) {
  return e.lhs.symbol_count() + e.rhs.symbol_count() + 1;
}

inline void collect_vars(const Term& t, std::vector<VarId>& out) {
  if (t.is_var()) {
    out.push_back(t.var_id());
    return;
  }
  collect_vars(t.left(), out);
  collect_vars(t.right(), out);
}

// Distinct variables in preorder of first occurrence.
inline std::vector<VarId> distinct_vars(const Term& t) {
  std::vector<VarId> occ;
  collect_vars(t, occ);
  std::vector<VarId> out;
  for (VarId v : occ) {
    bool seen = false;
    for (VarId w : out)
      if (w == v) seen = true;
    if (!seen) out.push_back(v);
  }
  return out;
}

inline std::vector<VarId> distinct_vars(const Equation& e) {
  std::vector<VarId> occ;
  collect_vars(e.lhs, occ);
  collect_vars(e.rhs, occ);
  std::vector<VarId> out;
  for (VarId v : occ) {
    bool seen = false;
    for (VarId w : out)
      if (w == v) seen = true;
    if (!seen) out.push_back(v);
  }
  return out;
}

inline int var_count(const Equation& e) {
  return static_cast<int>(distinct_vars(e).size());
}

// ---------------------------------------------------------------------------
// Printing. Canonical text is fully parenthesized, no whitespace:
//   term := var | "(" term op term ")" ;  op := "*" | "+"

inline void print_term_to(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += var_name(t.var_id());
    return;
  }
  out += '(';
  print_term_to(t.left(), out);
  out += (t.kind() == TermKind::Meet) ? '*' : '+';
  print_term_to(t.right(), out);
  out += ')';
}

inline std::string print_term(const Term& t) {
  std::string out;
  out.reserve(static_cast<size_t>(t.symbol_count()) * 2);
  print_term_to(t, out);
  return out;
}

inline std::string print_equation(const Equation& e) {
  std::string out = print_term(e.lhs);
  out += '=';
  print_term_to(e.rhs, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)),
        offset(off) {}
};

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_full_term() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing input after term", pos_);
    return t;
  }

  Equation parse_full_equation() {
    Term lhs = parse_term();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '=')
      throw ParseError("expected '='", pos_);
    ++pos_;
    Term rhs = parse_term();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing input after equation", pos_);
    return Equation{lhs, rhs};
  }

  Term parse_term() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term l = parse_term();
      skip_ws();
      if (pos_ >= text_.size())
        throw ParseError("unexpected end of input, expected operator", pos_);
      char op = text_[pos_];
      if (op != '*' && op != '+')
        throw ParseError("expected '*' or '+'", pos_);
      ++pos_;
      Term r = parse_term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return (op == '*') ? Term::meet(l, r) : Term::join(l, r);
    }
    return parse_var();
  }

 private:
  Term parse_var() {
    char c = text_[pos_];
    static constexpr std::string_view kLetters = "xyzuvwst";
    size_t idx = kLetters.find(c);
    if (idx == std::string_view::npos)
      throw ParseError(std::string("unknown token '") + c + "'", pos_);
    ++pos_;
    if (c == 'x' && pos_ < text_.size() && std::isdigit(text_[pos_])) {
      size_t start = pos_;
      long k = 0;
      while (pos_ < text_.size() && std::isdigit(text_[pos_])) {
        k = k * 10 + (text_[pos_] - '0');
        if (k > 1000000) throw ParseError("variable index too large", start);
        ++pos_;
      }
      return Term::var(static_cast<int>(k));
    }
    return Term::var(static_cast<int>(idx));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(text_[pos_])) ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Term parse_term(std::string_view text) {
  return detail::TermParser(text).parse_full_term();
}

inline Equation parse_equation(std::string_view text) {
  return detail::TermParser(text).parse_full_equation();
}

// ---------------------------------------------------------------------------
// Positions.

enum class Dir : uint8_t { Left, Right };
using Position = std::vector<Dir>;

struct PositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Term subterm_at(const Term& t, const Position& p) {
  Term cur = t;
  for (Dir d : p) {
    if (cur.is_var()) throw PositionError("position addresses a missing node");
    cur = (d == Dir::Left) ? cur.left() : cur.right();
  }
  return cur;
}

inline Term replace_at(const Term& t, const Position& p, const Term& r,
                       size_t depth = 0) {
  if (depth == p.size()) return r;
  if (t.is_var()) throw PositionError("position addresses a missing node");
  if (p[depth] == Dir::Left) {
    Term l = replace_at(t.left(), p, r, depth + 1);
    return t.kind() == TermKind::Meet ? Term::meet(l, t.right())
                                      : Term::join(l, t.right());
  }
  Term rr = replace_at(t.right(), p, r, depth + 1);
  return t.kind() == TermKind::Meet ? Term::meet(t.left(), rr)
                                    : Term::join(t.left(), rr);
}

// All positions of t in preorder (root first).
inline void all_positions_rec(const Term& t, Position& cur,
                              std::vector<Position>& out) {
  out.push_back(cur);
  if (t.is_var()) return;
  cur.push_back(Dir::Left);
  all_positions_rec(t.left(), cur, out);
  cur.back() = Dir::Right;
  all_positions_rec(t.right(), cur, out);
  cur.pop_back();
}

inline std::vector<Position> all_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  all_positions_rec(t, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution and unification.

struct Substitution {
  std::map<int, Term> bindings;

  bool empty() const { return bindings.empty(); }

  // Simultaneous replacement; unbound variables unchanged.
  Term apply(const Term& t) const {
    if (t.is_var()) {
      auto it = bindings.find(t.var_id().index);
      return it == bindings.end() ? t : it->second;
    }
    Term l = apply(t.left());
    Term r = apply(t.right());
    if (l == t.left() && r == t.right()) return t;
    return t.kind() == TermKind::Meet ? Term::meet(l, r) : Term::join(l, r);
  }

  Equation apply(const Equation& e) const {
    return Equation{apply(e.lhs), apply(e.rhs)};
  }
};

namespace detail {

inline bool occurs_resolved(int v, const Term& t,
                            const std::map<int, Term>& b) {
  if (t.is_var()) {
    if (t.var_id().index == v) return true;
    auto it = b.find(t.var_id().index);
    return it != b.end() && occurs_resolved(v, it->second, b);
  }
  return occurs_resolved(v, t.left(), b) || occurs_resolved(v, t.right(), b);
}

inline bool unify_rec(Term a, Term b, std::map<int, Term>& s) {
  while (a.is_var()) {
    auto it = s.find(a.var_id().index);
    if (it == s.end()) break;
    a = it->second;
  }
  while (b.is_var()) {
    auto it = s.find(b.var_id().index);
    if (it == s.end()) break;
    b = it->second;
  }
  if (a.is_var()) {
    if (b.is_var() && a.var_id() == b.var_id()) return true;
    if (occurs_resolved(a.var_id().index, b, s)) return false;
    s.emplace(a.var_id().index, b);
    return true;
  }
  if (b.is_var()) {
    if (occurs_resolved(b.var_id().index, a, s)) return false;
    s.emplace(b.var_id().index, a);
    return true;
  }
  if (a.kind() != b.kind()) return false;
  return unify_rec(a.left(), b.left(), s) && unify_rec(a.right(), b.right(), s);
}

inline Term resolve_deep(const Term& t, const std::map<int, Term>& b) {
  if (t.is_var()) {
    auto it = b.find(t.var_id().index);
    if (it == b.end()) return t;
    return resolve_deep(it->second, b);
  }
  Term l = resolve_deep(t.left(), b);
  Term r = resolve_deep(t.right(), b);
  if (l == t.left() && r == t.right()) return t;
  return t.kind() == TermKind::Meet ? Term::meet(l, r) : Term::join(l, r);
}

}  // namespace detail

// Most general unifier, syntactic with occurs check. The result is
// idempotent: applying it twice equals applying it once.
inline std::optional<Substitution> unify(const Term& a, const Term& b) {
  std::map<int, Term> triangular;
  if (!detail::unify_rec(a, b, triangular)) return std::nullopt;
  Substitution out;
  for (const auto& [v, t] : triangular)
    out.bindings.emplace(v, detail::resolve_deep(t, triangular));
  return out;
}

// ---------------------------------------------------------------------------
// Renaming.

inline int max_var_index(const Term& t) {
  if (t.is_var()) return t.var_id().index;
  return std::max(max_var_index(t.left()), max_var_index(t.right()));
}

inline int max_var_index(const Equation& e) {
  return std::max(max_var_index(e.lhs), max_var_index(e.rhs));
}

inline Term shift_vars(const Term& t, int offset) {
  if (t.is_var()) return Term::var(t.var_id().index + offset);
  Term l = shift_vars(t.left(), offset);
  Term r = shift_vars(t.right(), offset);
  return t.kind() == TermKind::Meet ? Term::meet(l, r) : Term::join(l, r);
}

// e1 keeps its names; e2 is shifted past them.
inline std::pair<Equation, Equation> rename_apart(const Equation& e1,
                                                  const Equation& e2) {
  int offset = max_var_index(e1) + 1;
  return {e1, Equation{shift_vars(e2.lhs, offset), shift_vars(e2.rhs, offset)}};
}

namespace detail {

inline Term canonicalize_rec(const Term& t, std::map<int, int>& renaming) {
  if (t.is_var()) {
    auto [it, inserted] =
        renaming.emplace(t.var_id().index, static_cast<int>(renaming.size()));
    return Term::var(it->second);
  }
  Term l = canonicalize_rec(t.left(), renaming);
  Term r = canonicalize_rec(t.right(), renaming);
  return t.kind() == TermKind::Meet ? Term::meet(l, r) : Term::join(l, r);
}

}  // namespace detail

// Variables renumbered by first occurrence in preorder of lhs then rhs.
// Two equations are variants iff their canonical forms are identical.
inline Equation canonicalize_vars(const Equation& e) {
  std::map<int, int> renaming;
  Term lhs = detail::canonicalize_rec(e.lhs, renaming);
  Term rhs = detail::canonicalize_rec(e.rhs, renaming);
  return Equation{lhs, rhs};
}

inline bool variant_eq(const Equation& e1, const Equation& e2) {
  return canonicalize_vars(e1) == canonicalize_vars(e2);
}

inline std::string canonical_text(const Equation& e) {
  return print_equation(canonicalize_vars(e));
}

}  // namespace forge
