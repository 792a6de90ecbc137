#include <catch_amalgamated.hpp>
#include <random>
#include <sstream>

#include "forge/algebra.hpp"
#include "forge/fixtures.hpp"

using namespace forge;

namespace {

FiniteAlgebra chain(int n) {
  FiniteAlgebra a;
  a.size = n;
  a.meet.resize(n * n);
  a.join.resize(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a.meet[i * n + j] = std::min(i, j);
      a.join[i * n + j] = std::max(i, j);
    }
  return a;
}

FiniteAlgebra random_algebra(std::mt19937& rng, int n) {
  FiniteAlgebra a;
  a.size = n;
  a.meet.resize(n * n);
  a.join.resize(n * n);
  for (int& v : a.meet) v = rng() % n;
  for (int& v : a.join) v = rng() % n;
  return a;
}

}  // namespace

TEST_CASE("eval and holds basics") {
  FiniteAlgebra two = chain(2);
  Assignment a = {{VarId{0}, 1}, {VarId{1}, 0}};
  CHECK(eval_term(two, parse_term("(x*y)"), a) == 0);
  CHECK(eval_term(two, parse_term("(x+y)"), a) == 1);
  CHECK(holds(two, parse_equation("(x*y)=(y*x)")));
  CHECK_FALSE(holds(two, parse_equation("(x+y)=x")));
  CHECK_THROWS(eval_term(two, parse_term("z"), a));
}

TEST_CASE("holds on zero-variable-free equation shapes") {
  // Smallest carrier, single assignment.
  FiniteAlgebra one = chain(1);
  CHECK(holds(one, parse_equation("(x+y)=(x*y)")));
}

TEST_CASE("is_lattice accepts chains, rejects broken tables") {
  for (int n = 1; n <= 4; ++n) CHECK(is_lattice(chain(n)));
  FiniteAlgebra bad = chain(2);
  bad.meet[3] = 0;  // 1*1 = 0 breaks idempotence
  CHECK_FALSE(is_lattice(bad));
  bad = chain(3);
  bad.join[1 * 3 + 2] = 1;  // 1+2 = 1 breaks absorption
  CHECK_FALSE(is_lattice(bad));
}

TEST_CASE("property: fixtures hold in every chain", "[property]") {
  for (int n = 1; n <= 5; ++n) {
    FiniteAlgebra c = chain(n);
    CHECK(holds(c, fixtures::A1()));
    CHECK(holds(c, fixtures::A2()));
    for (const Equation& ax : fixtures::lattice_axioms()) CHECK(holds(c, ax));
  }
}

TEST_CASE("model filter semantics") {
  LibraryModel m;
  m.algebra = chain(2);
  m.algebra.meet[3] = 0;  // 1*1 = 0: not a lattice, still satisfies x*y=y*x
  REQUIRE_FALSE(is_lattice(m.algebra));
  ModelLibrary lib = {m};
  CHECK_FALSE(passes_model_filter(lib, parse_equation("(x*y)=(y*x)")));
  CHECK(passes_model_filter(lib, parse_equation("(x*x)=x")));
  std::vector<Equation> in = {parse_equation("(x*y)=(y*x)"),
                              parse_equation("(x*x)=x")};
  std::vector<Equation> out = model_filter(in, lib);
  REQUIRE(out.size() == 1);
  CHECK(print_equation(out[0]) == "(x*x)=x");
}

TEST_CASE("property: filter monotonicity in the library", "[property]") {
  // Growing the library only removes candidates.
  std::mt19937 rng(9201);
  for (int i = 0; i < 1000; ++i) {
    ModelLibrary small, big;
    for (int k = 0; k < 3; ++k) {
      LibraryModel m;
      m.algebra = random_algebra(rng, 2 + static_cast<int>(rng() % 2));
      big.push_back(m);
      if (k < 2) small.push_back(m);
    }
    Equation e{parse_equation("((x*y)+x)=x")};
    if (rng() % 2) e = parse_equation("((x+y)*x)=(x*x)");
    if (!passes_model_filter(small, e)) CHECK_FALSE(passes_model_filter(big, e));
  }
}

TEST_CASE("property: model file round trip", "[property]") {
  std::mt19937 rng(9202);
  for (int i = 0; i < 1000; ++i) {
    LibraryModel m;
    m.algebra = random_algebra(rng, 1 + static_cast<int>(rng() % 4));
    if (rng() % 2) m.provenance = "found-by-search";
    if (rng() % 2) m.candidate = "((x*y)+x)=x";
    std::stringstream ss;
    write_model(ss, m);
    LibraryModel back = read_model(ss);
    CHECK(back.algebra == m.algebra);
    CHECK(back.provenance == m.provenance);
    CHECK(back.candidate == m.candidate);
  }
}

TEST_CASE("model reader rejects malformed input") {
  std::stringstream bad1("0\n");
  CHECK_THROWS(read_model(bad1));
  std::stringstream bad2("2\n0 0\n0 5\n0 1\n1 1\n");
  CHECK_THROWS(read_model(bad2));
  std::stringstream bad3("2\n0 0\n0 1\n0 1\n1 1\nstray\n");
  CHECK_THROWS(read_model(bad3));
}
