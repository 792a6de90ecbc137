#include <catch_amalgamated.hpp>
#include <random>
#include <set>
#include <sstream>

#include "forge/fixtures.hpp"
#include "forge/proof.hpp"
#include "forge/whitman.hpp"
#include "random_terms.hpp"

using namespace forge;

namespace {

Derivation fixture_derivation() {
  return parse_derivation(std::string(fixtures::kA1ProofText));
}

}  // namespace

TEST_CASE("paramodulants: the self-overlap of A1") {
  // Rewriting A1 into itself must reproduce the derivation's second line.
  std::vector<Equation> ps = paramodulants(fixtures::A1(), fixtures::A1());
  CHECK_FALSE(ps.empty());
  Equation line2 =
      parse_equation("((((x+y)*y)+(y+y))*(z+((u+y)*(y+v))))=y");
  bool found = false;
  for (const Equation& p : ps)
    if (variant_eq(p, line2)) found = true;
  CHECK(found);
}

TEST_CASE("paramodulants are canonicalized and deduplicated") {
  Equation idem = parse_equation("(x*x)=x");
  std::vector<Equation> ps = paramodulants(idem, idem);
  std::set<std::string> texts;
  for (const Equation& p : ps) {
    CHECK(p == canonicalize_vars(p));
    CHECK(texts.insert(print_equation(p)).second);
  }
}

TEST_CASE("is_instance_of") {
  CHECK(is_instance_of(parse_equation("((x*x)*y)=(x*x)"),
                       parse_equation("(x*y)=x")));
  CHECK_FALSE(is_instance_of(parse_equation("(x*y)=x"),
                             parse_equation("((x*x)*y)=(x*x)")));
  CHECK(is_instance_of(parse_equation("(x*y)=x"), parse_equation("(x*y)=x")));
}

TEST_CASE("fixture derivation parses to 51 steps") {
  Derivation d = fixture_derivation();
  REQUIRE(d.steps.size() == 51);
  CHECK(d.steps.front().just.is_axiom);
  CHECK(d.steps.back().id == 51);
  CHECK_FALSE(d.steps.back().just.is_axiom);
}

TEST_CASE("fixture derivation checks out completely") {
  Derivation d = fixture_derivation();
  std::vector<Verdict> vs = check_derivation(d, {fixtures::A1()});
  for (size_t i = 0; i < vs.size(); ++i) {
    INFO("step " << d.steps[i].id << ": " << vs[i].reason);
    CHECK(vs[i].ok);
  }
  CHECK(all_ok(vs));
  CHECK(check_targets(d, {fixtures::L1(), fixtures::L2(), fixtures::L3(),
                          fixtures::L4()}));
  CHECK(find_target_line(d, fixtures::L1()) == 49);
  CHECK(find_target_line(d, fixtures::L2()) == 33);
  CHECK(find_target_line(d, fixtures::L3()) == 51);
  CHECK(find_target_line(d, fixtures::L4()) == 41);
}

TEST_CASE("tampering with a step is caught") {
  Derivation d = fixture_derivation();
  // Swap one equation for a harmless-looking variant of something else.
  d.steps[20].equation = parse_equation("(x*(y+x))=x");
  std::vector<Verdict> vs = check_derivation(d, {fixtures::A1()});
  CHECK_FALSE(all_ok(vs));

  d = fixture_derivation();
  d.steps[5].just.from_id = 2;  // wrong citation
  CHECK_FALSE(all_ok(check_derivation(d, {fixtures::A1()})));

  d = fixture_derivation();
  d.steps[10].id = d.steps[9].id;  // ids must strictly increase
  CHECK_FALSE(all_ok(check_derivation(d, {fixtures::A1()})));

  d = fixture_derivation();
  d.steps[30].just.from_id = 99;  // forward/missing reference
  CHECK_FALSE(all_ok(check_derivation(d, {fixtures::A1()})));
}

TEST_CASE("axiom steps must be variants of a listed axiom") {
  Derivation d;
  d.steps.push_back({1, parse_equation("(y*z)=(z*y)"), {true, 0, 0}});
  CHECK(all_ok(check_derivation(d, {parse_equation("(x*y)=(y*x)")})));
  CHECK_FALSE(all_ok(check_derivation(d, {parse_equation("(x+y)=(y+x)")})));
  // An instance is not a variant.
  d.steps[0].equation = parse_equation("(x*x)=(x*x)");
  CHECK_FALSE(all_ok(check_derivation(d, {parse_equation("(x*y)=(y*x)")})));
}

TEST_CASE("proof file round trip") {
  Derivation d = fixture_derivation();
  std::stringstream ss;
  write_derivation(ss, d);
  Derivation back = parse_derivation(ss);
  REQUIRE(back.steps.size() == d.steps.size());
  for (size_t i = 0; i < d.steps.size(); ++i) {
    CHECK(back.steps[i].id == d.steps[i].id);
    CHECK(back.steps[i].equation == d.steps[i].equation);
    CHECK(back.steps[i].just.is_axiom == d.steps[i].just.is_axiom);
    CHECK(back.steps[i].just.from_id == d.steps[i].just.from_id);
    CHECK(back.steps[i].just.into_id == d.steps[i].just.into_id);
  }
}

TEST_CASE("parser rejects malformed proof lines") {
  CHECK_THROWS(parse_derivation("1 | x = | axiom\n"));
  CHECK_THROWS(parse_derivation("one | x = x | axiom\n"));
  CHECK_THROWS(parse_derivation("1 | x = x | 2 ->\n"));
  CHECK_THROWS(parse_derivation("1 | x = x\n"));
}

TEST_CASE("property: paramodulants of identities are identities",
          "[property]") {
  // Semantic soundness of the inference rule, sampled over the fixture
  // equations (all certified lattice identities).
  Derivation d = fixture_derivation();
  std::mt19937 rng(11401);
  int produced = 0;
  for (int i = 0; i < 1100; ++i) {
    const Equation& from = d.steps[rng() % d.steps.size()].equation;
    const Equation& into = d.steps[rng() % d.steps.size()].equation;
    std::vector<Equation> ps = paramodulants(from, into);
    if (ps.empty()) continue;
    const Equation& pick = ps[rng() % ps.size()];
    ++produced;
    CHECK(is_identity(pick));
  }
  CHECK(produced > 500);
}

TEST_CASE("property: kernel accepts honestly generated steps", "[property]") {
  // Random two-step derivations built from the rule itself must verify.
  Derivation d = fixture_derivation();
  std::mt19937 rng(11402);
  int built = 0;
  for (int i = 0; i < 1000; ++i) {
    size_t a = rng() % d.steps.size();
    size_t b = rng() % d.steps.size();
    std::vector<Equation> ps =
        paramodulants(d.steps[a].equation, d.steps[b].equation);
    if (ps.empty()) continue;
    ++built;
    ProofStep next;
    next.id = 52;
    next.equation = ps[rng() % ps.size()];
    next.just = {false, d.steps[a].id, d.steps[b].id};
    Verdict v = check_step(d, next, {fixtures::A1()});
    INFO(print_equation(next.equation) << " via [" << d.steps[a].id << " -> "
                                       << d.steps[b].id << "]: " << v.reason);
    CHECK(v.ok);
  }
  CHECK(built > 500);
}
