#pragma once

#include <random>

#include "forge/term.hpp"

// Shared random generators for the property suites. Everything is seeded
// explicitly so failures replay.

namespace forge::testing {

inline Term random_term(std::mt19937& rng, int max_depth, int var_pool = 4) {
  std::uniform_int_distribution<int> var(0, var_pool - 1);
  if (max_depth == 0 || rng() % 3 == 0) return Term::var(var(rng));
  Term l = random_term(rng, max_depth - 1, var_pool);
  Term r = random_term(rng, max_depth - 1, var_pool);
  return rng() % 2 ? Term::meet(l, r) : Term::join(l, r);
}

inline Equation random_equation(std::mt19937& rng, int max_depth,
                                int var_pool = 4) {
  return Equation{random_term(rng, max_depth, var_pool),
                  random_term(rng, max_depth, var_pool)};
}

}  // namespace forge::testing
