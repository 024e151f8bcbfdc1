#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "property_checks.hpp"

#include <cstring>
#include <iostream>

namespace {
std::uint64_t g_seed = 20240601;
}

#define PROPERTY(name, fn)                                                                                        \
  TEST_CASE(name) {                                                                                               \
    std::mt19937_64 rng(g_seed);                                                                                  \
    auto r = props::fn(rng, 1000);                                                                                \
    INFO(r.first_failure);                                                                                        \
    CHECK(r.cases >= 1000);                                                                                       \
    CHECK(r.failures == 0);                                                                                       \
  }

PROPERTY("chi symmetrization", chi_symmetrization)
PROPERTY("closed-form Euler characteristic", closed_form_euler)
PROPERTY("alternating sum of cohomology", alternating_sum)
PROPERTY("Serre duality", serre_duality)
PROPERTY("pullback invariance", pullback_invariance)
PROPERTY("degree floor", degree_floor)
PROPERTY("tiling equivalence", tiling_equivalence)
PROPERTY("augment / de-augment identity", augment_identity)
PROPERTY("reflections", reflections)
PROPERTY("moves keep toric systems", move_validation)

int main(int argc, char **argv) {
  std::vector<char *> rest;
  for (int i = 0; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      g_seed = std::stoull(argv[++i]);
      continue;
    }
    rest.push_back(argv[i]);
  }
  std::cout << "seed " << g_seed << std::endl;
  doctest::Context ctx(static_cast<int>(rest.size()), rest.data());
  return ctx.run();
}
