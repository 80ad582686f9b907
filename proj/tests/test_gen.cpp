#include <set>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "recon/gen.hpp"
#include "recon/io.hpp"

using namespace recon;

TEST_CASE("generation is deterministic down to the file bytes") {
  GenSpec spec{40, 1.5, 1.5, 123};
  Problem a = generate(spec);
  Problem b = generate(spec);
  CHECK(problem_to_json(a) == problem_to_json(b));
  CHECK(a.name == "r40-ddep1.5-dprec1.5-s123");

  GenSpec other = spec;
  other.seed = 124;
  CHECK(problem_to_json(generate(other)) != problem_to_json(a));
}

TEST_CASE("zero dependency density yields the t-family") {
  Problem p = generate(GenSpec{30, 0.0, 1.5, 5});
  CHECK(p.deps.empty());
  CHECK(p.name.substr(0, 3) == "t30");
}

TEST_CASE("a single action has no pairs to draw") {
  Problem p = generate(GenSpec{1, 1.0, 1.0, 9});
  CHECK(p.deps.empty());
  CHECK(p.precs.empty());
}

TEST_CASE("generated pairs are unique per class and never self-referential") {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    Problem p = generate(GenSpec{25, 2.0, 2.0, seed});
    std::set<IdPair> deps(p.deps.begin(), p.deps.end());
    std::set<IdPair> precs(p.precs.begin(), p.precs.end());
    CHECK(deps.size() == p.deps.size());
    CHECK(precs.size() == p.precs.size());
    for (auto [i, j] : p.deps) CHECK(i != j);
    for (auto [i, j] : p.precs) CHECK(i != j);
    CHECK(validate_problem(p).empty());
  }
}

TEST_CASE("per-class counts average density * (n - 1)") {
  const int n = 30;
  const double density = 1.5;
  const int rounds = 1000;
  long long dep_total = 0;
  long long prec_total = 0;
  for (int seed = 0; seed < rounds; ++seed) {
    Problem p = generate(GenSpec{n, density, density, static_cast<std::uint32_t>(seed)});
    dep_total += static_cast<long long>(p.deps.size());
    prec_total += static_cast<long long>(p.precs.size());
  }
  const double expect = density * (n - 1);
  CHECK(dep_total / static_cast<double>(rounds) == doctest::Approx(expect).epsilon(0.05));
  CHECK(prec_total / static_cast<double>(rounds) == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("the same pair may carry both constraint kinds") {
  // high densities make overlaps certain
  Problem p = generate(GenSpec{10, 10.0, 10.0, 3});
  std::set<IdPair> precs(p.precs.begin(), p.precs.end());
  bool overlap = false;
  for (auto pr : p.deps)
    if (precs.count(pr)) overlap = true;
  CHECK(overlap);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(generate(GenSpec{0, 1.0, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate(GenSpec{10, -0.5, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate(GenSpec{10, 1.0, 11.0, 0}), std::invalid_argument);
  CHECK_NOTHROW(generate(GenSpec{10, 10.0, 10.0, 0}));  // probability exactly 1
}

TEST_CASE("probability one fills every ordered pair") {
  Problem p = generate(GenSpec{6, 6.0, 6.0, 1});
  CHECK(p.deps.size() == 30);
  CHECK(p.precs.size() == 30);
}
