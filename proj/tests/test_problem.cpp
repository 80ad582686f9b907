#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "recon/cp.hpp"
#include "recon/problem.hpp"

using namespace recon;
using test::make_problem;

TEST_CASE("check_schedule accepts an unconstrained full schedule") {
  const int n = 6;
  Problem p = make_problem(n);
  Schedule s;
  s.accepted.assign(n, true);
  s.position.resize(n);
  for (int v = 0; v < n; ++v) s.position[v] = v + 1;
  CHECK(check_schedule(p, s).empty());
}

TEST_CASE("check_schedule flags a reversed precedence pair") {
  Problem p = make_problem(2, {}, {{0, 1}});
  Schedule s{{true, true}, {2, 1}};
  auto v = check_schedule(p, s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::Precedence);
  CHECK(v[0].a == 0);
  CHECK(v[0].b == 1);
}

TEST_CASE("check_schedule flags a broken dependency") {
  Problem p = make_problem(2, {{0, 1}});
  Schedule s{{true, false}, {1, 0}};
  auto v = check_schedule(p, s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::Dependency);
}

TEST_CASE("check_schedule flags bad or missing positions") {
  Problem p = make_problem(3);
  Schedule s{{true, true, false}, {0, 7, 0}};
  auto v = check_schedule(p, s);
  REQUIRE(v.size() == 2);
  CHECK(v[0].kind == ViolationKind::PositionMissing);
  CHECK(v[0].a == 0);
  CHECK(v[1].kind == ViolationKind::PositionRange);
  CHECK(v[1].a == 1);
}

TEST_CASE("check_schedule rejects mismatched vector sizes as input errors") {
  Problem p = make_problem(3);
  Schedule s{{true, true}, {1, 2}};
  CHECK_THROWS_AS(check_schedule(p, s), std::invalid_argument);
}

TEST_CASE("equal positions violate a precedence") {
  Problem p = make_problem(2, {}, {{0, 1}});
  Schedule s{{true, true}, {1, 1}};
  CHECK(check_schedule(p, s).size() == 1);
}

TEST_CASE("an accepted self-precedence is a violation") {
  Problem p = make_problem(1, {}, {{0, 0}});
  Schedule s{{true}, {1}};
  CHECK(check_schedule(p, s).size() == 1);
  CHECK(check_schedule(p, Schedule{{false}, {0}}).empty());
}

TEST_CASE("objective counts accepted actions") {
  CHECK(objective(Schedule{{false, false, false}, {0, 0, 0}}) == 0);
  CHECK(objective(Schedule{{true, false, true, true, false}, {1, 0, 2, 3, 0}}) == 3);
  Schedule full;
  full.accepted.assign(100, true);
  full.position.assign(100, 1);
  CHECK(objective(full) == 100);
}

TEST_CASE("feasible_subset basics") {
  Problem p = make_problem(2, {}, {{0, 1}, {1, 0}});
  CHECK(feasible_subset(p, {false, false}));
  CHECK_FALSE(feasible_subset(p, {true, true}));
  CHECK(feasible_subset(p, {true, false}));

  Problem dep = make_problem(2, {{0, 1}});
  CHECK_FALSE(feasible_subset(dep, {true, false}));
  CHECK(feasible_subset(dep, {true, true}));
  CHECK(feasible_subset(dep, {false, true}));

  Problem self = make_problem(2, {}, {{1, 1}});
  CHECK(feasible_subset(self, {true, false}));
  CHECK_FALSE(feasible_subset(self, {true, true}));
}

TEST_CASE("valid schedules have feasible acceptance sets and vice versa") {
  Rng rng(2024);
  for (int round = 0; round < 200; ++round) {
    Problem p = test::random_instance(10, 1.0, 2.0, 3000 + round);
    auto accepted = test::random_flags(rng, p.n);
    if (feasible_subset(p, accepted)) {
      Schedule s{accepted, earliest_positions(p, accepted)};
      CHECK(check_schedule(p, s).empty());
    }
    // any schedule with no violations must sit on a feasible subset
    Schedule s{accepted, test::random_positions(rng, p.n)};
    if (check_schedule(p, s).empty()) CHECK(feasible_subset(p, accepted));
  }
}

TEST_CASE("objective is monotone under rejecting one action") {
  Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    Schedule s;
    s.accepted = test::random_flags(rng, 20);
    s.position.assign(20, 1);
    const int before = objective(s);
    const int victim = uniform_int(rng, 0, 19);
    s.accepted[victim] = false;
    CHECK(objective(s) <= before);
  }
}

TEST_CASE("validate_problem catches structural issues") {
  Problem p = make_problem(3, {{0, 0}}, {});
  CHECK(validate_problem(p).size() == 1);  // self-dependency

  Problem range = make_problem(3, {{0, 5}}, {{-1, 2}});
  CHECK(validate_problem(range).size() == 2);

  Problem names = make_problem(2);
  names.names = {"only-one"};
  CHECK(validate_problem(names).size() == 1);

  Problem ok = make_problem(3, {{0, 1}}, {{1, 1}});  // self-precedence is legal
  CHECK(validate_problem(ok).empty());
}

TEST_CASE("dedup_constraints drops duplicates and keeps order") {
  Problem p = make_problem(3, {{0, 1}, {1, 2}, {0, 1}}, {{2, 0}, {2, 0}, {0, 2}});
  dedup_constraints(p);
  CHECK(p.deps == std::vector<IdPair>{{0, 1}, {1, 2}});
  CHECK(p.precs == std::vector<IdPair>{{2, 0}, {0, 2}});
}

TEST_CASE("action_name falls back to indexed names") {
  Problem p = make_problem(2);
  CHECK(p.action_name(1) == "a1");
  p.names = {"fetch", "store"};
  CHECK(p.action_name(1) == "store");
}
