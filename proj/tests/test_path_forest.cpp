#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "burn/errors.hpp"
#include "burn/graph.hpp"
#include "burn/path_forest.hpp"
#include "test_util.hpp"

using namespace burn;

namespace {

long long isqrt_ceil(long long x) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
  while (r * r < x) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  return r;
}

}  // namespace

TEST_CASE("forest construction and parsing") {
  PathForest t{{3, 5, 1}};
  CHECK(t.lengths == std::vector<long long>{5, 3, 1});  // sorted descending
  CHECK(t.order() == 9);
  CHECK(t.size() == 3);
  CHECK(t.shortest() == 1);
  CHECK(t.to_string() == "5,3,1");

  CHECK(parse_forest("17,15,4").lengths == std::vector<long long>{17, 15, 4});
  CHECK(parse_forest("4,15,17").lengths == std::vector<long long>{17, 15, 4});
  CHECK_THROWS_AS(parse_forest(""), ParseError);
  CHECK_THROWS_AS(parse_forest("3,x"), ParseError);
  CHECK_THROWS_AS(parse_forest("3,0"), ParseError);
  CHECK_THROWS_AS((PathForest{{}}), DomainError);
  CHECK_THROWS_AS((PathForest{{4, -1}}), DomainError);
}

TEST_CASE("single path burning number") {
  for (long long l = 1; l <= 400; ++l) CHECK(path_burning_number(l) == isqrt_ceil(l));
  CHECK_THROWS_AS(path_burning_number(0), DomainError);
}

TEST_CASE("t_value counts order-2 components only when the shortest is 2") {
  CHECK(t_value(PathForest{{5, 2, 2}}) == 2);
  CHECK(t_value(PathForest{{4, 3, 2}}) == 1);
  CHECK(t_value(PathForest{{5, 3, 3}}) == 0);
  CHECK(t_value(PathForest{{2, 2, 2}}) == 3);
  CHECK(t_value(PathForest{{5, 2, 1}}) == 0);  // shortest is 1
}

TEST_CASE("assignment validation") {
  PathForest t{{5, 3}};
  RadiiAssignment good{3, {{5}, {3}}};
  CHECK(assignment_valid(t, good));

  std::string why;
  RadiiAssignment overlap{3, {{5}, {5}}};
  CHECK(!assignment_valid(t, overlap, &why));
  CHECK(!why.empty());

  RadiiAssignment even{3, {{4, 1}, {3}}};
  CHECK(!assignment_valid(t, even));

  RadiiAssignment small{3, {{3}, {5}}};  // 3 < 5 on the first path
  CHECK(!assignment_valid(t, small));

  RadiiAssignment out_of_range{3, {{7}, {3}}};  // 7 > 2m-1
  CHECK(!assignment_valid(t, out_of_range));

  RadiiAssignment wrong_shape{3, {{5}}};
  CHECK(!assignment_valid(t, wrong_shape));
}

TEST_CASE("decide matches the graph oracle on every small forest") {
  for (long long total = 1; total <= 12; ++total) {
    for (const auto& part : testutil::all_partitions(total)) {
      PathForest t{part};
      Graph g = build_path_forest(t.lengths);
      testutil::ProcessOracle oracle(g);
      for (int m = 1; m <= 5; ++m) {
        PartitionDecision d = decide(t, m);
        REQUIRE(d.verdict != Verdict::Budget);
        bool expect = oracle.burnable(m);
        CHECK_MESSAGE((d.verdict == Verdict::Yes) == expect, t.to_string(), " m=", m);
        if (d.verdict == Verdict::Yes) {
          REQUIRE(d.assignment.has_value());
          CHECK(assignment_valid(t, *d.assignment));
        }
      }
    }
  }
}

TEST_CASE("decide on single paths follows the square-root law") {
  for (long long l = 1; l <= 300; ++l) {
    long long b = isqrt_ceil(l);
    CHECK(decide(PathForest{{l}}, static_cast<int>(b)).verdict == Verdict::Yes);
    if (b > 1)
      CHECK(decide(PathForest{{l}}, static_cast<int>(b - 1)).verdict == Verdict::No);
  }
}

TEST_CASE("assignment converts to a replayable burning sequence") {
  PathForest t{{7, 5, 4}};
  PartitionDecision d = decide(t, 4);
  REQUIRE(d.verdict == Verdict::Yes);
  BurningSequence seq = assignment_to_sequence(t, *d.assignment);
  Graph g = build_path_forest(t.lengths);
  CHECK(burns_within(g, seq, 4));
}

TEST_CASE("decide reports budget exhaustion") {
  DecideOptions tiny;
  tiny.node_budget = 1;
  PartitionDecision d = decide(PathForest{{17, 15, 4}}, 6, tiny);
  CHECK(d.verdict == Verdict::Budget);
  CHECK(d.nodes >= 1);
}

TEST_CASE("exceptional clause membership") {
  CHECK(exceptional_clause(PathForest{{4, 1}}, 2) == ExceptionalClause::I);
  CHECK(exceptional_clause(PathForest{{13, 1, 1}}, 4) == ExceptionalClause::I);
  CHECK(exceptional_clause(PathForest{{9, 3, 2}}, 4) == ExceptionalClause::II);
  CHECK(exceptional_clause(PathForest{{5, 5, 5}}, 4) == ExceptionalClause::III);
  CHECK(exceptional_clause(PathForest{{14, 5, 5}}, 5) == ExceptionalClause::III);
  // clause II and III need m > n
  CHECK(exceptional_clause(PathForest{{2, 2}}, 2) == ExceptionalClause::None);
  CHECK(exceptional_clause(PathForest{{7, 2, 2}}, 4) == ExceptionalClause::None);
}

TEST_CASE("exceptional families enumerate exactly and fail decide") {
  auto fam23 = exceptional_family(2, 3);
  std::set<std::string> got;
  for (const auto& f : fam23) got.insert(f.to_string());
  CHECK(got == std::set<std::string>{"5,5", "7,2", "7,3", "9,1"});

  auto fam34 = exceptional_family(3, 4);
  CHECK(fam34.size() == 5);

  for (int n = 2; n <= 4; ++n) {
    for (int m = std::max(n, 3); m <= 6; ++m) {
      for (const auto& f : exceptional_family(n, m)) {
        CHECK(exceptional_clause(f, m) != ExceptionalClause::None);
        CHECK(decide(f, m).verdict == Verdict::No);
      }
    }
  }
  CHECK_THROWS_AS(exceptional_family(1, 3), DomainError);
  CHECK_THROWS_AS(exceptional_family(3, 2), DomainError);
}

TEST_CASE("each prediction rule fires on its own witness") {
  auto rule_of = [](std::vector<long long> ls, int m) {
    auto r = theorem_predict(PathForest{std::move(ls)}, m);
    return r ? std::string(to_string(*r)) : std::string("none");
  };
  CHECK(rule_of({1}, 1) == "linear_3n2");
  CHECK(rule_of({3, 1}, 2) == "linear_3n2");
  CHECK(rule_of({5, 2, 1}, 3) == "linear_4n4");
  CHECK(rule_of({5, 3, 1}, 3) == "linear_5n6");
  CHECK(rule_of({5, 4, 3}, 4) == "linear_5n1");
  CHECK(rule_of({5, 2}, 3) == "quadratic_bound");
  CHECK(rule_of({8, 4, 2}, 4) == "three_paths");
  CHECK(rule_of({13, 3, 2, 1}, 5) == "refined_bound");
  // known non-burnable shapes at the bounds are excluded, not predicted
  CHECK(rule_of({2, 2}, 2) == "none");
  CHECK(rule_of({7, 2}, 3) == "none");
  CHECK(rule_of({9, 2, 2}, 4) == "none");
  CHECK(rule_of({11, 3, 3, 2}, 5) == "none");
}

TEST_CASE("predictions are sound on the exhaustive small range") {
  for (long long total = 1; total <= 14; ++total) {
    for (const auto& part : testutil::all_partitions(total)) {
      PathForest t{part};
      for (int m = 1; m <= 5; ++m) {
        if (theorem_predict(t, m)) {
          PartitionDecision d = decide(t, m);
          CHECK_MESSAGE(d.verdict == Verdict::Yes, t.to_string(), " m=", m);
        }
      }
    }
  }
}

TEST_CASE("verify_forest_bounds small sweeps are clean") {
  ForestBoundsReport rep = verify_forest_bounds(3, 3, 4);
  CHECK(rep.n == 3);
  CHECK(rep.checked > 0);
  CHECK(rep.violations.empty());

  ForestBoundsReport threaded = verify_forest_bounds(3, 3, 4, 4);
  CHECK(threaded.checked == rep.checked);
  CHECK(threaded.violations.empty());
}

TEST_CASE("partitions_exact matches a brute-force filter") {
  auto got = partitions_exact(12, 3, 2);
  std::set<std::vector<long long>> expect;
  for (const auto& p : testutil::all_partitions(12))
    if (p.size() == 3 && p.back() >= 2) expect.insert(p);
  std::set<std::vector<long long>> got_set(got.begin(), got.end());
  CHECK(got_set == expect);
  CHECK(got.size() == expect.size());
}
