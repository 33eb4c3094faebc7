#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "wef/model.hpp"

using namespace wef;
using fixtures::alloc;

TEST_SUITE("model") {

TEST_CASE("bundle utility is additive") {
  const auto ex2 = fixtures::weighted_pair();
  const Bundle both{0, 1};
  CHECK(bundle_utility(ex2, 0, both) == 15);
  CHECK(bundle_utility(ex2, 1, Bundle{}) == 0);
  const auto two = fixtures::make({1}, {{3, 4}});
  CHECK(bundle_utility(two, 0, both) == 7);
  CHECK_THROWS_AS(bundle_utility(two, 0, Bundle{2}), std::out_of_range);
  CHECK_THROWS_AS(bundle_utility(two, 1, both), std::out_of_range);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(fixtures::make({0, 1}, {{1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(fixtures::make({1, 1}, {{1}, {-1}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(WeightVector::Ones(2), UtilityMatrix::Zero(3, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Allocation({{0}, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(alloc({{0}, {5}}).validate(fixtures::weighted_pair()), std::out_of_range);
  CHECK_THROWS_AS(alloc({{0}}).validate(fixtures::weighted_pair()), std::out_of_range);
}

TEST_CASE("envy predicates on the worked examples") {
  const auto ex2 = fixtures::weighted_pair();
  const auto split = alloc({{0}, {1}});
  // Sum fails (5 < 10) but the weighted average holds (5 * 10 >= 10 * 1).
  CHECK_FALSE(envies(ex2, split, 0, 1, Concept::SAEF));
  CHECK(envies(ex2, split, 0, 1, Concept::SEF));
  CHECK_FALSE(envies(ex2, split, 0, 1, Concept::AEF));
  CHECK(envies(ex2, split, 1, 0, Concept::AEF));

  const auto ex1 = fixtures::equal_pair();
  CHECK(envies(ex1, split, 1, 0, Concept::AEF));  // 1 * 1 < 1 * 2

  const auto empty = alloc({{}, {}});
  for (Concept c : kAllConcepts) {
    CHECK_FALSE(envies(ex2, empty, 0, 1, c));
    CHECK_FALSE(envies(ex2, empty, 1, 0, c));
  }
  CHECK_FALSE(envies(ex2, split, 0, 0, Concept::SEF));
}

TEST_CASE("is_fair on weighted pair") {
  const auto ex2 = fixtures::weighted_pair();
  const auto split = alloc({{0}, {1}});
  CHECK(is_fair(ex2, split, Concept::SAEF));
  CHECK_FALSE(is_fair(ex2, split, Concept::SEF));
  CHECK_FALSE(is_fair(ex2, split, Concept::AEF));
}

TEST_CASE("completeness and house shape") {
  const auto two = fixtures::make({1, 1}, {{1, 1}, {1, 1}});
  CHECK(is_complete(two, alloc({{0}, {1}})));
  CHECK_FALSE(is_complete(two, alloc({{0}, {}})));
  const auto none = Instance(WeightVector::Ones(2), UtilityMatrix(2, 0));
  CHECK(is_complete(none, alloc({{}, {}})));

  const auto three = fixtures::make({1, 1}, {{1, 1, 1}, {1, 1, 1}});
  CHECK(is_house(three, alloc({{0}, {2}})));
  CHECK_FALSE(is_house(three, alloc({{0, 1}, {2}})));
  CHECK_FALSE(is_house(three, alloc({{0}, {}})));
}

TEST_CASE("envy report lists envious ordered pairs") {
  const auto ex1 = fixtures::equal_pair();
  const auto r1 = envy_report(ex1, alloc({{0}, {1}}), Concept::AEF);
  REQUIRE(r1.pairs.size() == 1);
  CHECK(r1.pairs[0].envious == 1);
  CHECK(r1.pairs[0].envied == 0);
  CHECK(r1.pairs[0].sum_condition_held);
  CHECK_FALSE(r1.pairs[0].avg_condition_held);

  CHECK(envy_report(fixtures::weighted_pair(), alloc({{0}, {1}}), Concept::SAEF).fair());

  const auto r2 = envy_report(fixtures::weighted_pair(), alloc({{}, {0, 1}}), Concept::SAEF);
  REQUIRE(r2.pairs.size() == 1);
  CHECK(r2.pairs[0].envious == 0);
  CHECK(r2.pairs[0].envied == 1);
}

TEST_CASE("equal-utility pair verdicts do not depend on the common utility value") {
  for (Scalar v : {1, 7, 100}) {
    CAPTURE(v);
    const auto ex1 = fixtures::equal_pair(v);
    const auto split = alloc({{0}, {1}});
    CHECK(is_fair(ex1, split, Concept::SEF));
    CHECK_FALSE(is_fair(ex1, split, Concept::AEF));
    CHECK(is_fair(ex1, split, Concept::SAEF));
  }
}

namespace {

struct RandomCase {
  Instance instance;
  Allocation allocation;
};

RandomCase random_case(std::mt19937_64& rng, bool equal_weights = false) {
  std::uniform_int_distribution<int> nd(2, 4), md(0, 6), ud(0, 9), wd(1, 5), od(-1, 3);
  const int n = nd(rng), m = md(rng);
  WeightVector w(n);
  UtilityMatrix u(n, m);
  const Scalar common = wd(rng);
  for (int i = 0; i < n; ++i) w(i) = equal_weights ? common : wd(rng);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < m; ++r) u(i, r) = ud(rng);
  std::vector<int> owner(static_cast<std::size_t>(m));
  for (auto& o : owner) o = std::min(od(rng), n - 1);
  return {Instance(w, u), Allocation::from_owners(owner, n)};
}

}  // namespace

TEST_CASE("property: inheritability holds pairwise and for whole allocations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto [inst, a] = random_case(rng);
    for (int i = 0; i < inst.agents(); ++i) {
      for (int j = 0; j < inst.agents(); ++j) {
        if (i == j) continue;
        const bool sef = envies(inst, a, i, j, Concept::SEF);
        const bool aef = envies(inst, a, i, j, Concept::AEF);
        REQUIRE(envies(inst, a, i, j, Concept::SAEF) == (sef && aef));
      }
    }
    if (is_fair(inst, a, Concept::SEF) || is_fair(inst, a, Concept::AEF)) {
      REQUIRE(is_fair(inst, a, Concept::SAEF));
    }
    REQUIRE(envy_report(inst, a, Concept::SAEF).fair() == is_fair(inst, a, Concept::SAEF));
  }
}

TEST_CASE("property: swapping an SAEF-envious pair removes that envy") {
  std::mt19937_64 rng(12);
  int exercised = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto [inst, a] = random_case(rng);
    for (const auto& p : envy_report(inst, a, Concept::SAEF).pairs) {
      const auto swapped = a.with_swapped(p.envious, p.envied);
      REQUIRE_FALSE(envies(inst, swapped, p.envious, p.envied, Concept::SAEF));
      ++exercised;
    }
  }
  CHECK(exercised > 100);
}

TEST_CASE("property: equal weights collapse all three concepts") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto [inst, a] = random_case(rng, true);
    for (int i = 0; i < inst.agents(); ++i) {
      for (int j = 0; j < inst.agents(); ++j) {
        if (i == j) continue;
        const bool sef = envies(inst, a, i, j, Concept::SEF);
        REQUIRE(envies(inst, a, i, j, Concept::AEF) == sef);
        REQUIRE(envies(inst, a, i, j, Concept::SAEF) == sef);
      }
    }
  }
}

TEST_CASE("concept names parse case-insensitively") {
  CHECK(parse_concept("SAEF") == Concept::SAEF);
  CHECK(parse_concept("sef") == Concept::SEF);
  CHECK(parse_concept("Aef") == Concept::AEF);
  CHECK_THROWS_AS(parse_concept("ef1"), std::invalid_argument);
}

}  // TEST_SUITE
