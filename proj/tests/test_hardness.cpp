#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "wef/exact.hpp"
#include "wef/hardness.hpp"
#include "wef/model.hpp"

using namespace wef;

namespace {

Clause clause(int a, int b, int c) {
  auto lit = [](int v) { return Literal{std::abs(v) - 1, v > 0}; };
  return {lit(a), lit(b), lit(c)};
}

CnfFormula formula(int vars, std::vector<Clause> clauses) {
  return CnfFormula{vars, std::move(clauses)};
}

CnfFormula random_formula(std::mt19937_64& rng, int vars, int clauses) {
  std::uniform_int_distribution<int> vd(1, vars), sd(0, 1);
  CnfFormula f{vars, {}};
  for (int j = 0; j < clauses; ++j) {
    Clause c;
    for (auto& l : c) l = Literal{vd(rng) - 1, sd(rng) == 1};
    f.clauses.push_back(c);
  }
  return f;
}

}  // namespace

TEST_SUITE("hardness") {

TEST_CASE("reduction shape") {
  const auto one = reduce_3sat(formula(1, {clause(1, 1, 1)}));
  CHECK(one.instance.agents() == 6);
  CHECK(one.instance.resources() == 6);
  CHECK(one.gadgets.size() == 6);

  const auto f = formula(3, {clause(1, -2, 3), clause(-1, 2, 2)});
  const auto red = reduce_3sat(f);
  const Scalar M = default_big_m(f);
  CHECK(M == 2 * 3 + 4 * 2 + 2);
  std::set<Scalar> weights(red.instance.weights().begin(), red.instance.weights().end());
  CHECK(weights == std::set<Scalar>{1, M});
  std::set<Scalar> values;
  for (int i = 0; i < red.instance.agents(); ++i)
    for (int r = 0; r < red.instance.resources(); ++r) values.insert(red.instance.utility(i, r));
  CHECK(values == std::set<Scalar>{0, 1, M});

  // Slot agent 2 of clause 1 carries literal not-x2, so it values the resource
  // that makes that literal false: x2's true resource.
  const auto& g = red.gadgets.clauses[0];
  const auto& x2 = red.gadgets.variables[1];
  CHECK(red.instance.utility(g.slot_agents[1], x2.true_resource) == M);
  CHECK(red.instance.utility(g.slot_agents[1], x2.false_resource) == 0);
  CHECK(red.instance.utility(g.slot_agents[1], g.slot_resources[1]) == M);
  CHECK(red.instance.utility(g.slot_agents[1], g.hub_resource) == 1);
  CHECK(red.instance.utility(g.hub_agent, g.slot_resources[2]) == M);
  CHECK(red.instance.weight(g.hub_agent) == M);
  const auto& x1 = red.gadgets.variables[0];
  CHECK(red.instance.utility(g.slot_agents[0], x1.false_resource) == M);
  CHECK(red.instance.utility(x1.light_agent, x1.true_resource) == 1);
  CHECK(red.instance.utility(x1.heavy_agent, x1.false_resource) == M);

  const auto empty = reduce_3sat(formula(1, {}));
  CHECK(empty.instance.agents() == 2);
  CHECK(find_house_exact(empty.instance, Concept::SAEF));

  CHECK_THROWS_AS(reduce_3sat(f, 1), std::invalid_argument);
}

TEST_CASE("brute-force SAT") {
  const auto a = sat_brute_force(formula(1, {clause(1, 1, 1)}));
  REQUIRE(a);
  CHECK((*a)[0]);
  CHECK_FALSE(sat_brute_force(formula(1, {clause(1, 1, 1), clause(-1, -1, -1)})));
  CHECK(sat_brute_force(formula(3, {clause(1, -2, 3)})));
  CHECK_THROWS_AS(sat_brute_force(formula(30, {}), 24), BudgetExceeded);
}

TEST_CASE("forward construction") {
  const auto f = formula(1, {clause(1, 1, 1)});
  const auto red = reduce_3sat(f);
  const auto a = assignment_to_house_allocation(f, red.gadgets, {true});
  CHECK(is_house(red.instance, a));
  CHECK(is_fair(red.instance, a, Concept::SAEF));
  CHECK(extract_assignment(f, red, a) == std::vector<bool>{true});
  CHECK_THROWS_AS(assignment_to_house_allocation(f, red.gadgets, {false}), std::invalid_argument);

  const auto lone = formula(1, {});
  const auto lred = reduce_3sat(lone);
  const auto la = assignment_to_house_allocation(lone, lred.gadgets, {false});
  const auto& v = lred.gadgets.variables[0];
  CHECK(la.bundle(v.light_agent) == Bundle{v.false_resource});
}

TEST_CASE("equivalence on small formulas") {
  CHECK(verify_reduction(formula(1, {})));
  CHECK(verify_reduction(formula(1, {clause(1, 1, 1), clause(-1, -1, -1)})));
  // Every sign pattern of one clause over three variables (gadget size 10).
  for (int mask = 0; mask < 8; ++mask) {
    const int a = (mask & 1) ? 1 : -1, b = (mask & 2) ? 2 : -2, c = (mask & 4) ? 3 : -3;
    CHECK(verify_reduction(formula(3, {clause(a, b, c)})));
  }
}

TEST_CASE("existence is invariant in the choice of M") {
  const std::vector<CnfFormula> cases{
      formula(1, {clause(1, 1, 1)}),
      formula(1, {clause(1, 1, 1), clause(-1, -1, -1)}),
      formula(1, {clause(1, -1, 1)}),
      formula(1, {clause(-1, -1, -1)}),
  };
  for (const auto& f : cases) {
    const bool sat = sat_brute_force(f).has_value();
    for (Scalar M : {3, 10, 1000}) {
      CAPTURE(M);
      const auto red = reduce_3sat(f, M);
      CHECK(find_house_exact(red.instance, Concept::SAEF).has_value() == sat);
    }
  }
}

TEST_CASE("property: constructed witnesses are fair and round-trip") {
  std::mt19937_64 rng(51);
  int satisfiable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> vd(1, 6), cd(0, 8);
    const auto f = random_formula(rng, vd(rng), cd(rng));
    const auto sol = sat_brute_force(f);
    if (!sol) continue;
    ++satisfiable;
    const auto red = reduce_3sat(f);
    const auto a = assignment_to_house_allocation(f, red.gadgets, *sol);
    REQUIRE(is_house(red.instance, a));
    REQUIRE(is_fair(red.instance, a, Concept::SAEF));
    REQUIRE(f.satisfied_by(extract_assignment(f, red, a)));
  }
  CHECK(satisfiable > 100);
}

TEST_CASE("fair allocations found by search decode to satisfying assignments") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_formula(rng, 1, 1 + trial % 2);
    const auto red = reduce_3sat(f);
    const auto found = find_house_exact(red.instance, Concept::SAEF);
    REQUIRE(found.has_value() == sat_brute_force(f).has_value());
    if (found) REQUIRE(f.satisfied_by(extract_assignment(f, red, *found)));
  }
}

TEST_CASE("DIMACS parsing") {
  std::istringstream ok("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 2 0\n");
  const auto f = parse_dimacs(ok);
  CHECK(f.variables == 3);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0][1] == Literal{1, false});

  std::ostringstream out;
  write_dimacs(out, f);
  std::istringstream back(out.str());
  const auto g = parse_dimacs(back);
  CHECK(g.clauses == f.clauses);

  std::istringstream two("p cnf 2 1\n1 -2 0\n");
  CHECK_THROWS_AS(parse_dimacs(two), std::invalid_argument);
  std::istringstream count("p cnf 2 2\n1 -2 2 0\n");
  CHECK_THROWS_AS(parse_dimacs(count), std::invalid_argument);
  std::istringstream range("p cnf 2 1\n1 -2 3 0\n");
  CHECK_THROWS_AS(parse_dimacs(range), std::invalid_argument);
  std::istringstream header("1 2 3 0\n");
  CHECK_THROWS_AS(parse_dimacs(header), std::invalid_argument);
}

}  // TEST_SUITE
