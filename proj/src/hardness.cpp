#include "wef/hardness.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "wef/model.hpp"

namespace wef {

void CnfFormula::validate() const {
  if (variables < 1) throw std::invalid_argument("formula needs at least one variable");
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    for (const auto& lit : clauses[j]) {
      if (lit.variable < 0 || lit.variable >= variables) {
        throw std::invalid_argument("clause " + std::to_string(j + 1) +
                                    " uses variable " + std::to_string(lit.variable + 1) +
                                    " outside 1.." + std::to_string(variables));
      }
    }
  }
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  if (assignment.size() != static_cast<std::size_t>(variables)) return false;
  for (const auto& clause : clauses) {
    bool any = false;
    for (const auto& lit : clause) {
      any = any || assignment[static_cast<std::size_t>(lit.variable)] == lit.positive;
    }
    if (!any) return false;
  }
  return true;
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  long declared_clauses = -1;
  std::vector<Literal> pending;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("DIMACS line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "%") break;
    if (first == "p") {
      std::string kind;
      long vars = 0;
      if (!(tokens >> kind >> vars >> declared_clauses) || kind != "cnf") {
        fail("expected header 'p cnf <variables> <clauses>'");
      }
      if (vars < 1) fail("formula needs at least one variable");
      formula.variables = static_cast<int>(vars);
      continue;
    }
    if (declared_clauses < 0) fail("clause before the 'p cnf' header");
    std::istringstream all(line);
    std::string token;
    while (all >> token) {
      char* end = nullptr;
      const long value = std::strtol(token.c_str(), &end, 10);
      if (*end != '\0') fail("bad literal '" + token + "'");
      if (value == 0) {
        if (pending.size() != 3) {
          fail("clause has " + std::to_string(pending.size()) +
               " literals; exactly 3 are required");
        }
        formula.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      const long var = std::labs(value);
      if (var > formula.variables) fail("literal " + token + " exceeds the declared variables");
      pending.push_back({static_cast<int>(var - 1), value > 0});
    }
  }
  if (declared_clauses < 0) throw std::invalid_argument("DIMACS input has no 'p cnf' header");
  if (!pending.empty()) throw std::invalid_argument("last clause is not terminated by 0");
  if (static_cast<long>(formula.clauses.size()) != declared_clauses) {
    throw std::invalid_argument("header declares " + std::to_string(declared_clauses) +
                                " clauses but " + std::to_string(formula.clauses.size()) +
                                " were read");
  }
  formula.validate();
  return formula;
}

void write_dimacs(std::ostream& out, const CnfFormula& formula) {
  out << "p cnf " << formula.variables << " " << formula.clauses.size() << "\n";
  for (const auto& clause : formula.clauses) {
    for (const auto& lit : clause) {
      out << (lit.positive ? "" : "-") << lit.variable + 1 << " ";
    }
    out << "0\n";
  }
}

Scalar default_big_m(const CnfFormula& formula) {
  return 2 * static_cast<Scalar>(formula.variables) +
         4 * static_cast<Scalar>(formula.clauses.size()) + 2;
}

namespace {

// Resource whose holding by a weight-1 agent makes the literal false.
int complement_resource(const GadgetMap& g, const Literal& lit) {
  const auto& v = g.variables[static_cast<std::size_t>(lit.variable)];
  return lit.positive ? v.false_resource : v.true_resource;
}

}  // namespace

Reduction reduce_3sat(const CnfFormula& formula, std::optional<Scalar> big_m) {
  formula.validate();
  const Scalar M = big_m.value_or(default_big_m(formula));
  if (M < 2) throw std::invalid_argument("gadget constant M must be at least 2");

  GadgetMap g;
  g.big_m = M;
  for (int i = 0; i < formula.variables; ++i) {
    g.variables.push_back({2 * i, 2 * i + 1, 2 * i, 2 * i + 1});
  }
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    const int base = 2 * formula.variables + 4 * static_cast<int>(j);
    g.clauses.push_back({{base, base + 1, base + 2}, base + 3,
                         {base, base + 1, base + 2}, base + 3});
  }

  const int size = g.size();
  WeightVector weights = WeightVector::Ones(size);
  UtilityMatrix u = UtilityMatrix::Zero(size, size);
  for (const auto& v : g.variables) {
    u(v.light_agent, v.true_resource) = 1;
    u(v.light_agent, v.false_resource) = 1;
    u(v.heavy_agent, v.true_resource) = M;
    u(v.heavy_agent, v.false_resource) = M;
    weights(v.heavy_agent) = M;
  }
  for (std::size_t j = 0; j < g.clauses.size(); ++j) {
    const auto& c = g.clauses[j];
    for (std::size_t k = 0; k < 3; ++k) {
      const int agent = c.slot_agents[k];
      u(agent, c.slot_resources[k]) = M;
      u(agent, complement_resource(g, formula.clauses[j][k])) = M;
      u(agent, c.hub_resource) = 1;
      u(c.hub_agent, c.slot_resources[k]) = M;
    }
    weights(c.hub_agent) = M;
  }
  return {Instance(std::move(weights), std::move(u)), std::move(g)};
}

std::optional<std::vector<bool>> sat_brute_force(const CnfFormula& formula,
                                                 int max_variables) {
  formula.validate();
  if (formula.variables > max_variables) {
    throw BudgetExceeded("brute-force SAT refuses " + std::to_string(formula.variables) +
                         " variables (limit " + std::to_string(max_variables) + ")");
  }
  const auto n = static_cast<std::size_t>(formula.variables);
  std::vector<bool> assignment(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::size_t i = 0; i < n; ++i) assignment[i] = (bits >> i) & 1u;
    if (formula.satisfied_by(assignment)) return assignment;
  }
  return std::nullopt;
}

Allocation assignment_to_house_allocation(const CnfFormula& formula,
                                          const GadgetMap& gadgets,
                                          const std::vector<bool>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(formula.variables)) {
    throw std::invalid_argument("assignment size differs from the variable count");
  }
  std::vector<Bundle> bundles(static_cast<std::size_t>(gadgets.size()));
  auto give = [&](int agent, int resource) {
    bundles[static_cast<std::size_t>(agent)] = {resource};
  };
  for (std::size_t i = 0; i < gadgets.variables.size(); ++i) {
    const auto& v = gadgets.variables[i];
    const bool value = assignment[i];
    give(v.light_agent, value ? v.true_resource : v.false_resource);
    give(v.heavy_agent, value ? v.false_resource : v.true_resource);
  }
  for (std::size_t j = 0; j < gadgets.clauses.size(); ++j) {
    const auto& c = gadgets.clauses[j];
    int first_true = -1;
    for (int k = 0; k < 3 && first_true < 0; ++k) {
      const auto& lit = formula.clauses[j][static_cast<std::size_t>(k)];
      if (assignment[static_cast<std::size_t>(lit.variable)] == lit.positive) first_true = k;
    }
    if (first_true < 0) {
      throw std::invalid_argument("clause " + std::to_string(j + 1) +
                                  " is not satisfied by the assignment");
    }
    for (int k = 0; k < 3; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      give(c.slot_agents[kk], k == first_true ? c.hub_resource : c.slot_resources[kk]);
    }
    give(c.hub_agent, c.slot_resources[static_cast<std::size_t>(first_true)]);
  }
  return Allocation(std::move(bundles));
}

std::vector<bool> extract_assignment(const CnfFormula& formula,
                                     const Reduction& reduction,
                                     const Allocation& allocation) {
  if (!is_house(reduction.instance, allocation) ||
      !is_fair(reduction.instance, allocation, Concept::SAEF)) {
    throw std::invalid_argument("allocation is not a SAEF-fair house allocation");
  }
  std::vector<bool> assignment;
  for (const auto& v : reduction.gadgets.variables) {
    assignment.push_back(allocation.bundle(v.light_agent).front() == v.true_resource);
  }
  if (!formula.satisfied_by(assignment)) {
    throw std::logic_error("extracted assignment does not satisfy the formula");
  }
  return assignment;
}

bool verify_reduction(const CnfFormula& formula, const VerifyOptions& options) {
  const auto reduction = reduce_3sat(formula, options.big_m);
  const auto witness = sat_brute_force(formula);
  if (reduction.gadgets.size() <= options.exhaustive_limit) {
    const auto house = find_house_exact(reduction.instance, Concept::SAEF, options.limits);
    if (house) extract_assignment(formula, reduction, *house);
    return witness.has_value() == house.has_value();
  }
  if (!witness) {
    throw BudgetExceeded("unsatisfiable formula of gadget size " +
                         std::to_string(reduction.gadgets.size()) +
                         " exceeds the exhaustive limit " +
                         std::to_string(options.exhaustive_limit));
  }
  const auto allocation =
      assignment_to_house_allocation(formula, reduction.gadgets, *witness);
  if (!is_house(reduction.instance, allocation) ||
      !is_fair(reduction.instance, allocation, Concept::SAEF)) {
    return false;
  }
  return formula.satisfied_by(extract_assignment(formula, reduction, allocation));
}

}  // namespace wef
