#ifndef WEF_HARDNESS_HPP
#define WEF_HARDNESS_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wef/exact.hpp"
#include "wef/types.hpp"

namespace wef {

struct Literal {
  int variable = 0;  // 0-based
  bool positive = true;

  bool operator==(const Literal&) const = default;
};

using Clause = std::array<Literal, 3>;

/// 3-CNF formula. Repeated literals inside a clause are allowed.
struct CnfFormula {
  int variables = 0;
  std::vector<Clause> clauses;

  /// Throws std::invalid_argument on out-of-range variables.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

/// DIMACS CNF: "p cnf <vars> <clauses>" header, 'c' comment lines, clauses of
/// exactly three nonzero literals terminated by 0.
CnfFormula parse_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const CnfFormula& formula);

/// Agent and resource ids of the gadgets. Variable gadgets come first (two
/// agents / two resources per variable), then clause gadgets (four each).
struct GadgetMap {
  struct Variable {
    int light_agent;     // weight 1, values both resources at 1
    int heavy_agent;     // weight M, values both resources at M
    int true_resource;   // held by light_agent iff the variable is true
    int false_resource;
  };
  struct ClauseGadget {
    std::array<int, 3> slot_agents;     // weight 1
    int hub_agent;                      // weight M
    std::array<int, 3> slot_resources;
    int hub_resource;                   // valued 1 by the slot agents
  };

  Scalar big_m = 0;
  std::vector<Variable> variables;
  std::vector<ClauseGadget> clauses;

  int size() const {
    return 2 * static_cast<int>(variables.size()) + 4 * static_cast<int>(clauses.size());
  }
};

struct Reduction {
  Instance instance;
  GadgetMap gadgets;
};

/// Default constant: 2n + 4 * clauses + 2.
Scalar default_big_m(const CnfFormula& formula);

/// SAEF house-allocation instance that has a fair house allocation iff the
/// formula is satisfiable. Weights take values {1, M}, utilities {0, 1, M}.
Reduction reduce_3sat(const CnfFormula& formula,
                      std::optional<Scalar> big_m = std::nullopt);

/// Enumerates all 2^n assignments; refuses n > max_variables.
std::optional<std::vector<bool>> sat_brute_force(const CnfFormula& formula,
                                                 int max_variables = 24);

/// House allocation from a satisfying assignment: light agents take the
/// resource of their variable's value, and in every clause the first true
/// literal's slot agent takes the hub resource while the hub agent takes
/// that slot's resource. Throws std::invalid_argument on an unsatisfied
/// clause.
Allocation assignment_to_house_allocation(const CnfFormula& formula,
                                          const GadgetMap& gadgets,
                                          const std::vector<bool>& assignment);

/// x_i = true iff the light agent of x_i holds its true resource. Throws
/// std::invalid_argument if the allocation is not a SAEF-fair house
/// allocation of the reduced instance, std::logic_error if the extracted
/// assignment does not satisfy the formula.
std::vector<bool> extract_assignment(const CnfFormula& formula,
                                     const Reduction& reduction,
                                     const Allocation& allocation);

struct VerifyOptions {
  int exhaustive_limit = 10;  // max 2n + 4 * clauses for two-sided checking
  std::optional<Scalar> big_m;
  SearchLimits limits;
};

/// True iff satisfiability and SAEF house-allocation existence agree. Within
/// the exhaustive limit both sides are decided by brute force; beyond it only
/// satisfiable formulas are accepted, checked through the constructed
/// allocation and its round trip. Throws BudgetExceeded for an unsatisfiable
/// formula past the limit.
bool verify_reduction(const CnfFormula& formula, const VerifyOptions& options = {});

}  // namespace wef

#endif  // WEF_HARDNESS_HPP
