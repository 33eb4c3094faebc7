#ifndef WEF_ILP_HPP
#define WEF_ILP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wef/types.hpp"

namespace wef {

/// Resources grouped by their utility column (u_1(r), ..., u_n(r)).
struct TypeTable {
  UtilityMatrix vectors;                 // n x T, column t is type t
  std::vector<int> multiplicity;         // #t
  std::vector<std::vector<int>> members; // resources of each type, ascending
  std::vector<int> type_of;              // resource -> type

  int types() const { return static_cast<int>(multiplicity.size()); }
};

/// Types in order of first appearance.
TypeTable compute_types(const Instance& instance);

enum class Sense { Equal, LessEqual, GreaterEqual };

struct IpVariable {
  std::string name;
  Scalar lower = 0;
  Scalar upper = 0;
};

/// Pure feasibility program: coefficients * x (sense) rhs, bounded integer x.
struct IpModel {
  std::vector<IpVariable> variables;
  UtilityMatrix coefficients;  // rows x variables
  std::vector<Sense> senses;
  ScalarVector rhs;
  std::vector<std::string> row_names;
  Scalar big_m = 0;

  int agents = 0;
  int types = 0;
  bool has_disjunction = false;

  int variable_count() const { return static_cast<int>(variables.size()); }
  int row_count() const { return static_cast<int>(senses.size()); }

  /// Column of x_i^t.
  int x(int agent, int type) const { return agent * types + type; }
  /// Column of y_ij^1 (which = 1) or y_ij^2 (which = 2); SAEF models only.
  int y(int i, int j, int which) const;
};

/// SAEF-IP: type sums, big-M relaxed sum and weighted-average conditions per
/// ordered pair, and y1 + y2 >= 1. M = sum of all utilities * sum of weights.
IpModel encode_saef_ip(const Instance& instance, const TypeTable& types);

/// AEF-IP: type sums and w_j u_i(own) >= w_i u_i(other) per ordered pair.
IpModel encode_aef_ip(const Instance& instance, const TypeTable& types);

struct IpAssignment {
  ScalarVector values;
};

/// True iff the assignment satisfies every row and bound.
bool satisfies(const IpModel& model, const IpAssignment& assignment);

class FeasibilityBackend {
 public:
  virtual ~FeasibilityBackend() = default;
  virtual std::optional<IpAssignment> solve(const IpModel& model) = 0;
};

/// Exhaustive depth-first search over the bounded box with interval bound
/// propagation at every node.
class DepthFirstBackend final : public FeasibilityBackend {
 public:
  explicit DepthFirstBackend(std::uint64_t node_budget = 10'000'000)
      : node_budget_(node_budget) {}

  std::optional<IpAssignment> solve(const IpModel& model) override;

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t node_budget_;
  std::uint64_t nodes_ = 0;
};

std::optional<IpAssignment> solve_ip(const IpModel& model,
                                     std::uint64_t node_budget = 10'000'000);

/// Agent i receives x_i^t members of type t, members taken in index order.
/// x_i^t occupies column i * T + t in every model built here. Throws
/// std::invalid_argument if the counts do not sum to the multiplicities.
Allocation decode_allocation(const Instance& instance, const TypeTable& types,
                             const IpAssignment& assignment);

/// LP-format dump ("Minimize obj: 0", constraints, bounds, generals).
void write_lp(std::ostream& out, const IpModel& model);

}  // namespace wef

#endif  // WEF_ILP_HPP
