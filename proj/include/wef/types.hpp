#ifndef WEF_TYPES_HPP
#define WEF_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace wef {

// Utilities and weights are exact integers. Products u * w are formed in
// Wide; with u <= 2^31, w <= 2^31 and m <= 2^31 every product of a bundle
// value (<= max u * m) and a weight fits in 127 bits.
using Scalar = std::int64_t;
using Wide = __int128;

using UtilityMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using WeightVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using ScalarVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Concept { SEF, AEF, SAEF };

inline constexpr Concept kAllConcepts[] = {Concept::SEF, Concept::AEF,
                                           Concept::SAEF};

std::string_view to_string(Concept c);
Concept parse_concept(std::string_view text);

/// Precondition on a solver's input class was not met (wrong preference
/// class, too many agents for a house allocation, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search exceeded its configured leaf or node budget. Raised instead of
/// returning a possibly wrong verdict.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n agents with positive integer weights and an n x m matrix of
/// non-negative integer utilities. Immutable after construction.
class Instance {
 public:
  Instance(WeightVector weights, UtilityMatrix utilities);

  int agents() const { return static_cast<int>(weights_.size()); }
  int resources() const { return static_cast<int>(utilities_.cols()); }

  Scalar weight(int agent) const { return weights_(agent); }
  Scalar utility(int agent, int resource) const {
    return utilities_(agent, resource);
  }

  const WeightVector& weights() const { return weights_; }
  const UtilityMatrix& utilities() const { return utilities_; }

  bool operator==(const Instance& other) const;

 private:
  WeightVector weights_;
  UtilityMatrix utilities_;
};

using Bundle = std::vector<int>;

/// One bundle per agent. Bundles are kept sorted and are pairwise disjoint;
/// resource ranges are checked against an instance by validate().
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<Bundle> bundles);

  /// owner[r] is the agent holding resource r, or -1 if unassigned.
  static Allocation from_owners(const std::vector<int>& owner, int agents);

  int agents() const { return static_cast<int>(bundles_.size()); }
  const Bundle& bundle(int agent) const { return bundles_.at(agent); }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  /// Inverse map over m resources; -1 for unassigned.
  std::vector<int> owners(int resources) const;

  Allocation with_swapped(int a, int b) const;

  /// Throws std::out_of_range if the agent count differs from the instance or
  /// a resource index is outside [0, m).
  void validate(const Instance& instance) const;

  bool operator==(const Allocation& other) const = default;

 private:
  std::vector<Bundle> bundles_;
};

}  // namespace wef

#endif  // WEF_TYPES_HPP
