#ifndef WEF_MODEL_HPP
#define WEF_MODEL_HPP

#include <span>
#include <vector>

#include "wef/types.hpp"

namespace wef {

/// Sum of agent i's utilities over the bundle.
Scalar bundle_utility(const Instance& instance, int agent,
                      std::span<const int> bundle);

/// Outcome of comparing agent i's own bundle value against its value for
/// agent j's bundle.
struct EnvyConditions {
  bool sum_envy = false;  // u_i(own) < u_i(other)
  bool avg_envy = false;  // u_i(own) * w_j < u_i(other) * w_i

  bool envies(Concept c) const {
    switch (c) {
      case Concept::SEF:
        return sum_envy;
      case Concept::AEF:
        return avg_envy;
      case Concept::SAEF:
        return sum_envy && avg_envy;
    }
    return false;
  }
};

inline EnvyConditions compare_bundles(Scalar own, Scalar other,
                                      Scalar own_weight, Scalar other_weight) {
  return {own < other, Wide{own} * other_weight < Wide{other} * own_weight};
}

bool envies(const Instance& instance, const Allocation& allocation, int i,
            int j, Concept c);

bool is_fair(const Instance& instance, const Allocation& allocation,
             Concept c);

bool is_complete(const Instance& instance, const Allocation& allocation);

bool is_house(const Instance& instance, const Allocation& allocation);

struct EnvyPair {
  int envious = 0;
  int envied = 0;
  Scalar own_value = 0;
  Scalar other_value = 0;
  bool sum_condition_held = false;
  bool avg_condition_held = false;
};

struct EnvyReport {
  Concept concept_ = Concept::SAEF;
  std::vector<EnvyPair> pairs;

  bool fair() const { return pairs.empty(); }
};

/// Every ordered pair (i, j), i != j, where i envies j under the concept.
EnvyReport envy_report(const Instance& instance, const Allocation& allocation,
                       Concept c);

}  // namespace wef

#endif  // WEF_MODEL_HPP
