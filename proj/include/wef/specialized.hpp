#ifndef WEF_SPECIALIZED_HPP
#define WEF_SPECIALIZED_HPP

#include <optional>
#include <vector>

#include "wef/types.hpp"

namespace wef {

struct PreferenceClass {
  bool identical = false;  // every row of the utility matrix is equal
  bool zero_one = false;   // every entry is 0 or 1
};

PreferenceClass classify_preferences(const Instance& instance);

/// Complete AEF allocation under identical 0/1 preferences. With m1
/// one-valued resources, agent a must receive exactly w_a * m1 / sum(w) of
/// them; exists iff every such share is integral. Zero-valued resources go
/// to the first agent.
std::optional<Allocation> aef_identical01(const Instance& instance);

/// Complete SAEF allocation under identical 0/1 preferences, O(n m^3).
///
/// With agents sorted by weight ascending, an allocation is SAEF-fair iff
/// consecutive agents satisfy u_i <= u_{i+1} and u_i / w_i >= u_{i+1} /
/// w_{i+1}. The table is indexed by (agent prefix, one-valued resources
/// used, resources given to the last agent of the prefix) and stores the
/// back-pointer to the previous agent's count.
std::optional<Allocation> saef_identical01_dp(const Instance& instance);

/// SAEF house allocation under 0/1 preferences. For singleton bundles and
/// 0/1 values the SAEF and SEF conditions coincide, so this solves SEF house
/// allocation by iterated maximum matching.
std::optional<Allocation> saef_house_01(const Instance& instance);

/// SAEF house allocation under identical preferences, O(n m^2): agents by
/// weight ascending, resources by utility ascending, c(i, j) reachable when
/// agent i may take resource j after a feasible prefix ending at j' < j.
std::optional<Allocation> saef_house_identical_dp(const Instance& instance);

/// Maximum bipartite matching; adjacency[a] lists right vertices of left
/// vertex a. Returns match_of_left (-1 for unmatched).
std::vector<int> maximum_matching(const std::vector<std::vector<int>>& adjacency,
                                  int right_count);

}  // namespace wef

#endif  // WEF_SPECIALIZED_HPP
