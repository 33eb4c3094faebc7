#ifndef WEF_EXACT_HPP
#define WEF_EXACT_HPP

#include <array>
#include <cstdint>
#include <optional>

#include "wef/types.hpp"

namespace wef {

struct SearchLimits {
  std::uint64_t leaf_budget = 200'000'000;
  bool prune = true;
};

/// Exhaustive search over all n^m assignments (resources in index order,
/// agents tried in index order). Returns the first complete allocation fair
/// under the concept, or nullopt. Throws BudgetExceeded past the leaf budget.
std::optional<Allocation> find_allocation_exact(const Instance& instance,
                                                Concept c,
                                                const SearchLimits& limits = {});

/// Exhaustive search over injective agent -> resource maps. Throws
/// PreconditionError when n > m.
std::optional<Allocation> find_house_exact(const Instance& instance, Concept c,
                                           const SearchLimits& limits = {});

inline constexpr std::size_t concept_index(Concept c) {
  return static_cast<std::size_t>(c);
}

/// Existence of a fair allocation for each concept in one setting, with the
/// first witness found for each.
struct ConceptExistence {
  std::array<bool, 3> exists{};
  std::array<std::optional<Allocation>, 3> witness;

  bool operator[](Concept c) const { return exists[concept_index(c)]; }
};

struct ExistenceProfile {
  ConceptExistence allocation;  // complete allocations
  ConceptExistence house;       // house allocations; all false when n > m
};

/// All three concepts evaluated during one enumeration.
ConceptExistence allocation_existence(const Instance& instance,
                                      const SearchLimits& limits = {});
ConceptExistence house_existence(const Instance& instance,
                                 const SearchLimits& limits = {});

ExistenceProfile existence_profile(const Instance& instance,
                                   const SearchLimits& limits = {});

/// Number of leaves an unpruned enumeration would visit (saturating).
std::uint64_t allocation_leaf_count(int agents, int resources);
std::uint64_t house_leaf_count(int agents, int resources);

}  // namespace wef

#endif  // WEF_EXACT_HPP
