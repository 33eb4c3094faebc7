#include "wef/exact.hpp"

#include <limits>
#include <string>
#include <vector>

#include "wef/model.hpp"

namespace wef {
namespace {

using Mask = unsigned;

constexpr Mask bit(Concept c) { return 1u << concept_index(c); }
constexpr Mask kAllMask = 0b111u;

// Row-major copy of the instance with the bookkeeping needed to evaluate
// envy incrementally: value[i * n + j] = u_i(bundle of j) over the resources
// assigned so far.
class SearchState {
 public:
  explicit SearchState(const Instance& instance)
      : n_(instance.agents()),
        m_(instance.resources()),
        weight_(instance.weights().data(),
                instance.weights().data() + instance.agents()),
        util_(static_cast<std::size_t>(n_) * m_),
        value_(static_cast<std::size_t>(n_) * n_, 0),
        remaining_(static_cast<std::size_t>(n_), 0) {
    all_positive_ = true;
    for (int i = 0; i < n_; ++i) {
      for (int r = 0; r < m_; ++r) {
        const Scalar u = instance.utility(i, r);
        util_[idx(i, r)] = u;
        remaining_[static_cast<std::size_t>(i)] += u;
        if (u <= 0) all_positive_ = false;
      }
    }
  }

  int agents() const { return n_; }
  int resources() const { return m_; }
  bool all_positive() const { return all_positive_; }

  Scalar utility(int i, int r) const { return util_[idx(i, r)]; }
  Scalar value(int i, int j) const {
    return value_[static_cast<std::size_t>(i) * n_ + j];
  }
  Scalar remaining(int i) const { return remaining_[static_cast<std::size_t>(i)]; }
  Scalar weight(int i) const { return weight_[static_cast<std::size_t>(i)]; }

  void give(int r, int agent) {
    for (int i = 0; i < n_; ++i) {
      const Scalar u = util_[idx(i, r)];
      value_[static_cast<std::size_t>(i) * n_ + agent] += u;
      remaining_[static_cast<std::size_t>(i)] -= u;
    }
  }
  void take_back(int r, int agent) {
    for (int i = 0; i < n_; ++i) {
      const Scalar u = util_[idx(i, r)];
      value_[static_cast<std::size_t>(i) * n_ + agent] -= u;
      remaining_[static_cast<std::size_t>(i)] += u;
    }
  }

  // Concepts under which the current (complete) assignment is fair.
  Mask fair_mask(Mask wanted) const {
    Mask ok = wanted;
    for (int i = 0; i < n_ && ok; ++i) {
      for (int j = 0; j < n_ && ok; ++j) {
        if (i == j) continue;
        const auto cond =
            compare_bundles(value(i, i), value(i, j), weight(i), weight(j));
        for (Concept c : kAllConcepts) {
          if ((ok & bit(c)) && cond.envies(c)) ok &= ~bit(c);
        }
      }
    }
    return ok;
  }

  // Concepts for which some pair is certain to envy in every completion of
  // the current partial assignment: the best the envious agent can do is
  // receive all unassigned resources.
  Mask doomed_mask(Mask wanted) const {
    Mask doomed = 0;
    for (int i = 0; i < n_; ++i) {
      const Scalar best_own = value(i, i) + remaining(i);
      for (int j = 0; j < n_; ++j) {
        if (i == j) continue;
        const auto cond =
            compare_bundles(best_own, value(i, j), weight(i), weight(j));
        for (Concept c : kAllConcepts) {
          if ((wanted & bit(c)) && cond.envies(c)) doomed |= bit(c);
        }
        if ((doomed & wanted) == wanted) return doomed;
      }
    }
    return doomed;
  }

 private:
  std::size_t idx(int i, int r) const {
    return static_cast<std::size_t>(i) * m_ + r;
  }

  int n_;
  int m_;
  bool all_positive_ = true;
  std::vector<Scalar> weight_;
  std::vector<Scalar> util_;
  std::vector<Scalar> value_;
  std::vector<Scalar> remaining_;
};

class AllocationSearch {
 public:
  AllocationSearch(const Instance& instance, const SearchLimits& limits)
      : state_(instance),
        limits_(limits),
        owner_(static_cast<std::size_t>(instance.resources()), -1),
        size_(static_cast<std::size_t>(instance.agents()), 0),
        empty_agents_(instance.agents()) {}

  ConceptExistence run(Mask wanted) {
    active_ = wanted;
    dfs(0, wanted);
    return std::move(result_);
  }

 private:
  void dfs(int r, Mask mask) {
    mask &= active_;
    if (!mask) return;
    const int m = state_.resources();
    if (r == m) {
      if (++leaves_ > limits_.leaf_budget) {
        throw BudgetExceeded("exact allocation search exceeded the leaf budget of " +
                             std::to_string(limits_.leaf_budget));
      }
      record(state_.fair_mask(mask));
      return;
    }
    if (limits_.prune) {
      // With strictly positive utilities an agent left empty envies any
      // nonempty agent under every concept.
      if (state_.all_positive() && empty_agents_ > m - r) return;
      mask &= ~state_.doomed_mask(mask);
      if (!mask) return;
    }
    for (int a = 0; a < state_.agents(); ++a) {
      assign(r, a);
      dfs(r + 1, mask);
      unassign(r, a);
      mask &= active_;
      if (!mask) return;
    }
  }

  void assign(int r, int a) {
    owner_[static_cast<std::size_t>(r)] = a;
    if (size_[static_cast<std::size_t>(a)]++ == 0) --empty_agents_;
    state_.give(r, a);
  }
  void unassign(int r, int a) {
    owner_[static_cast<std::size_t>(r)] = -1;
    if (--size_[static_cast<std::size_t>(a)] == 0) ++empty_agents_;
    state_.take_back(r, a);
  }

  void record(Mask fair) {
    for (Concept c : kAllConcepts) {
      if (fair & bit(c)) {
        result_.exists[concept_index(c)] = true;
        result_.witness[concept_index(c)] =
            Allocation::from_owners(owner_, state_.agents());
        active_ &= ~bit(c);
      }
    }
  }

  SearchState state_;
  SearchLimits limits_;
  std::vector<int> owner_;
  std::vector<int> size_;
  int empty_agents_;
  Mask active_ = 0;
  std::uint64_t leaves_ = 0;
  ConceptExistence result_;
};

class HouseSearch {
 public:
  HouseSearch(const Instance& instance, const SearchLimits& limits)
      : state_(instance),
        limits_(limits),
        house_(static_cast<std::size_t>(instance.agents()), -1),
        used_(static_cast<std::size_t>(instance.resources()), false) {}

  ConceptExistence run(Mask wanted) {
    active_ = wanted;
    dfs(0, wanted);
    return std::move(result_);
  }

 private:
  // Bundles are final once assigned, so envy among the first k agents is
  // exact and a pair that envies removes the concept from the subtree.
  Mask check_new_agent(int k, Mask mask) const {
    const int hk = house_[static_cast<std::size_t>(k)];
    for (int j = 0; j < k && mask; ++j) {
      const int hj = house_[static_cast<std::size_t>(j)];
      const auto kj = compare_bundles(state_.utility(k, hk), state_.utility(k, hj),
                                      state_.weight(k), state_.weight(j));
      const auto jk = compare_bundles(state_.utility(j, hj), state_.utility(j, hk),
                                      state_.weight(j), state_.weight(k));
      for (Concept c : kAllConcepts) {
        if ((mask & bit(c)) && (kj.envies(c) || jk.envies(c))) mask &= ~bit(c);
      }
    }
    return mask;
  }

  Mask full_check(Mask mask) const {
    for (int k = 1; k < state_.agents() && mask; ++k) {
      mask = check_new_agent(k, mask);
    }
    return mask;
  }

  void dfs(int k, Mask mask) {
    mask &= active_;
    if (!mask) return;
    const int n = state_.agents();
    if (k == n) {
      if (++leaves_ > limits_.leaf_budget) {
        throw BudgetExceeded("exact house search exceeded the leaf budget of " +
                             std::to_string(limits_.leaf_budget));
      }
      record(limits_.prune ? mask : full_check(mask));
      return;
    }
    for (int r = 0; r < state_.resources(); ++r) {
      if (used_[static_cast<std::size_t>(r)]) continue;
      used_[static_cast<std::size_t>(r)] = true;
      house_[static_cast<std::size_t>(k)] = r;
      const Mask child = limits_.prune ? check_new_agent(k, mask) : mask;
      dfs(k + 1, child);
      used_[static_cast<std::size_t>(r)] = false;
      house_[static_cast<std::size_t>(k)] = -1;
      mask &= active_;
      if (!mask) return;
    }
  }

  void record(Mask fair) {
    for (Concept c : kAllConcepts) {
      if (fair & bit(c)) {
        std::vector<Bundle> bundles;
        bundles.reserve(house_.size());
        for (int h : house_) bundles.push_back({h});
        result_.exists[concept_index(c)] = true;
        result_.witness[concept_index(c)] = Allocation(std::move(bundles));
        active_ &= ~bit(c);
      }
    }
  }

  SearchState state_;
  SearchLimits limits_;
  std::vector<int> house_;
  std::vector<bool> used_;
  Mask active_ = 0;
  std::uint64_t leaves_ = 0;
  ConceptExistence result_;
};

void require_house_shape(const Instance& instance) {
  if (instance.agents() > instance.resources()) {
    throw PreconditionError("house allocation needs n <= m (n = " +
                            std::to_string(instance.agents()) + ", m = " +
                            std::to_string(instance.resources()) + ")");
  }
}

}  // namespace

std::optional<Allocation> find_allocation_exact(const Instance& instance,
                                                Concept c,
                                                const SearchLimits& limits) {
  auto found = AllocationSearch(instance, limits).run(bit(c));
  return std::move(found.witness[concept_index(c)]);
}

std::optional<Allocation> find_house_exact(const Instance& instance, Concept c,
                                           const SearchLimits& limits) {
  require_house_shape(instance);
  auto found = HouseSearch(instance, limits).run(bit(c));
  return std::move(found.witness[concept_index(c)]);
}

ConceptExistence allocation_existence(const Instance& instance,
                                      const SearchLimits& limits) {
  return AllocationSearch(instance, limits).run(kAllMask);
}

ConceptExistence house_existence(const Instance& instance,
                                 const SearchLimits& limits) {
  if (instance.agents() > instance.resources()) return {};
  return HouseSearch(instance, limits).run(kAllMask);
}

ExistenceProfile existence_profile(const Instance& instance,
                                   const SearchLimits& limits) {
  return {allocation_existence(instance, limits),
          house_existence(instance, limits)};
}

std::uint64_t allocation_leaf_count(int agents, int resources) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (int r = 0; r < resources; ++r) {
    if (count > kMax / static_cast<std::uint64_t>(agents)) return kMax;
    count *= static_cast<std::uint64_t>(agents);
  }
  return count;
}

std::uint64_t house_leaf_count(int agents, int resources) {
  if (agents > resources) return 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (int k = 0; k < agents; ++k) {
    const auto f = static_cast<std::uint64_t>(resources - k);
    if (count > kMax / f) return kMax;
    count *= f;
  }
  return count;
}

}  // namespace wef
