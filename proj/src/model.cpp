#include "wef/model.hpp"

#include <string>

namespace wef {

Scalar bundle_utility(const Instance& instance, int agent,
                      std::span<const int> bundle) {
  if (agent < 0 || agent >= instance.agents()) {
    throw std::out_of_range("agent index " + std::to_string(agent) +
                            " out of range");
  }
  Scalar total = 0;
  for (int r : bundle) {
    if (r < 0 || r >= instance.resources()) {
      throw std::out_of_range("resource index " + std::to_string(r) +
                              " out of range");
    }
    total += instance.utility(agent, r);
  }
  return total;
}

namespace {

EnvyConditions conditions(const Instance& instance,
                          const Allocation& allocation, int i, int j) {
  const Scalar own = bundle_utility(instance, i, allocation.bundle(i));
  const Scalar other = bundle_utility(instance, i, allocation.bundle(j));
  return compare_bundles(own, other, instance.weight(i), instance.weight(j));
}

}  // namespace

bool envies(const Instance& instance, const Allocation& allocation, int i,
            int j, Concept c) {
  allocation.validate(instance);
  if (i == j) return false;
  return conditions(instance, allocation, i, j).envies(c);
}

bool is_fair(const Instance& instance, const Allocation& allocation,
             Concept c) {
  allocation.validate(instance);
  const int n = instance.agents();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && conditions(instance, allocation, i, j).envies(c)) {
        return false;
      }
    }
  }
  return true;
}

bool is_complete(const Instance& instance, const Allocation& allocation) {
  allocation.validate(instance);
  for (int owner : allocation.owners(instance.resources())) {
    if (owner < 0) return false;
  }
  return true;
}

bool is_house(const Instance& instance, const Allocation& allocation) {
  allocation.validate(instance);
  for (const auto& b : allocation.bundles()) {
    if (b.size() != 1) return false;
  }
  return true;
}

EnvyReport envy_report(const Instance& instance, const Allocation& allocation,
                       Concept c) {
  allocation.validate(instance);
  EnvyReport report;
  report.concept_ = c;
  const int n = instance.agents();
  for (int i = 0; i < n; ++i) {
    const Scalar own = bundle_utility(instance, i, allocation.bundle(i));
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Scalar other = bundle_utility(instance, i, allocation.bundle(j));
      const auto cond =
          compare_bundles(own, other, instance.weight(i), instance.weight(j));
      if (cond.envies(c)) {
        report.pairs.push_back(
            {i, j, own, other, !cond.sum_envy, !cond.avg_envy});
      }
    }
  }
  return report;
}

}  // namespace wef
