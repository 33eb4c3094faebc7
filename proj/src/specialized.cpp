#include "wef/specialized.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "wef/exact.hpp"
#include "wef/model.hpp"

namespace wef {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}

void require_house_shape(const Instance& instance) {
  if (instance.agents() > instance.resources()) {
    throw PreconditionError("house allocation needs n <= m (n = " +
                            std::to_string(instance.agents()) + ", m = " +
                            std::to_string(instance.resources()) + ")");
  }
}

// Agents ordered by weight ascending, ties by index.
std::vector<int> agents_by_weight(const Instance& instance) {
  std::vector<int> order(static_cast<std::size_t>(instance.agents()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.weight(a) < instance.weight(b);
  });
  return order;
}

Allocation checked(const Instance& instance, Allocation allocation, Concept c,
                   bool complete, const char* solver) {
  const bool ok = is_fair(instance, allocation, c) &&
                  (!complete || is_complete(instance, allocation));
  if (!ok) {
    throw std::logic_error(std::string(solver) +
                           " produced an allocation that fails verification");
  }
  return allocation;
}

}  // namespace

PreferenceClass classify_preferences(const Instance& instance) {
  const auto& u = instance.utilities();
  PreferenceClass pc;
  pc.zero_one = ((u.array() == 0) || (u.array() == 1)).all();
  pc.identical = true;
  for (Eigen::Index i = 1; i < u.rows() && pc.identical; ++i) {
    pc.identical = (u.row(i) == u.row(0));
  }
  return pc;
}

std::optional<Allocation> aef_identical01(const Instance& instance) {
  const auto pc = classify_preferences(instance);
  require(pc.identical && pc.zero_one,
          "aef_identical01 needs identical 0/1 preferences");
  const int n = instance.agents();
  const int m = instance.resources();

  std::vector<int> ones;
  for (int r = 0; r < m; ++r) {
    if (instance.utility(0, r) == 1) ones.push_back(r);
  }
  const Scalar total_weight = instance.weights().sum();
  const auto m1 = static_cast<Scalar>(ones.size());

  std::vector<int> owner(static_cast<std::size_t>(m), 0);
  std::size_t next = 0;
  for (int a = 0; a < n; ++a) {
    const Wide scaled = Wide{instance.weight(a)} * m1;
    if (scaled % total_weight != 0) return std::nullopt;
    const auto share = static_cast<std::size_t>(scaled / total_weight);
    for (std::size_t s = 0; s < share; ++s) {
      owner[static_cast<std::size_t>(ones[next++])] = a;
    }
  }
  return checked(instance, Allocation::from_owners(owner, n), Concept::AEF,
                 true, "aef_identical01");
}

std::optional<Allocation> saef_identical01_dp(const Instance& instance) {
  const auto pc = classify_preferences(instance);
  require(pc.identical && pc.zero_one,
          "saef_identical01_dp needs identical 0/1 preferences");
  const int n = instance.agents();
  const int m = instance.resources();

  std::vector<int> ones;
  for (int r = 0; r < m; ++r) {
    if (instance.utility(0, r) == 1) ones.push_back(r);
  }
  const int m1 = static_cast<int>(ones.size());
  std::vector<int> owner(static_cast<std::size_t>(m), 0);
  if (m1 == 0) {
    return checked(instance, Allocation::from_owners(owner, n), Concept::SAEF,
                   true, "saef_identical01_dp");
  }
  // Every agent needs at least one one-valued resource once m1 > 0.
  if (n > m1) return std::nullopt;

  const auto order = agents_by_weight(instance);
  const int side = m1 + 1;
  constexpr int kEmpty = -1;
  constexpr int kBase = 0;
  std::vector<int> back(static_cast<std::size_t>(n) * side * side, kEmpty);
  auto cell = [&](int i, int j, int k) -> int& {
    return back[(static_cast<std::size_t>(i) * side + j) * side + k];
  };

  for (int k = 1; k <= m1; ++k) cell(0, k, k) = kBase;
  for (int i = 1; i < n; ++i) {
    const Scalar w_prev = instance.weight(order[static_cast<std::size_t>(i - 1)]);
    const Scalar w_cur = instance.weight(order[static_cast<std::size_t>(i)]);
    for (int j = 1; j <= m1; ++j) {
      for (int k = 1; k < j; ++k) {
        for (int kp = 1; kp <= k; ++kp) {
          if (cell(i - 1, j - k, kp) == kEmpty) continue;
          if (Wide{kp} * w_cur >= Wide{k} * w_prev) {
            cell(i, j, k) = kp;
            break;
          }
        }
      }
    }
  }

  int last = 0;
  for (int k = 1; k <= m1 && !last; ++k) {
    if (cell(n - 1, m1, k) != kEmpty) last = k;
  }
  if (!last) return std::nullopt;

  std::vector<int> count(static_cast<std::size_t>(n), 0);
  int j = m1;
  int k = last;
  for (int i = n - 1; i >= 0; --i) {
    count[static_cast<std::size_t>(i)] = k;
    const int kp = cell(i, j, k);
    j -= k;
    k = kp;
  }

  std::size_t next = 0;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < count[static_cast<std::size_t>(i)]; ++c) {
      owner[static_cast<std::size_t>(ones[next++])] = order[static_cast<std::size_t>(i)];
    }
  }
  return checked(instance, Allocation::from_owners(owner, n), Concept::SAEF,
                 true, "saef_identical01_dp");
}

std::vector<int> maximum_matching(const std::vector<std::vector<int>>& adjacency,
                                  int right_count) {
  const auto left_count = adjacency.size();
  std::vector<int> left_match(left_count, -1);
  std::vector<int> right_match(static_cast<std::size_t>(right_count), -1);
  std::vector<char> visited;

  // Kuhn's augmenting-path search.
  auto augment = [&](auto&& self, int a) -> bool {
    for (int r : adjacency[static_cast<std::size_t>(a)]) {
      if (visited[static_cast<std::size_t>(r)]) continue;
      visited[static_cast<std::size_t>(r)] = 1;
      const int holder = right_match[static_cast<std::size_t>(r)];
      if (holder < 0 || self(self, holder)) {
        left_match[static_cast<std::size_t>(a)] = r;
        right_match[static_cast<std::size_t>(r)] = a;
        return true;
      }
    }
    return false;
  };
  for (std::size_t a = 0; a < left_count; ++a) {
    visited.assign(static_cast<std::size_t>(right_count), 0);
    augment(augment, static_cast<int>(a));
  }
  return left_match;
}

std::optional<Allocation> saef_house_01(const Instance& instance) {
  require(classify_preferences(instance).zero_one,
          "saef_house_01 needs 0/1 preferences");
  require_house_shape(instance);
  const int n = instance.agents();
  const int m = instance.resources();

  // Houses still allowed in a fair allocation. An agent left unmatched by
  // some maximum matching on the pool is unhappy in every fair allocation
  // drawn from the pool, so none of its one-valued houses may be allocated.
  std::vector<char> in_pool(static_cast<std::size_t>(m), 1);
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  std::vector<int> match;
  for (;;) {
    for (int a = 0; a < n; ++a) {
      auto& adj = adjacency[static_cast<std::size_t>(a)];
      adj.clear();
      for (int r = 0; r < m; ++r) {
        if (in_pool[static_cast<std::size_t>(r)] && instance.utility(a, r) == 1) {
          adj.push_back(r);
        }
      }
    }
    match = maximum_matching(adjacency, m);
    std::vector<int> holder(static_cast<std::size_t>(m), -1);
    for (int a = 0; a < n; ++a) {
      if (match[static_cast<std::size_t>(a)] >= 0) {
        holder[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])] = a;
      }
    }

    std::vector<char> exposed(static_cast<std::size_t>(n), 0);
    std::queue<int> frontier;
    for (int a = 0; a < n; ++a) {
      if (match[static_cast<std::size_t>(a)] < 0) {
        exposed[static_cast<std::size_t>(a)] = 1;
        frontier.push(a);
      }
    }
    while (!frontier.empty()) {
      const int a = frontier.front();
      frontier.pop();
      for (int r : adjacency[static_cast<std::size_t>(a)]) {
        const int b = holder[static_cast<std::size_t>(r)];
        if (b >= 0 && !exposed[static_cast<std::size_t>(b)]) {
          exposed[static_cast<std::size_t>(b)] = 1;
          frontier.push(b);
        }
      }
    }

    bool shrunk = false;
    for (int a = 0; a < n; ++a) {
      if (!exposed[static_cast<std::size_t>(a)]) continue;
      for (int r : adjacency[static_cast<std::size_t>(a)]) {
        if (in_pool[static_cast<std::size_t>(r)]) {
          in_pool[static_cast<std::size_t>(r)] = 0;
          shrunk = true;
        }
      }
    }
    if (!shrunk) break;
  }

  const auto pool_size = std::count(in_pool.begin(), in_pool.end(), 1);
  if (pool_size < n) return std::nullopt;

  // Matched agents keep their one-valued house; the rest value every pool
  // house at 0 and take free pool houses in index order.
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  for (int a = 0; a < n; ++a) {
    if (match[static_cast<std::size_t>(a)] >= 0) {
      taken[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])] = 1;
    }
  }
  std::vector<Bundle> bundles(static_cast<std::size_t>(n));
  int next = 0;
  for (int a = 0; a < n; ++a) {
    int h = match[static_cast<std::size_t>(a)];
    if (h < 0) {
      while (!in_pool[static_cast<std::size_t>(next)] ||
             taken[static_cast<std::size_t>(next)]) {
        ++next;
      }
      h = next;
      taken[static_cast<std::size_t>(h)] = 1;
    }
    bundles[static_cast<std::size_t>(a)] = {h};
  }
  Allocation allocation(std::move(bundles));
  if (is_house(instance, allocation) &&
      is_fair(instance, allocation, Concept::SAEF) &&
      is_fair(instance, allocation, Concept::SEF)) {
    return allocation;
  }
  // Unreachable when the matching argument holds; the exhaustive search
  // keeps the answer exact regardless.
  return find_house_exact(instance, Concept::SAEF);
}

std::optional<Allocation> saef_house_identical_dp(const Instance& instance) {
  require(classify_preferences(instance).identical,
          "saef_house_identical_dp needs identical preferences");
  require_house_shape(instance);
  const int n = instance.agents();
  const int m = instance.resources();

  const auto agents = agents_by_weight(instance);
  std::vector<int> houses(static_cast<std::size_t>(m));
  std::iota(houses.begin(), houses.end(), 0);
  std::stable_sort(houses.begin(), houses.end(), [&](int a, int b) {
    return instance.utility(0, a) < instance.utility(0, b);
  });
  auto value = [&](int j) { return instance.utility(0, houses[static_cast<std::size_t>(j)]); };

  constexpr int kEmpty = -1;
  constexpr int kBase = -2;
  std::vector<int> back(static_cast<std::size_t>(n) * m, kEmpty);
  auto cell = [&](int i, int j) -> int& {
    return back[static_cast<std::size_t>(i) * m + j];
  };
  for (int j = 0; j < m; ++j) cell(0, j) = kBase;
  for (int i = 1; i < n; ++i) {
    const Scalar w_prev = instance.weight(agents[static_cast<std::size_t>(i - 1)]);
    const Scalar w_cur = instance.weight(agents[static_cast<std::size_t>(i)]);
    for (int j = i; j < m; ++j) {
      for (int jp = 0; jp < j; ++jp) {
        if (cell(i - 1, jp) == kEmpty) continue;
        if (Wide{value(jp)} * w_cur >= Wide{value(j)} * w_prev) {
          cell(i, j) = jp;
          break;
        }
      }
    }
  }

  int last = kEmpty;
  for (int j = 0; j < m && last == kEmpty; ++j) {
    if (cell(n - 1, j) != kEmpty) last = j;
  }
  if (last == kEmpty) return std::nullopt;

  std::vector<Bundle> bundles(static_cast<std::size_t>(n));
  int j = last;
  for (int i = n - 1; i >= 0; --i) {
    bundles[static_cast<std::size_t>(agents[static_cast<std::size_t>(i)])] = {
        houses[static_cast<std::size_t>(j)]};
    j = cell(i, j);
  }
  Allocation allocation(std::move(bundles));
  if (!is_house(instance, allocation)) {
    throw std::logic_error("saef_house_identical_dp built a non-house allocation");
  }
  return checked(instance, std::move(allocation), Concept::SAEF, false,
                 "saef_house_identical_dp");
}

}  // namespace wef
