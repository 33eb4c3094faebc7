#include "wef/gen.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <string>

namespace wef {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Largest multiple of bound representable in 64 bits.
  const std::uint64_t limit = bound == 0 ? 0 : (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= limit) return x % bound;
  }
}

Scalar SplitMix64::uniform(Scalar lo, Scalar hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<Scalar>(below(span));
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(base + 0x9E3779B97F4A7C15ULL);
  for (std::uint64_t p : parts) h = mix64(h ^ (p + 0x9E3779B97F4A7C15ULL));
  return h;
}

std::string_view to_string(Culture c) { return c == Culture::IC ? "IC" : "SPUP"; }

Culture parse_culture(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  if (upper == "IC") return Culture::IC;
  if (upper == "SPUP") return Culture::SPUP;
  throw std::invalid_argument("unknown culture '" + std::string(text) +
                              "' (expected IC or SPUP)");
}

void GenConfig::validate() const {
  if (agents < 1) throw std::invalid_argument("need at least one agent");
  if (resources < 0) throw std::invalid_argument("resource count must be non-negative");
  if (utility.lo < 1 || utility.hi < utility.lo) {
    throw std::invalid_argument("utility range must satisfy 1 <= lo <= hi");
  }
  if (weight.lo < 1 || weight.hi < weight.lo) {
    throw std::invalid_argument("weight range must satisfy 1 <= lo <= hi");
  }
}

PreferenceOrder gen_order_ic(int resources, SplitMix64& rng) {
  PreferenceOrder order = identity_axis(resources);
  for (int i = resources - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return order;
}

PreferenceOrder gen_order_spup(int resources, SplitMix64& rng) {
  PreferenceOrder order;
  if (resources <= 0) return order;
  order.reserve(static_cast<std::size_t>(resources));
  const int peak = static_cast<int>(rng.below(static_cast<std::uint64_t>(resources)));
  order.push_back(peak);
  int left = peak - 1;
  int right = peak + 1;
  while (left >= 0 || right < resources) {
    bool go_left;
    if (left < 0) go_left = false;
    else if (right >= resources) go_left = true;
    else go_left = rng.coin();
    order.push_back(go_left ? left-- : right++);
  }
  return order;
}

PreferenceOrder identity_axis(int resources) {
  PreferenceOrder axis(static_cast<std::size_t>(std::max(resources, 0)));
  std::iota(axis.begin(), axis.end(), 0);
  return axis;
}

bool is_single_peaked(const PreferenceOrder& order, const PreferenceOrder& axis) {
  if (order.size() != axis.size()) return false;
  if (order.empty()) return true;
  // Equivalent to the pairwise definition: every prefix of the order is a
  // contiguous interval of the axis.
  std::vector<int> position(axis.size(), -1);
  for (std::size_t p = 0; p < axis.size(); ++p) {
    const int obj = axis[p];
    if (obj < 0 || static_cast<std::size_t>(obj) >= axis.size() ||
        position[static_cast<std::size_t>(obj)] >= 0) {
      return false;
    }
    position[static_cast<std::size_t>(obj)] = static_cast<int>(p);
  }
  int lo = -1, hi = -1;
  std::vector<bool> seen(axis.size(), false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int obj = order[k];
    if (obj < 0 || static_cast<std::size_t>(obj) >= axis.size() ||
        seen[static_cast<std::size_t>(obj)]) {
      return false;
    }
    seen[static_cast<std::size_t>(obj)] = true;
    const int p = position[static_cast<std::size_t>(obj)];
    if (k == 0) {
      lo = hi = p;
    } else if (p == lo - 1) {
      lo = p;
    } else if (p == hi + 1) {
      hi = p;
    } else {
      return false;
    }
  }
  return true;
}

Instance gen_instance(const GenConfig& config) {
  config.validate();
  SplitMix64 rng(config.seed);
  const int n = config.agents;
  const int m = config.resources;
  UtilityMatrix u(n, m);
  WeightVector w(n);
  std::vector<Scalar> values(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    const auto order = config.culture == Culture::IC ? gen_order_ic(m, rng)
                                                     : gen_order_spup(m, rng);
    for (auto& v : values) v = rng.uniform(config.utility.lo, config.utility.hi);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (int k = 0; k < m; ++k) {
      u(i, order[static_cast<std::size_t>(k)]) = values[static_cast<std::size_t>(k)];
    }
  }
  for (int i = 0; i < n; ++i) w(i) = rng.uniform(config.weight.lo, config.weight.hi);
  return Instance(std::move(w), std::move(u));
}

PreferenceOrder induced_order(const Instance& instance, int agent) {
  PreferenceOrder order = identity_axis(instance.resources());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.utility(agent, a) > instance.utility(agent, b);
  });
  return order;
}

}  // namespace wef
