#ifndef WEF_GEN_HPP
#define WEF_GEN_HPP

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "wef/types.hpp"

namespace wef {

/// SplitMix64 (Steele, Lea, Flood 2014):
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// Streams are fixed by the seed on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform on [lo, hi] by rejection sampling of next() % span.
  std::uint64_t below(std::uint64_t bound);
  Scalar uniform(Scalar lo, Scalar hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

/// One SplitMix64 output step applied to x (no state).
std::uint64_t mix64(std::uint64_t x);

/// Seed for a sub-stream: folds each part into the base with mix64.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

enum class Culture { IC, SPUP };

std::string_view to_string(Culture c);
Culture parse_culture(std::string_view text);

struct ValueRange {
  Scalar lo = 1;
  Scalar hi = 1;

  bool operator==(const ValueRange&) const = default;
};

struct GenConfig {
  int agents = 5;
  int resources = 8;
  Culture culture = Culture::IC;
  ValueRange utility{1, 10000};
  ValueRange weight{1, 100};
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless n >= 1, m >= 0, 1 <= lo <= hi.
  void validate() const;
};

/// Resource indices, most preferred first.
using PreferenceOrder = std::vector<int>;

PreferenceOrder gen_order_ic(int resources, SplitMix64& rng);

/// Peak uniform on the axis 0 < 1 < ... < m-1, then repeatedly the left or
/// right neighbour of the covered interval with probability 1/2 each (the
/// only side left once one side is exhausted).
PreferenceOrder gen_order_spup(int resources, SplitMix64& rng);

/// axis lists the objects left to right.
bool is_single_peaked(const PreferenceOrder& order, const PreferenceOrder& axis);

/// Identity axis 0..m-1.
PreferenceOrder identity_axis(int resources);

/// Per agent: a preference order from the culture, m i.i.d. uniform utility
/// values sorted descending and assigned along the order; weights i.i.d.
/// uniform in the weight range.
Instance gen_instance(const GenConfig& config);

/// Order of an agent's utilities, descending, ties by resource index.
PreferenceOrder induced_order(const Instance& instance, int agent);

}  // namespace wef

#endif  // WEF_GEN_HPP
