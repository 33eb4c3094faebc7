#ifndef WEF_TESTS_FIXTURES_HPP
#define WEF_TESTS_FIXTURES_HPP

#include <initializer_list>
#include <vector>

#include "wef/types.hpp"

namespace fixtures {

inline wef::Instance make(std::initializer_list<wef::Scalar> weights,
                          std::initializer_list<std::initializer_list<wef::Scalar>> rows) {
  const auto n = static_cast<Eigen::Index>(weights.size());
  const auto m = rows.size() ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  wef::WeightVector w(n);
  wef::UtilityMatrix u(n, m);
  Eigen::Index i = 0;
  for (auto x : weights) w(i++) = x;
  i = 0;
  for (const auto& row : rows) {
    Eigen::Index r = 0;
    for (auto x : row) u(i, r++) = x;
    ++i;
  }
  return wef::Instance(w, u);
}

/// Every agent shares the same utility row.
inline wef::Instance identical(const std::vector<wef::Scalar>& weights,
                               const std::vector<wef::Scalar>& row) {
  const auto n = static_cast<Eigen::Index>(weights.size());
  const auto m = static_cast<Eigen::Index>(row.size());
  wef::WeightVector w(n);
  wef::UtilityMatrix u(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = weights[static_cast<std::size_t>(i)];
    for (Eigen::Index r = 0; r < m; ++r) u(i, r) = row[static_cast<std::size_t>(r)];
  }
  return wef::Instance(w, u);
}

// Two resources, weights (1, 2), every utility equal to `value`.
inline wef::Instance equal_pair(wef::Scalar value = 1) {
  return make({1, 2}, {{value, value}, {value, value}});
}

// Two resources, weights (1, 10); r1 worth 5 and r2 worth 10 to both.
inline wef::Instance weighted_pair() { return make({1, 10}, {{5, 10}, {5, 10}}); }

inline wef::Allocation alloc(std::vector<wef::Bundle> bundles) {
  return wef::Allocation(std::move(bundles));
}

}  // namespace fixtures

#endif
