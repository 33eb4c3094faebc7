#include "wef/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace wef {

std::string_view to_string(Concept c) {
  switch (c) {
    case Concept::SEF:
      return "SEF";
    case Concept::AEF:
      return "AEF";
    case Concept::SAEF:
      return "SAEF";
  }
  return "?";
}

Concept parse_concept(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "sef" || lower == "sum") return Concept::SEF;
  if (lower == "aef" || lower == "avg") return Concept::AEF;
  if (lower == "saef" || lower == "sumavg") return Concept::SAEF;
  throw std::invalid_argument("unknown fairness concept '" + std::string(text) +
                              "' (expected sef, aef or saef)");
}

Instance::Instance(WeightVector weights, UtilityMatrix utilities)
    : weights_(std::move(weights)), utilities_(std::move(utilities)) {
  if (weights_.size() < 1) {
    throw std::invalid_argument("instance needs at least one agent");
  }
  if (utilities_.rows() != weights_.size()) {
    throw std::invalid_argument(
        "utility matrix has " + std::to_string(utilities_.rows()) +
        " rows but there are " + std::to_string(weights_.size()) + " agents");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) <= 0) {
      throw std::invalid_argument("weight of agent " + std::to_string(i + 1) +
                                  " must be positive");
    }
  }
  for (Eigen::Index i = 0; i < utilities_.rows(); ++i) {
    for (Eigen::Index r = 0; r < utilities_.cols(); ++r) {
      if (utilities_(i, r) < 0) {
        throw std::invalid_argument(
            "utility of agent " + std::to_string(i + 1) + " for resource " +
            std::to_string(r + 1) + " is negative");
      }
    }
  }
}

bool Instance::operator==(const Instance& other) const {
  return weights_.size() == other.weights_.size() &&
         utilities_.cols() == other.utilities_.cols() &&
         weights_ == other.weights_ && utilities_ == other.utilities_;
}

Allocation::Allocation(std::vector<Bundle> bundles)
    : bundles_(std::move(bundles)) {
  std::vector<int> seen;
  for (auto& b : bundles_) {
    std::sort(b.begin(), b.end());
    for (int r : b) {
      if (r < 0) throw std::out_of_range("negative resource index");
      seen.push_back(r);
    }
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument("bundles are not pairwise disjoint");
  }
}

Allocation Allocation::from_owners(const std::vector<int>& owner, int agents) {
  std::vector<Bundle> bundles(static_cast<std::size_t>(agents));
  for (std::size_t r = 0; r < owner.size(); ++r) {
    if (owner[r] < 0) continue;
    if (owner[r] >= agents) throw std::out_of_range("owner index out of range");
    bundles[static_cast<std::size_t>(owner[r])].push_back(static_cast<int>(r));
  }
  return Allocation(std::move(bundles));
}

std::vector<int> Allocation::owners(int resources) const {
  std::vector<int> owner(static_cast<std::size_t>(resources), -1);
  for (int a = 0; a < agents(); ++a) {
    for (int r : bundles_[static_cast<std::size_t>(a)]) {
      if (r >= resources) throw std::out_of_range("resource index out of range");
      owner[static_cast<std::size_t>(r)] = a;
    }
  }
  return owner;
}

Allocation Allocation::with_swapped(int a, int b) const {
  auto bundles = bundles_;
  std::swap(bundles.at(static_cast<std::size_t>(a)),
            bundles.at(static_cast<std::size_t>(b)));
  return Allocation(std::move(bundles));
}

void Allocation::validate(const Instance& instance) const {
  if (agents() != instance.agents()) {
    throw std::out_of_range("allocation has " + std::to_string(agents()) +
                            " bundles but the instance has " +
                            std::to_string(instance.agents()) + " agents");
  }
  for (const auto& b : bundles_) {
    for (int r : b) {
      if (r >= instance.resources()) {
        throw std::out_of_range("resource " + std::to_string(r + 1) +
                                " out of range (m = " +
                                std::to_string(instance.resources()) + ")");
      }
    }
  }
}

}  // namespace wef
