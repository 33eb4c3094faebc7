#include "wef/ilp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

namespace wef {

TypeTable compute_types(const Instance& instance) {
  const int n = instance.agents();
  const int m = instance.resources();
  TypeTable table;
  table.type_of.assign(static_cast<std::size_t>(m), -1);

  std::map<std::vector<Scalar>, int> index;
  std::vector<std::vector<Scalar>> columns;
  for (int r = 0; r < m; ++r) {
    std::vector<Scalar> column(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = instance.utility(i, r);
    auto [it, inserted] = index.try_emplace(column, static_cast<int>(columns.size()));
    if (inserted) {
      columns.push_back(column);
      table.multiplicity.push_back(0);
      table.members.emplace_back();
    }
    const int t = it->second;
    table.type_of[static_cast<std::size_t>(r)] = t;
    ++table.multiplicity[static_cast<std::size_t>(t)];
    table.members[static_cast<std::size_t>(t)].push_back(r);
  }

  table.vectors.resize(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t t = 0; t < columns.size(); ++t) {
    for (int i = 0; i < n; ++i) {
      table.vectors(i, static_cast<Eigen::Index>(t)) = columns[t][static_cast<std::size_t>(i)];
    }
  }
  return table;
}

int IpModel::y(int i, int j, int which) const {
  const int pair = i * (agents - 1) + (j < i ? j : j - 1);
  return agents * types + 2 * pair + (which - 1);
}

namespace {

struct Row {
  std::vector<std::pair<int, Scalar>> terms;
  Sense sense;
  Scalar rhs;
  std::string name;
};

class ModelBuilder {
 public:
  ModelBuilder(const Instance& instance, const TypeTable& types, bool saef) {
    model_.agents = instance.agents();
    model_.types = types.types();
    model_.has_disjunction = saef;
    for (int i = 0; i < model_.agents; ++i) {
      for (int t = 0; t < model_.types; ++t) {
        model_.variables.push_back(
            {"x_" + std::to_string(i + 1) + "_" + std::to_string(t + 1), 0,
             types.multiplicity[static_cast<std::size_t>(t)]});
      }
    }
    if (saef) {
      for (int i = 0; i < model_.agents; ++i) {
        for (int j = 0; j < model_.agents; ++j) {
          if (i == j) continue;
          const auto suffix = std::to_string(i + 1) + "_" + std::to_string(j + 1);
          model_.variables.push_back({"y1_" + suffix, 0, 1});
          model_.variables.push_back({"y2_" + suffix, 0, 1});
        }
      }
    }
  }

  IpModel& model() { return model_; }

  void add(Row row) { rows_.push_back(std::move(row)); }

  IpModel finish() {
    const auto cols = static_cast<Eigen::Index>(model_.variables.size());
    model_.coefficients = UtilityMatrix::Zero(static_cast<Eigen::Index>(rows_.size()), cols);
    model_.rhs.resize(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      for (auto [col, coef] : rows_[k].terms) model_.coefficients(row, col) += coef;
      model_.senses.push_back(rows_[k].sense);
      model_.rhs(row) = rows_[k].rhs;
      model_.row_names.push_back(rows_[k].name);
    }
    return std::move(model_);
  }

 private:
  IpModel model_;
  std::vector<Row> rows_;
};

void add_type_sums(ModelBuilder& b, const TypeTable& types) {
  const auto& model = b.model();
  for (int t = 0; t < model.types; ++t) {
    Row row{{}, Sense::Equal, types.multiplicity[static_cast<std::size_t>(t)],
            "type_" + std::to_string(t + 1)};
    for (int i = 0; i < model.agents; ++i) row.terms.emplace_back(model.x(i, t), 1);
    b.add(std::move(row));
  }
}

// Terms of own_scale * u_i(own) - other_scale * u_i(bundle of j).
void add_difference(Row& row, const IpModel& model, const TypeTable& types,
                    int i, int j, Scalar own_scale, Scalar other_scale,
                    Scalar sign) {
  for (int t = 0; t < model.types; ++t) {
    const Scalar value = types.vectors(i, t);
    if (value == 0) continue;
    row.terms.emplace_back(model.x(i, t), sign * own_scale * value);
    row.terms.emplace_back(model.x(j, t), -sign * other_scale * value);
  }
}

}  // namespace

IpModel encode_saef_ip(const Instance& instance, const TypeTable& types) {
  ModelBuilder b(instance, types, true);
  b.model().big_m = instance.utilities().sum() * instance.weights().sum();
  const Scalar big_m = b.model().big_m;
  add_type_sums(b, types);
  const int n = instance.agents();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto suffix = std::to_string(i + 1) + "_" + std::to_string(j + 1);
      const auto& model = b.model();
      // M y1 - (u_i(own) - u_i(other)) <= M
      Row sum_row{{{model.y(i, j, 1), big_m}}, Sense::LessEqual, big_m, "sum_" + suffix};
      add_difference(sum_row, model, types, i, j, 1, 1, -1);
      // M y2 - (w_j u_i(own) - w_i u_i(other)) <= M
      Row avg_row{{{model.y(i, j, 2), big_m}}, Sense::LessEqual, big_m, "avg_" + suffix};
      add_difference(avg_row, model, types, i, j, instance.weight(j),
                     instance.weight(i), -1);
      Row either{{{model.y(i, j, 1), 1}, {model.y(i, j, 2), 1}},
                 Sense::GreaterEqual, 1, "either_" + suffix};
      b.add(std::move(sum_row));
      b.add(std::move(avg_row));
      b.add(std::move(either));
    }
  }
  return b.finish();
}

IpModel encode_aef_ip(const Instance& instance, const TypeTable& types) {
  ModelBuilder b(instance, types, false);
  add_type_sums(b, types);
  const int n = instance.agents();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Row row{{}, Sense::GreaterEqual, 0,
              "avg_" + std::to_string(i + 1) + "_" + std::to_string(j + 1)};
      add_difference(row, b.model(), types, i, j, instance.weight(j),
                     instance.weight(i), 1);
      b.add(std::move(row));
    }
  }
  return b.finish();
}

bool satisfies(const IpModel& model, const IpAssignment& assignment) {
  if (assignment.values.size() != model.variable_count()) return false;
  for (int k = 0; k < model.variable_count(); ++k) {
    const Scalar v = assignment.values(k);
    if (v < model.variables[static_cast<std::size_t>(k)].lower ||
        v > model.variables[static_cast<std::size_t>(k)].upper) {
      return false;
    }
  }
  for (int r = 0; r < model.row_count(); ++r) {
    Wide activity = 0;
    for (int k = 0; k < model.variable_count(); ++k) {
      activity += Wide{model.coefficients(r, k)} * assignment.values(k);
    }
    const Wide b = model.rhs(r);
    switch (model.senses[static_cast<std::size_t>(r)]) {
      case Sense::Equal:
        if (activity != b) return false;
        break;
      case Sense::LessEqual:
        if (activity > b) return false;
        break;
      case Sense::GreaterEqual:
        if (activity < b) return false;
        break;
    }
  }
  return true;
}

namespace {

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Scalar clamp_scalar(Wide v) {
  constexpr Wide lo = std::numeric_limits<Scalar>::min();
  constexpr Wide hi = std::numeric_limits<Scalar>::max();
  return static_cast<Scalar>(std::clamp(v, lo, hi));
}

class DepthFirstSearch {
 public:
  DepthFirstSearch(const IpModel& model, std::uint64_t budget, std::uint64_t& nodes)
      : model_(model), budget_(budget), nodes_(nodes) {
    const int rows = model.row_count();
    const int cols = model.variable_count();
    terms_.resize(static_cast<std::size_t>(rows));
    std::vector<int> participation(static_cast<std::size_t>(cols), 0);
    for (int r = 0; r < rows; ++r) {
      for (int k = 0; k < cols; ++k) {
        if (model.coefficients(r, k) != 0) {
          terms_[static_cast<std::size_t>(r)].emplace_back(k, model.coefficients(r, k));
          ++participation[static_cast<std::size_t>(k)];
        }
      }
    }
    order_.resize(static_cast<std::size_t>(cols));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return participation[static_cast<std::size_t>(a)] >
             participation[static_cast<std::size_t>(b)];
    });
  }

  std::optional<IpAssignment> run() {
    std::vector<Scalar> lo, hi;
    for (const auto& v : model_.variables) {
      lo.push_back(v.lower);
      hi.push_back(v.upper);
    }
    if (!propagate(lo, hi)) return std::nullopt;
    return dfs(lo, hi);
  }

 private:
  // Tightens [lo, hi] to a fixpoint of single-row interval reasoning.
  // Returns false when some row cannot be satisfied inside the box.
  bool propagate(std::vector<Scalar>& lo, std::vector<Scalar>& hi) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int r = 0; r < model_.row_count(); ++r) {
        const auto& terms = terms_[static_cast<std::size_t>(r)];
        Wide min_act = 0, max_act = 0;
        for (auto [k, a] : terms) {
          const auto kk = static_cast<std::size_t>(k);
          min_act += a > 0 ? Wide{a} * lo[kk] : Wide{a} * hi[kk];
          max_act += a > 0 ? Wide{a} * hi[kk] : Wide{a} * lo[kk];
        }
        const Wide b = model_.rhs(r);
        const Sense sense = model_.senses[static_cast<std::size_t>(r)];
        const bool upper = sense != Sense::GreaterEqual;  // activity <= b
        const bool lower = sense != Sense::LessEqual;     // activity >= b
        if ((upper && min_act > b) || (lower && max_act < b)) return false;

        for (auto [k, a] : terms) {
          const auto kk = static_cast<std::size_t>(k);
          Scalar new_lo = lo[kk], new_hi = hi[kk];
          if (upper) {
            const Wide own_min = a > 0 ? Wide{a} * lo[kk] : Wide{a} * hi[kk];
            const Wide slack = b - (min_act - own_min);  // a * x <= slack
            if (a > 0) new_hi = std::min(new_hi, clamp_scalar(floor_div(slack, a)));
            else new_lo = std::max(new_lo, clamp_scalar(ceil_div(slack, a)));
          }
          if (lower) {
            const Wide own_max = a > 0 ? Wide{a} * hi[kk] : Wide{a} * lo[kk];
            const Wide need = b - (max_act - own_max);  // a * x >= need
            if (a > 0) new_lo = std::max(new_lo, clamp_scalar(ceil_div(need, a)));
            else new_hi = std::min(new_hi, clamp_scalar(floor_div(need, a)));
          }
          if (new_lo > new_hi) return false;
          if (new_lo != lo[kk] || new_hi != hi[kk]) {
            lo[kk] = new_lo;
            hi[kk] = new_hi;
            changed = true;
            // Activities are stale now; restart the row scan.
            break;
          }
        }
      }
    }
    return true;
  }

  std::optional<IpAssignment> dfs(const std::vector<Scalar>& lo,
                                  const std::vector<Scalar>& hi) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("integer feasibility search exceeded the node budget of " +
                           std::to_string(budget_));
    }
    int branch = -1;
    for (int k : order_) {
      if (lo[static_cast<std::size_t>(k)] < hi[static_cast<std::size_t>(k)]) {
        branch = k;
        break;
      }
    }
    if (branch < 0) {
      IpAssignment a;
      a.values = Eigen::Map<const ScalarVector>(lo.data(), static_cast<Eigen::Index>(lo.size()));
      if (satisfies(model_, a)) return a;
      return std::nullopt;
    }
    const auto bk = static_cast<std::size_t>(branch);
    for (Scalar v = lo[bk]; v <= hi[bk]; ++v) {
      auto child_lo = lo;
      auto child_hi = hi;
      child_lo[bk] = child_hi[bk] = v;
      if (!propagate(child_lo, child_hi)) continue;
      if (auto found = dfs(child_lo, child_hi)) return found;
    }
    return std::nullopt;
  }

  const IpModel& model_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::vector<std::vector<std::pair<int, Scalar>>> terms_;
  std::vector<int> order_;
};

}  // namespace

std::optional<IpAssignment> DepthFirstBackend::solve(const IpModel& model) {
  nodes_ = 0;
  return DepthFirstSearch(model, node_budget_, nodes_).run();
}

std::optional<IpAssignment> solve_ip(const IpModel& model,
                                     std::uint64_t node_budget) {
  DepthFirstBackend backend(node_budget);
  return backend.solve(model);
}

Allocation decode_allocation(const Instance& instance, const TypeTable& types,
                             const IpAssignment& assignment) {
  const int n = instance.agents();
  const int t_count = types.types();
  if (assignment.values.size() < static_cast<Eigen::Index>(n) * t_count) {
    throw std::invalid_argument("assignment has too few variables to decode");
  }
  std::vector<Bundle> bundles(static_cast<std::size_t>(n));
  for (int t = 0; t < t_count; ++t) {
    const auto& members = types.members[static_cast<std::size_t>(t)];
    std::size_t next = 0;
    for (int i = 0; i < n; ++i) {
      const Scalar count = assignment.values(i * t_count + t);
      if (count < 0 || next + static_cast<std::size_t>(count) > members.size()) {
        throw std::invalid_argument("type " + std::to_string(t + 1) +
                                    " is over-allocated by the assignment");
      }
      for (Scalar c = 0; c < count; ++c) {
        bundles[static_cast<std::size_t>(i)].push_back(members[next++]);
      }
    }
    if (next != members.size()) {
      throw std::invalid_argument("type " + std::to_string(t + 1) +
                                  " is not fully allocated by the assignment");
    }
  }
  return Allocation(std::move(bundles));
}

namespace {

std::string to_text(Scalar v) { return std::to_string(v); }

}  // namespace

void write_lp(std::ostream& out, const IpModel& model) {
  out << "\\ " << (model.has_disjunction ? "SAEF" : "AEF")
      << " feasibility model: " << model.agents << " agents, " << model.types
      << " resource types, big-M " << model.big_m << "\n";
  out << "Minimize\n obj: 1\nSubject To\n";
  for (int r = 0; r < model.row_count(); ++r) {
    out << " " << model.row_names[static_cast<std::size_t>(r)] << ":";
    bool any = false;
    for (int k = 0; k < model.variable_count(); ++k) {
      const Scalar a = model.coefficients(r, k);
      if (a == 0) continue;
      out << (a < 0 ? " - " : (any ? " + " : " ")) << to_text(a < 0 ? -a : a)
          << " " << model.variables[static_cast<std::size_t>(k)].name;
      any = true;
    }
    if (!any) out << " 0";
    switch (model.senses[static_cast<std::size_t>(r)]) {
      case Sense::Equal:
        out << " = ";
        break;
      case Sense::LessEqual:
        out << " <= ";
        break;
      case Sense::GreaterEqual:
        out << " >= ";
        break;
    }
    out << model.rhs(r) << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) {
    out << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
  }
  out << "Generals\n";
  for (const auto& v : model.variables) out << " " << v.name << "\n";
  out << "End\n";
}

}  // namespace wef
