// Command-line front end: generate, check, solve, reduce, experiment, types.
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "wef/exact.hpp"
#include "wef/experiment.hpp"
#include "wef/gen.hpp"
#include "wef/hardness.hpp"
#include "wef/ilp.hpp"
#include "wef/io.hpp"
#include "wef/model.hpp"
#include "wef/specialized.hpp"

namespace {

using namespace wef;

constexpr int kExitNotFound = 1;
constexpr int kExitError = 2;

// Exit code carried out of a subcommand callback.
struct Exit {
  int code;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

ValueRange parse_range(const std::string& text) {
  const auto dash = text.find('-', 1);
  if (dash == std::string::npos) throw std::invalid_argument("range '" + text + "' is not LO-HI");
  return {std::stoll(text.substr(0, dash)), std::stoll(text.substr(dash + 1))};
}

std::string describe(const Allocation& a) {
  std::ostringstream out;
  for (int i = 0; i < a.agents(); ++i) {
    out << "  a" << i + 1 << ": {";
    for (std::size_t k = 0; k < a.bundle(i).size(); ++k) {
      out << (k ? ", " : "") << "r" << a.bundle(i)[k] + 1;
    }
    out << "}\n";
  }
  return out.str();
}

std::optional<Allocation> solve_with(const Instance& instance, Concept c, ProblemKind kind,
                                     std::string strategy, const SearchLimits& limits,
                                     const std::string& lp_path) {
  const auto pc = classify_preferences(instance);
  const bool house = kind == ProblemKind::House;
  if (strategy == "auto") {
    if (!house && pc.identical && pc.zero_one && c != Concept::SEF) strategy = "dp";
    else if (house && c == Concept::SAEF && pc.zero_one) strategy = "matching";
    else if (house && c == Concept::SAEF && pc.identical) strategy = "dp";
    else strategy = "exact";
  }
  if (strategy == "exact") {
    return house ? find_house_exact(instance, c, limits)
                 : find_allocation_exact(instance, c, limits);
  }
  if (strategy == "dp") {
    if (house) {
      if (c != Concept::SAEF) throw PreconditionError("dp for house allocation supports only SAEF");
      return saef_house_identical_dp(instance);
    }
    if (c == Concept::SAEF) return saef_identical01_dp(instance);
    if (c == Concept::AEF) return aef_identical01(instance);
    throw PreconditionError("dp for complete allocation supports SAEF and AEF only");
  }
  if (strategy == "matching") {
    if (!house || c != Concept::SAEF) {
      throw PreconditionError("matching strategy solves SAEF house allocation only");
    }
    return saef_house_01(instance);
  }
  if (strategy == "ilp") {
    if (house) throw PreconditionError("ilp strategy solves complete allocation only");
    if (c == Concept::SEF) throw PreconditionError("ilp strategy supports SAEF and AEF only");
    const auto types = compute_types(instance);
    const auto model =
        c == Concept::SAEF ? encode_saef_ip(instance, types) : encode_aef_ip(instance, types);
    if (!lp_path.empty()) {
      std::ostringstream lp;
      write_lp(lp, model);
      emit(lp_path, lp.str());
    }
    const auto assignment = solve_ip(model);
    if (!assignment) return std::nullopt;
    return decode_allocation(instance, types, *assignment);
  }
  throw std::invalid_argument("unknown strategy '" + strategy + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for weighted envy-free allocation (SEF, AEF, SAEF)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wef 1.0");

  std::string concept_text = "saef";
  std::string kind_text = "allocation";
  std::uint64_t leaf_budget = SearchLimits{}.leaf_budget;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random instance (JSON)");
  GenConfig gcfg;
  std::string culture_text = "IC", urange = "1-10000", wrange = "1-100", gen_out;
  gen->add_option("-n,--agents", gcfg.agents, "Number of agents")->required();
  gen->add_option("-m,--resources", gcfg.resources, "Number of resources")->required();
  gen->add_option("--culture", culture_text, "IC or SPUP");
  gen->add_option("--utility-range", urange, "LO-HI");
  gen->add_option("--weight-range", wrange, "LO-HI");
  gen->add_option("--seed", gcfg.seed, "64-bit seed");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");
  gen->callback([&] {
    gcfg.culture = parse_culture(culture_text);
    gcfg.utility = parse_range(urange);
    gcfg.weight = parse_range(wrange);
    const auto instance = gen_instance(gcfg);
    nlohmann::json meta{{"culture", std::string(to_string(gcfg.culture))},
                        {"seed", gcfg.seed},
                        {"utility_range", {gcfg.utility.lo, gcfg.utility.hi}},
                        {"weight_range", {gcfg.weight.lo, gcfg.weight.hi}}};
    emit(gen_out, serialize_instance(instance, meta));
  });

  // check
  auto* check = app.add_subcommand("check", "Check an allocation against a fairness concept");
  std::string check_instance, check_allocation;
  check->add_option("instance", check_instance, "Instance JSON")->required();
  check->add_option("allocation", check_allocation, "Allocation JSON")->required();
  check->add_option("--concept", concept_text, "sef, aef or saef");
  check->callback([&] {
    const auto instance = parse_instance(read_file(check_instance));
    const auto allocation = parse_allocation(read_file(check_allocation));
    allocation.validate(instance);
    const Concept c = parse_concept(concept_text);
    const auto report = envy_report(instance, allocation, c);
    std::cout << "concept: " << to_string(c) << "\n"
              << "fair: " << (report.fair() ? "yes" : "no") << "\n"
              << "complete: " << (is_complete(instance, allocation) ? "yes" : "no") << "\n"
              << "house: " << (is_house(instance, allocation) ? "yes" : "no") << "\n";
    for (const auto& p : report.pairs) {
      std::cout << "envy: (" << p.envious + 1 << "," << p.envied + 1 << ") own "
                << p.own_value << " other " << p.other_value << " sum-condition "
                << (p.sum_condition_held ? "held" : "failed") << " avg-condition "
                << (p.avg_condition_held ? "held" : "failed") << "\n";
    }
    throw Exit{report.fair() ? 0 : kExitNotFound};
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Find a fair allocation or report none");
  std::string solve_instance, strategy = "auto", lp_path, solve_out;
  solve->add_option("instance", solve_instance, "Instance JSON")->required();
  solve->add_option("--concept", concept_text, "sef, aef or saef");
  solve->add_option("--kind", kind_text, "allocation or house");
  solve->add_option("--strategy", strategy, "auto, exact, dp, ilp or matching")
      ->check(CLI::IsMember({"auto", "exact", "dp", "ilp", "matching"}));
  solve->add_option("--leaf-budget", leaf_budget, "Leaf budget of the exhaustive search");
  solve->add_option("--dump-lp", lp_path, "Write the integer program (ilp strategy)");
  solve->add_option("-o,--out", solve_out, "Write the witness allocation JSON here");
  solve->callback([&] {
    const auto instance = parse_instance(read_file(solve_instance));
    const Concept c = parse_concept(concept_text);
    const ProblemKind kind = parse_kind(kind_text);
    SearchLimits limits;
    limits.leaf_budget = leaf_budget;
    const auto found = solve_with(instance, c, kind, strategy, limits, lp_path);
    if (!found) {
      std::cout << "none\n";
      throw Exit{kExitNotFound};
    }
    const bool shape = kind == ProblemKind::House ? is_house(instance, *found)
                                                  : is_complete(instance, *found);
    if (!shape || !is_fair(instance, *found, c)) {
      throw std::logic_error("solver returned an allocation that fails verification");
    }
    std::cout << describe(*found);
    std::cout << allocation_to_json(*found).dump() << "\n";
    if (!solve_out.empty()) write_file(solve_out, allocation_to_json(*found).dump(2) + "\n");
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Reduce a 3-CNF formula to SAEF house allocation");
  std::string cnf_path, reduce_out, gadget_out;
  bool verify = false;
  std::int64_t big_m = 0;
  reduce->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
  reduce->add_option("-o,--out", reduce_out, "Instance JSON output (default stdout)");
  reduce->add_option("--gadgets", gadget_out, "GadgetMap JSON output");
  reduce->add_option("--big-m", big_m, "Gadget constant M (default 2n + 4c + 2)");
  reduce->add_flag("--verify", verify, "Check equivalence by brute force within budget");
  reduce->callback([&] {
    std::ifstream in(cnf_path);
    if (!in) throw ParseError("cannot open '" + cnf_path + "'");
    const auto formula = parse_dimacs(in);
    const std::optional<Scalar> m = big_m > 0 ? std::optional<Scalar>(big_m) : std::nullopt;
    const auto reduction = reduce_3sat(formula, m);
    emit(reduce_out, serialize_instance(reduction.instance,
                                        {{"reduction", "3sat"},
                                         {"M", reduction.gadgets.big_m}}));
    if (!gadget_out.empty()) {
      write_file(gadget_out, gadget_map_to_json(reduction.gadgets).dump(2) + "\n");
    }
    if (verify) {
      VerifyOptions options;
      options.big_m = m;
      const bool ok = verify_reduction(formula, options);
      (reduce_out.empty() ? std::cerr : std::cout)
          << "equivalent: " << (ok ? "yes" : "no") << "\n";
      if (!ok) throw Exit{kExitNotFound};
    }
  });

  // experiment
  auto* exp = app.add_subcommand("experiment", "Existence-frequency experiment with CSV output");
  ExperimentConfig ecfg;
  std::vector<std::string> cultures{"IC", "SPUP"}, wranges{"1-100", "101-200"};
  std::string csv_path, exp_urange = "1-10000";
  exp->add_option("--agents", ecfg.agent_counts, "Agent counts")->delimiter(',');
  exp->add_option("-m,--resources", ecfg.resources, "Resources per instance");
  exp->add_option("--trials", ecfg.trials, "Instances per cell");
  exp->add_option("--cultures", cultures, "IC,SPUP")->delimiter(',');
  exp->add_option("--weight-ranges", wranges, "LO-HI list")->delimiter(',');
  exp->add_option("--utility-range", exp_urange, "LO-HI");
  exp->add_option("--kind", kind_text, "allocation or house");
  exp->add_option("--seed", ecfg.seed, "Base seed");
  exp->add_option("--jobs", ecfg.jobs, "Worker threads");
  exp->add_option("--leaf-budget", leaf_budget, "Leaf budget per instance");
  exp->add_option("--out", csv_path, "CSV output (default stdout)");
  exp->add_flag("!--no-cross-check", ecfg.cross_check, "Skip specialized-solver cross-checks");
  exp->callback([&] {
    ecfg.cultures.clear();
    for (const auto& c : cultures) ecfg.cultures.push_back(parse_culture(c));
    ecfg.weight_ranges.clear();
    for (const auto& w : wranges) ecfg.weight_ranges.push_back(parse_range(w));
    ecfg.utility = parse_range(exp_urange);
    ecfg.kind = parse_kind(kind_text);
    ecfg.limits.leaf_budget = leaf_budget;
    ecfg.validate();
    for (int n : ecfg.agent_counts) {
      const auto leaves = ecfg.kind == ProblemKind::Allocation
                              ? allocation_leaf_count(n, ecfg.resources)
                              : house_leaf_count(n, ecfg.resources);
      if (leaves > ecfg.limits.leaf_budget) {
        std::cerr << "warning: n=" << n << " has " << leaves
                  << " unpruned leaves, above the leaf budget; instances may be refused\n";
      }
    }
    const auto report = run_experiment(ecfg, [](const CellResult& c) {
      std::cerr << "done " << to_string(c.culture) << " w " << c.weight.lo << "-" << c.weight.hi
                << " n=" << c.agents << "\n";
    });
    std::ostringstream csv;
    write_csv(csv, report);
    emit(csv_path, csv.str());
    write_summary(csv_path.empty() ? std::cerr : std::cout, report);
  });

  // types
  auto* types = app.add_subcommand("types", "Print the resource type table");
  std::string types_instance;
  types->add_option("instance", types_instance, "Instance JSON")->required();
  types->callback([&] {
    const auto instance = parse_instance(read_file(types_instance));
    const auto table = compute_types(instance);
    std::cout << table.types() << " types over " << instance.resources() << " resources\n";
    for (int t = 0; t < table.types(); ++t) {
      std::cout << "t" << t + 1 << " = (";
      for (int i = 0; i < instance.agents(); ++i) {
        std::cout << (i ? ", " : "") << table.vectors(i, t);
      }
      std::cout << ")  #t = " << table.multiplicity[static_cast<std::size_t>(t)] << "  members {";
      const auto& members = table.members[static_cast<std::size_t>(t)];
      for (std::size_t k = 0; k < members.size(); ++k) {
        std::cout << (k ? ", " : "") << "r" << members[k] + 1;
      }
      std::cout << "}\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
