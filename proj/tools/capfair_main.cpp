// Command-line surface for the capfair library.
//
// Verbs:
//   solve     compute a fair, efficient two-agent allocation
//   check     evaluate a fairness property / efficiency / preference graphs
//   oracle    exhaustive-search certification on small instances
//   gen       seeded random instance generation
//   fixtures  emit the built-in worked examples
//   lines     export item-line geometry for plotting
//
// Exit codes (stable contract):
//   0  success / property holds
//   1  property does not hold / no allocation found
//   2  schema, validation, feasibility, or parameter error
//   3  instance does not have exactly two agents (where required)
//   4  internal invariant failure (bug, not an input problem)

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capfair/errors.hpp"
#include "capfair/fairness.hpp"
#include "capfair/fixtures.hpp"
#include "capfair/generator.hpp"
#include "capfair/instance.hpp"
#include "capfair/json_io.hpp"
#include "capfair/matching.hpp"
#include "capfair/oracle.hpp"
#include "capfair/rational.hpp"
#include "capfair/solver.hpp"

namespace {

using namespace capfair;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFails = 1;
constexpr int kExitSchema = 2;
constexpr int kExitAgentCount = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SchemaError("cannot read file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw SchemaError("cannot write file: " + path);
  }
  out << content;
}

void print_json(const Json& document) { std::cout << document.dump(2) << "\n"; }

Instance load_instance(const std::string& path) {
  Instance instance = parse_instance_text(read_file(path));
  ValidationReport report = instance.validate();
  if (!report.ok()) {
    std::cerr << emit_validation_report(report).dump(2) << "\n";
    throw SchemaError("invalid instance in " + path);
  }
  return instance;
}

Allocation load_allocation(const std::string& path, const Instance& instance) {
  return parse_allocation_text(read_file(path), instance);
}

// Feasibility gate shared by check/oracle verbs; prints the report and throws
// on violations.
void require_feasible(const Instance& instance, const Allocation& allocation,
                      const std::string& path) {
  ValidationReport report = check_feasibility(instance, allocation);
  if (!report.ok()) {
    std::cerr << emit_validation_report(report).dump(2) << "\n";
    throw SchemaError("infeasible allocation in " + path);
  }
}

struct SolveOptions {
  std::string instance_path;
  std::string out_path;
  std::string trace_path;
  bool certify = false;
  std::uint64_t budget = EnumerationBudget{}.max_allocations;
};

int run_solve(const SolveOptions& opt) {
  Instance instance = load_instance(opt.instance_path);
  if (instance.num_agents() != 2) {
    std::cerr << "solve requires exactly two agents, got "
              << instance.num_agents() << "\n";
    return kExitAgentCount;
  }

  SolveResult result = solve(instance);

  Json summary = Json::object();
  summary["allocation"] = emit_allocation(instance, result.allocation);
  summary["exchanges"] = result.trace.steps.size();
  Json properties = Json::object();
  for (auto property :
       {FairnessProperty::EF, FairnessProperty::EF1, FairnessProperty::EF11}) {
    properties[to_string(property)] =
        check(instance, result.allocation, property).holds;
  }
  summary["properties"] = std::move(properties);

  if (opt.certify) {
    EnumerationBudget budget{opt.budget};
    Instance padded = pad_with_dummies(instance);
    mpz_class total = count_feasible(padded);
    Json oracle = Json::object();
    oracle["feasible_allocations"] = total.get_str();
    if (total > budget.max_allocations) {
      oracle["skipped"] = true;
    } else {
      oracle["pareto_optimal"] =
          is_pareto_optimal(instance, result.allocation, budget);
      PropertySet ef1_only;
      ef1_only.fairness = {FairnessProperty::EF1};
      oracle["ef1_allocation_exists"] =
          find_allocation(instance, ef1_only, budget).has_value();
    }
    summary["oracle"] = std::move(oracle);
  }

  if (!opt.out_path.empty()) {
    write_file(opt.out_path,
               emit_allocation(instance, result.allocation).dump(2) + "\n");
  }
  if (!opt.trace_path.empty()) {
    write_file(opt.trace_path,
               emit_trace(instance, result.trace).dump(2) + "\n");
  }
  print_json(summary);
  return kExitOk;
}

struct CheckOptions {
  std::string instance_path;
  std::string allocation_path;
  std::string property;
  bool partial = false;
  std::uint64_t budget = EnumerationBudget{}.max_allocations;
};

int run_check(const CheckOptions& opt) {
  Instance instance = load_instance(opt.instance_path);
  Allocation allocation = load_allocation(opt.allocation_path, instance);

  if (opt.property == "po") {
    require_feasible(instance, allocation, opt.allocation_path);
    bool holds =
        is_pareto_optimal(instance, allocation, EnumerationBudget{opt.budget});
    Json document = Json::object();
    document["property"] = "po";
    document["holds"] = holds;
    print_json(document);
    return holds ? kExitOk : kExitPropertyFails;
  }

  if (!opt.partial) {
    require_feasible(instance, allocation, opt.allocation_path);
  }

  if (opt.property == "envy-graph" || opt.property == "top-trading") {
    EnvyGraph graph = opt.property == "envy-graph"
                          ? envy_graph(instance, allocation)
                          : top_trading_graph(instance, allocation);
    print_json(emit_envy_graph(instance, graph));
    return kExitOk;
  }

  auto property = fairness_property_from_string(opt.property);
  if (!property) {
    std::cerr << "unknown property: " << opt.property << "\n";
    return kExitSchema;
  }
  FairnessVerdict verdict = check(instance, allocation, *property);
  print_json(emit_verdict(instance, verdict));
  return verdict.holds ? kExitOk : kExitPropertyFails;
}

struct OracleFindOptions {
  std::string instance_path;
  std::vector<std::string> properties;
  std::uint64_t budget = EnumerationBudget{}.max_allocations;
};

int run_oracle_find(const OracleFindOptions& opt) {
  Instance instance = load_instance(opt.instance_path);
  PropertySet wanted;
  for (const std::string& name : opt.properties) {
    if (name == "po") {
      wanted.pareto_optimal = true;
      continue;
    }
    auto property = fairness_property_from_string(name);
    if (!property) {
      std::cerr << "unknown property: " << name << "\n";
      return kExitSchema;
    }
    wanted.fairness.insert(*property);
  }
  auto found =
      find_allocation(instance, wanted, EnumerationBudget{opt.budget});
  Json document = Json::object();
  document["found"] = found.has_value();
  if (found) {
    document["allocation"] = emit_allocation(instance, *found);
  }
  print_json(document);
  return found ? kExitOk : kExitPropertyFails;
}

struct OracleWmaxOptions {
  std::string instance_path;
  std::string weights;  // comma-separated rationals; empty = uniform
  std::uint64_t budget = EnumerationBudget{}.max_allocations;
  std::size_t limit = 10;
};

int run_oracle_wmax(const OracleWmaxOptions& opt) {
  Instance instance = load_instance(opt.instance_path);
  std::vector<Rational> weights;
  if (opt.weights.empty()) {
    weights = WeightVector::uniform(instance.num_agents()).values();
  } else {
    std::stringstream stream(opt.weights);
    std::string token;
    while (std::getline(stream, token, ',')) {
      weights.push_back(parse_rational(token));
    }
  }
  WeightVector w{std::move(weights)};
  if (w.size() != instance.num_agents()) {
    throw std::invalid_argument("expected " +
                                std::to_string(instance.num_agents()) +
                                " weights, got " + std::to_string(w.size()));
  }

  WMaximalResult result =
      brute_force_w_maximal(instance, w, EnumerationBudget{opt.budget});
  Instance padded = pad_with_dummies(instance);
  Json document = Json::object();
  document["max_weighted_sum"] = rational_to_json(result.max_weighted_sum);
  document["argmax_count"] = result.argmax.size();
  document["enumerated"] = result.enumerated;
  Json argmax = Json::array();
  for (std::size_t i = 0; i < result.argmax.size() && i < opt.limit; ++i) {
    argmax.push_back(emit_allocation(padded, result.argmax[i]));
  }
  document["argmax"] = std::move(argmax);
  print_json(document);
  return kExitOk;
}

int run_oracle_po(const std::string& instance_path,
                  const std::string& allocation_path, std::uint64_t budget) {
  Instance instance = load_instance(instance_path);
  Allocation allocation = load_allocation(allocation_path, instance);
  require_feasible(instance, allocation, allocation_path);
  bool holds = is_pareto_optimal(instance, allocation,
                                 EnumerationBudget{budget});
  Json document = Json::object();
  document["pareto_optimal"] = holds;
  print_json(document);
  return holds ? kExitOk : kExitPropertyFails;
}

int run_oracle_cycles(const std::string& instance_path,
                      const std::string& from_path,
                      const std::string& to_path) {
  Instance instance = load_instance(instance_path);
  Allocation from = load_allocation(from_path, instance);
  Allocation to = load_allocation(to_path, instance);
  auto cycles = exchange_cycle_decomposition(instance, from, to);
  Json document = Json::object();
  document["count"] = cycles.size();
  document["cycles"] = emit_cycles(instance, cycles);
  print_json(document);
  return kExitOk;
}

int run_oracle_count(const std::string& instance_path) {
  Instance instance = load_instance(instance_path);
  Instance padded = pad_with_dummies(instance);
  Json document = Json::object();
  document["feasible_allocations"] = count_feasible(padded).get_str();
  print_json(document);
  return kExitOk;
}

struct GenOptions {
  std::uint64_t seed = 0;
  int agents = 2;
  int categories = 0;  // 0 = derive from items list
  std::vector<long> items;
  std::vector<long> caps;
  std::string cap_policy = "min";
  long umin = -9;
  long umax = 9;
  bool same_sign = false;
  std::string out_path;
};

int run_gen(const GenOptions& opt) {
  GeneratorConfig config;
  config.seed = opt.seed;
  config.num_agents = opt.agents;
  config.items_per_category = opt.items;
  if (opt.categories > 0) {
    if (opt.items.size() == 1) {
      config.items_per_category.assign(opt.categories, opt.items.front());
    } else if (static_cast<int>(opt.items.size()) != opt.categories) {
      throw std::invalid_argument(
          "--categories disagrees with the --items list length");
    }
  }
  if (!opt.caps.empty()) {
    config.capacities = opt.caps;
  }
  auto policy = capacity_policy_from_string(opt.cap_policy);
  if (!policy) {
    throw std::invalid_argument("unknown capacity policy: " + opt.cap_policy);
  }
  config.capacity_policy = *policy;
  config.utility_min = opt.umin;
  config.utility_max = opt.umax;
  config.same_sign = opt.same_sign;

  Instance instance = generate_instance(config);
  Json document = emit_instance(instance);
  if (opt.out_path.empty()) {
    print_json(document);
  } else {
    write_file(opt.out_path, document.dump(2) + "\n");
  }
  return kExitOk;
}

int run_fixtures(const std::string& name, const std::string& out_dir) {
  auto id = fixture_from_name(name);
  if (!id) {
    std::cerr << "unknown fixture: " << name << " (expected one of";
    for (FixtureId known : all_fixture_ids()) {
      std::cerr << " " << to_string(known);
    }
    std::cerr << ")\n";
    return kExitSchema;
  }
  Fixture fixture = make_fixture(*id);

  if (out_dir.empty()) {
    Json document = Json::object();
    document["instance"] = emit_instance(fixture.instance);
    Json allocations = Json::object();
    for (const auto& [snapshot, allocation] : fixture.allocations) {
      allocations[snapshot] = emit_allocation(fixture.instance, allocation);
    }
    document["allocations"] = std::move(allocations);
    print_json(document);
    return kExitOk;
  }

  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + to_string(*id);
  write_file(base + ".json", emit_instance(fixture.instance).dump(2) + "\n");
  std::cout << base << ".json\n";
  for (const auto& [snapshot, allocation] : fixture.allocations) {
    const std::string path = base + "_" + snapshot + ".json";
    write_file(path,
               emit_allocation(fixture.instance, allocation).dump(2) + "\n");
    std::cout << path << "\n";
  }
  return kExitOk;
}

struct LinesOptions {
  std::string instance_path;
  bool csv = false;
  std::string out_path;
};

int run_lines(const LinesOptions& opt) {
  Instance instance = load_instance(opt.instance_path);
  if (instance.num_agents() != 2) {
    std::cerr << "lines requires exactly two agents, got "
              << instance.num_agents() << "\n";
    return kExitAgentCount;
  }

  struct Intersection {
    int item_a;
    int item_b;
    int category;
    LineIntersection where;
    DifferenceRatio ratio;
  };
  std::vector<Intersection> intersections;
  for (int c = 0; c < instance.num_categories(); ++c) {
    const auto& items = instance.category_items(c);
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        LineIntersection where =
            line_intersection(instance, items[i], items[j]);
        if (where.kind == LineIntersection::Kind::parallel) continue;
        intersections.push_back(
            {items[i], items[j], c, where,
             difference_ratio(instance, 1, 0, items[i], items[j])});
      }
    }
  }

  std::string output;
  if (opt.csv) {
    std::ostringstream csv;
    csv << "item,slope,intercept\n";
    for (int o = 0; o < instance.num_items(); ++o) {
      ItemLine line = item_line(instance, o);
      csv << instance.item_id(o) << "," << format_rational(line.slope) << ","
          << format_rational(line.intercept) << "\n";
    }
    csv << "\nitem_a,item_b,category,kind,w1,ratio\n";
    for (const auto& entry : intersections) {
      const bool point = entry.where.kind == LineIntersection::Kind::point;
      csv << instance.item_id(entry.item_a) << ","
          << instance.item_id(entry.item_b) << ","
          << instance.category_id(entry.category) << ","
          << (point ? "point" : "coincident") << ","
          << (point ? format_rational(entry.where.w1) : "") << ","
          << (point ? entry.ratio.str() : "") << "\n";
    }
    output = csv.str();
  } else {
    Json lines = Json::array();
    for (int o = 0; o < instance.num_items(); ++o) {
      ItemLine line = item_line(instance, o);
      Json entry = Json::object();
      entry["item"] = instance.item_id(o);
      entry["slope"] = rational_to_json(line.slope);
      entry["intercept"] = rational_to_json(line.intercept);
      lines.push_back(std::move(entry));
    }
    Json crossings = Json::array();
    for (const auto& entry : intersections) {
      Json row = Json::object();
      row["item_a"] = instance.item_id(entry.item_a);
      row["item_b"] = instance.item_id(entry.item_b);
      row["category"] = instance.category_id(entry.category);
      if (entry.where.kind == LineIntersection::Kind::point) {
        row["kind"] = "point";
        row["w1"] = rational_to_json(entry.where.w1);
        row["ratio"] = entry.ratio.str();
      } else {
        row["kind"] = "coincident";
      }
      crossings.push_back(std::move(row));
    }
    Json document = Json::object();
    document["lines"] = std::move(lines);
    document["intersections"] = std::move(crossings);
    output = document.dump(2) + "\n";
  }

  if (opt.out_path.empty()) {
    std::cout << output;
  } else {
    write_file(opt.out_path, output);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Fair and efficient allocation of goods and chores under category "
      "capacities (two-agent solver, checkers, and exhaustive oracle)"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Compute a fair, efficient allocation");
  solve_cmd->add_option("instance", solve_opt.instance_path, "Instance JSON")
      ->required();
  solve_cmd->add_option("--out", solve_opt.out_path, "Write allocation JSON");
  solve_cmd->add_option("--trace", solve_opt.trace_path,
                        "Write exchange trace JSON");
  solve_cmd->add_flag("--certify", solve_opt.certify,
                      "Also certify via the exhaustive oracle");
  solve_cmd->add_option("--budget", solve_opt.budget,
                        "Oracle enumeration budget");

  CheckOptions check_opt;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "Evaluate a property of an allocation");
  check_cmd->add_option("instance", check_opt.instance_path, "Instance JSON")
      ->required();
  check_cmd
      ->add_option("allocation", check_opt.allocation_path, "Allocation JSON")
      ->required();
  check_cmd
      ->add_option("--property", check_opt.property,
                   "ef | ef1 | ef11 | ef11u | po | envy-graph | top-trading")
      ->required();
  check_cmd->add_flag("--partial", check_opt.partial,
                      "Skip the feasibility gate (mid-run states)");
  check_cmd->add_option("--budget", check_opt.budget,
                        "Oracle enumeration budget (po only)");

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Exhaustive-search certification");
  oracle_cmd->require_subcommand(1);

  OracleFindOptions find_opt;
  CLI::App* find_cmd = oracle_cmd->add_subcommand(
      "find", "First allocation satisfying the requested properties");
  find_cmd->add_option("instance", find_opt.instance_path, "Instance JSON")
      ->required();
  find_cmd->add_option("--property", find_opt.properties,
                       "ef | ef1 | ef11 | ef11u | po (repeatable)");
  find_cmd->add_option("--budget", find_opt.budget, "Enumeration budget");

  OracleWmaxOptions wmax_opt;
  CLI::App* wmax_cmd = oracle_cmd->add_subcommand(
      "wmax", "Brute-force maximum weighted utilitarian welfare");
  wmax_cmd->add_option("instance", wmax_opt.instance_path, "Instance JSON")
      ->required();
  wmax_cmd->add_option("--weights", wmax_opt.weights,
                       "Comma-separated rational weights (default: uniform)");
  wmax_cmd->add_option("--budget", wmax_opt.budget, "Enumeration budget");
  wmax_cmd->add_option("--limit", wmax_opt.limit,
                       "Maximum number of argmax allocations to print");

  std::string po_instance, po_allocation;
  std::uint64_t po_budget = EnumerationBudget{}.max_allocations;
  CLI::App* po_cmd =
      oracle_cmd->add_subcommand("po", "Certify Pareto optimality");
  po_cmd->add_option("instance", po_instance, "Instance JSON")->required();
  po_cmd->add_option("allocation", po_allocation, "Allocation JSON")
      ->required();
  po_cmd->add_option("--budget", po_budget, "Enumeration budget");

  std::string cycles_instance, cycles_from, cycles_to;
  CLI::App* cycles_cmd = oracle_cmd->add_subcommand(
      "cycles", "Decompose an allocation change into exchange cycles");
  cycles_cmd->add_option("instance", cycles_instance, "Instance JSON")
      ->required();
  cycles_cmd->add_option("from", cycles_from, "Starting allocation JSON")
      ->required();
  cycles_cmd->add_option("to", cycles_to, "Target allocation JSON")
      ->required();

  std::string count_instance;
  CLI::App* count_cmd =
      oracle_cmd->add_subcommand("count", "Count feasible allocations");
  count_cmd->add_option("instance", count_instance, "Instance JSON")
      ->required();

  GenOptions gen_opt;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--seed", gen_opt.seed, "RNG seed");
  gen_cmd->add_option("--agents", gen_opt.agents, "Number of agents");
  gen_cmd->add_option("--categories", gen_opt.categories,
                      "Number of categories (with a single --items value)");
  gen_cmd
      ->add_option("--items", gen_opt.items,
                   "Items per category, comma-separated")
      ->required()
      ->delimiter(',');
  gen_cmd
      ->add_option("--caps", gen_opt.caps,
                   "Explicit capacities, comma-separated")
      ->delimiter(',');
  gen_cmd->add_option("--cap-policy", gen_opt.cap_policy,
                      "min | max | random (ignored when --caps is given)");
  gen_cmd->add_option("--umin", gen_opt.umin, "Smallest utility value");
  gen_cmd->add_option("--umax", gen_opt.umax, "Largest utility value");
  gen_cmd->add_flag("--same-sign", gen_opt.same_sign,
                    "Per (agent, category), draw all-goods or all-chores");
  gen_cmd->add_option("--out", gen_opt.out_path, "Write instance JSON");

  std::string fixture_name, fixture_out;
  CLI::App* fixtures_cmd =
      app.add_subcommand("fixtures", "Emit a built-in worked example");
  fixtures_cmd
      ->add_option("id", fixture_name,
                   "intro | table2 | table3 | table4 | table5 | table6")
      ->required();
  fixtures_cmd->add_option("--out", fixture_out,
                           "Directory to write instance/allocation files");

  LinesOptions lines_opt;
  CLI::App* lines_cmd = app.add_subcommand(
      "lines", "Export item-line coefficients and intersections");
  lines_cmd->add_option("instance", lines_opt.instance_path, "Instance JSON")
      ->required();
  lines_cmd->add_flag("--csv", lines_opt.csv, "CSV instead of JSON");
  lines_cmd->add_option("--out", lines_opt.out_path, "Write to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_opt);
    if (check_cmd->parsed()) return run_check(check_opt);
    if (find_cmd->parsed()) return run_oracle_find(find_opt);
    if (wmax_cmd->parsed()) return run_oracle_wmax(wmax_opt);
    if (po_cmd->parsed()) return run_oracle_po(po_instance, po_allocation,
                                               po_budget);
    if (cycles_cmd->parsed())
      return run_oracle_cycles(cycles_instance, cycles_from, cycles_to);
    if (count_cmd->parsed()) return run_oracle_count(count_instance);
    if (gen_cmd->parsed()) return run_gen(gen_opt);
    if (fixtures_cmd->parsed()) return run_fixtures(fixture_name, fixture_out);
    if (lines_cmd->parsed()) return run_lines(lines_opt);
    std::cerr << "no command selected\n";
    return kExitSchema;
  } catch (const InternalInvariantError& e) {
    Json diagnostic = Json::object();
    diagnostic["error"] = "internal_invariant";
    diagnostic["message"] = e.what();
    std::cerr << diagnostic.dump(2) << "\n";
    return kExitInternal;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const InvalidInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitInternal;
  }
}
