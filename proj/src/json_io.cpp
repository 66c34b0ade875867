#include "capfair/json_io.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "capfair/errors.hpp"

namespace capfair {

namespace {

void require_object(const Json& value, const std::string& context) {
  if (!value.is_object()) {
    throw SchemaError(context + ": expected an object");
  }
}

void require_array(const Json& value, const std::string& context) {
  if (!value.is_array()) {
    throw SchemaError(context + ": expected an array");
  }
}

std::string require_string(const Json& value, const std::string& context) {
  if (!value.is_string()) {
    throw SchemaError(context + ": expected a string");
  }
  return value.get<std::string>();
}

long require_integer(const Json& value, const std::string& context) {
  if (!value.is_number_integer()) {
    throw SchemaError(context + ": expected an integer");
  }
  return value.get<long>();
}

// Rejects any field not in `allowed`, so typos surface instead of being
// silently ignored.
void reject_unknown_fields(const Json& object, const std::string& context,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(context + ": unknown field '" + key + "'");
    }
  }
}

std::vector<std::string> parse_string_array(const Json& value,
                                            const std::string& context) {
  require_array(value, context);
  std::vector<std::string> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(
        require_string(value[i], context + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Json rational_to_json(const Rational& value) {
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) {
    return Json(value.get_num().get_si());
  }
  return Json(format_rational(value));
}

Rational rational_from_json(const Json& value, const std::string& context) {
  try {
    if (value.is_number_integer()) {
      // dump() yields the exact decimal digits for both signed and unsigned
      // integers, so this path is lossless regardless of magnitude.
      return parse_rational(value.dump());
    }
    if (value.is_string()) {
      return parse_rational(value.get<std::string>());
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(context + ": " + e.what());
  }
  throw SchemaError(context +
                    ": expected an integer or a \"p/q\" string, got " +
                    std::string(value.type_name()));
}

Instance parse_instance(const Json& document) {
  require_object(document, "instance");
  reject_unknown_fields(document, "instance",
                        {"agents", "categories", "utilities"});
  for (const char* field : {"agents", "categories", "utilities"}) {
    if (!document.contains(field)) {
      throw SchemaError(std::string("instance: missing field '") + field + "'");
    }
  }

  std::vector<std::string> agents =
      parse_string_array(document["agents"], "instance.agents");

  const Json& categories_json = document["categories"];
  require_array(categories_json, "instance.categories");
  std::vector<Instance::CategorySpec> categories;
  for (std::size_t c = 0; c < categories_json.size(); ++c) {
    const std::string context =
        "instance.categories[" + std::to_string(c) + "]";
    const Json& cat = categories_json[c];
    require_object(cat, context);
    reject_unknown_fields(cat, context, {"id", "capacity", "items"});
    for (const char* field : {"id", "capacity", "items"}) {
      if (!cat.contains(field)) {
        throw SchemaError(context + ": missing field '" + field + "'");
      }
    }
    Instance::CategorySpec spec;
    spec.id = require_string(cat["id"], context + ".id");
    spec.capacity = require_integer(cat["capacity"], context + ".capacity");
    spec.items = parse_string_array(cat["items"], context + ".items");
    categories.push_back(std::move(spec));
  }

  // Collect the declared ids up front so utility keys can be checked strictly
  // even though Instance itself tolerates (and merely reports) unknown keys.
  std::set<std::string> agent_ids(agents.begin(), agents.end());
  std::set<std::string> item_ids;
  for (const auto& spec : categories) {
    item_ids.insert(spec.items.begin(), spec.items.end());
  }

  const Json& utilities_json = document["utilities"];
  require_object(utilities_json, "instance.utilities");
  Instance::UtilityTable utilities;
  for (const auto& [agent, row] : utilities_json.items()) {
    if (!agent_ids.count(agent)) {
      throw SchemaError("instance.utilities: unknown agent '" + agent + "'");
    }
    const std::string context = "instance.utilities." + agent;
    require_object(row, context);
    for (const auto& [item, value] : row.items()) {
      if (!item_ids.count(item)) {
        throw SchemaError(context + ": unknown item '" + item + "'");
      }
      utilities[agent][item] =
          rational_from_json(value, context + "." + item);
    }
  }

  return Instance(std::move(agents), std::move(categories), utilities);
}

Instance parse_instance_text(const std::string& text) {
  Json document;
  try {
    document = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("instance: invalid JSON: ") + e.what());
  }
  return parse_instance(document);
}

Json emit_instance(const Instance& instance) {
  Json document = Json::object();

  Json agents = Json::array();
  for (int a = 0; a < instance.num_agents(); ++a) {
    agents.push_back(instance.agent_id(a));
  }
  document["agents"] = std::move(agents);

  Json categories = Json::array();
  for (int c = 0; c < instance.num_categories(); ++c) {
    Json cat = Json::object();
    cat["id"] = instance.category_id(c);
    cat["capacity"] = instance.capacity(c);
    Json items = Json::array();
    for (int o : instance.category_items(c)) {
      if (instance.is_dummy(o)) continue;  // padding is an internal detail
      items.push_back(instance.item_id(o));
    }
    cat["items"] = std::move(items);
    categories.push_back(std::move(cat));
  }
  document["categories"] = std::move(categories);

  Json utilities = Json::object();
  for (int a = 0; a < instance.num_agents(); ++a) {
    Json row = Json::object();
    for (int o = 0; o < instance.num_items(); ++o) {
      if (instance.is_dummy(o)) continue;
      row[instance.item_id(o)] = rational_to_json(instance.utility(a, o));
    }
    utilities[instance.agent_id(a)] = std::move(row);
  }
  document["utilities"] = std::move(utilities);

  return document;
}

Allocation parse_allocation(const Json& document, const Instance& instance) {
  require_object(document, "allocation");
  reject_unknown_fields(document, "allocation", {"bundles"});
  if (!document.contains("bundles")) {
    throw SchemaError("allocation: missing field 'bundles'");
  }
  const Json& bundles = document["bundles"];
  require_object(bundles, "allocation.bundles");

  Allocation allocation(instance.num_agents(), instance.num_items());
  for (const auto& [agent_id, items] : bundles.items()) {
    auto agent = instance.find_agent(agent_id);
    if (!agent) {
      throw SchemaError("allocation.bundles: unknown agent '" + agent_id +
                        "'");
    }
    const std::string context = "allocation.bundles." + agent_id;
    for (const std::string& item_id :
         parse_string_array(items, context)) {
      auto item = instance.find_item(item_id);
      if (!item) {
        throw SchemaError(context + ": unknown item '" + item_id + "'");
      }
      if (allocation.owner(*item) != Allocation::kUnassigned) {
        throw SchemaError(context + ": item '" + item_id +
                          "' appears in more than one bundle");
      }
      allocation.assign(*item, *agent);
    }
  }
  return allocation;
}

Allocation parse_allocation_text(const std::string& text,
                                 const Instance& instance) {
  Json document;
  try {
    document = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("allocation: invalid JSON: ") + e.what());
  }
  return parse_allocation(document, instance);
}

Json emit_allocation(const Instance& instance, const Allocation& allocation) {
  Json bundles = Json::object();
  for (int a = 0; a < instance.num_agents(); ++a) {
    Json items = Json::array();
    for (int o : allocation.bundle(a)) {
      if (instance.is_dummy(o)) continue;
      items.push_back(instance.item_id(o));
    }
    bundles[instance.agent_id(a)] = std::move(items);
  }
  Json document = Json::object();
  document["bundles"] = std::move(bundles);
  return document;
}

Json emit_validation_report(const ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& violation : report.violations) {
    Json entry = Json::object();
    entry["code"] = violation.code;
    entry["message"] = violation.message;
    violations.push_back(std::move(entry));
  }
  Json document = Json::object();
  document["ok"] = report.ok();
  document["violations"] = std::move(violations);
  return document;
}

Json emit_verdict(const Instance& instance, const FairnessVerdict& verdict) {
  Json pairs = Json::array();
  for (const auto& cert : verdict.certificates) {
    Json entry = Json::object();
    entry["envious"] = instance.agent_id(cert.envious);
    entry["envied"] = instance.agent_id(cert.envied);
    entry["satisfied"] = cert.satisfied;
    entry["removed_from_own"] =
        cert.removed_from_own ? Json(instance.item_id(*cert.removed_from_own))
                              : Json(nullptr);
    entry["removed_from_other"] =
        cert.removed_from_other
            ? Json(instance.item_id(*cert.removed_from_other))
            : Json(nullptr);
    pairs.push_back(std::move(entry));
  }
  Json document = Json::object();
  document["property"] = to_string(verdict.property);
  document["holds"] = verdict.holds;
  document["pairs"] = std::move(pairs);
  return document;
}

Json emit_envy_graph(const Instance& instance, const EnvyGraph& graph) {
  Json agents = Json::array();
  for (int a = 0; a < graph.num_agents; ++a) {
    agents.push_back(instance.agent_id(a));
  }
  Json edges = Json::array();
  for (const auto& [from, to] : graph.edges) {
    Json edge = Json::object();
    edge["source"] = instance.agent_id(from);
    edge["target"] = instance.agent_id(to);
    edges.push_back(std::move(edge));
  }
  Json sinks = Json::array();
  for (int a : graph.sinks()) {
    sinks.push_back(instance.agent_id(a));
  }
  Json document = Json::object();
  document["agents"] = std::move(agents);
  document["edges"] = std::move(edges);
  document["sinks"] = std::move(sinks);
  document["has_cycle"] = graph.has_cycle();
  return document;
}

Json emit_trace(const Instance& original, const SolveTrace& trace) {
  Json document = Json::object();
  document["renamed"] = trace.renamed;
  Json order = Json::array();
  for (int role = 0; role < 2; ++role) {
    order.push_back(original.agent_id(trace.orientation[role]));
  }
  document["agent_order"] = std::move(order);
  document["initial"] = emit_allocation(trace.padded, trace.initial);
  Json steps = Json::array();
  for (const auto& step : trace.steps) {
    Json entry = Json::object();
    Json exchange = Json::object();
    exchange["from_first_bundle"] = trace.padded.item_id(step.pair.item_in_a1);
    exchange["from_second_bundle"] = trace.padded.item_id(step.pair.item_in_a2);
    exchange["category"] = trace.padded.category_id(step.pair.category);
    exchange["ratio"] = step.pair.ratio.str();
    entry["exchange"] = std::move(exchange);
    entry["allocation"] = emit_allocation(trace.padded, step.after);
    entry["fair_after"] = step.ef11_after;
    steps.push_back(std::move(entry));
  }
  document["steps"] = std::move(steps);
  document["final"] = emit_allocation(trace.padded, trace.final_padded);
  return document;
}

Json emit_cycles(const Instance& instance,
                 const std::vector<ExchangeCycle>& cycles) {
  Json out = Json::array();
  for (const auto& cycle : cycles) {
    Json entry = Json::object();
    entry["category"] = instance.category_id(cycle.category);
    Json agents = Json::array();
    for (int a : cycle.agents) agents.push_back(instance.agent_id(a));
    Json items = Json::array();
    for (int o : cycle.items) items.push_back(instance.item_id(o));
    entry["agents"] = std::move(agents);
    entry["items"] = std::move(items);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace capfair
