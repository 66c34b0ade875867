#pragma once

#include <string>

#include <json.hpp>

#include "capfair/fairness.hpp"
#include "capfair/instance.hpp"
#include "capfair/oracle.hpp"
#include "capfair/solver.hpp"

namespace capfair {

using Json = nlohmann::ordered_json;

// Instance documents:
//   {"agents": ["a1", ...],
//    "categories": [{"id": "c1", "capacity": 2, "items": ["o1", ...]}, ...],
//    "utilities": {"a1": {"o1": -3, "o2": "1/2", ...}, ...}}
//
// Allocation documents:
//   {"bundles": {"a1": ["o1", ...], "a2": [...], ...}}
//
// Parsing is strict: unknown fields, wrong types, duplicate ids, references
// to undeclared agents/items, and non-rational numbers (floats) all raise
// SchemaError with a message naming the offending field.  Utilities accept
// integers or exact "p/q" strings; emission uses plain integers whenever the
// denominator is 1.

Instance parse_instance(const Json& document);
Instance parse_instance_text(const std::string& text);
Json emit_instance(const Instance& instance);

Allocation parse_allocation(const Json& document, const Instance& instance);
Allocation parse_allocation_text(const std::string& text,
                                 const Instance& instance);
Json emit_allocation(const Instance& instance, const Allocation& allocation);

// Report/certificate serializers used by the CLI.
Json emit_validation_report(const ValidationReport& report);
Json emit_verdict(const Instance& instance, const FairnessVerdict& verdict);
Json emit_envy_graph(const Instance& instance, const EnvyGraph& graph);
Json emit_trace(const Instance& original, const SolveTrace& trace);
Json emit_cycles(const Instance& instance,
                 const std::vector<ExchangeCycle>& cycles);

// Rational <-> JSON value ("p/q" string or integer).
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& value, const std::string& context);

}  // namespace capfair
