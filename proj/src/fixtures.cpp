#include "capfair/fixtures.hpp"

#include <stdexcept>

namespace capfair {

std::optional<FixtureId> fixture_from_name(std::string_view name) {
  if (name == "intro") return FixtureId::intro;
  if (name == "table2") return FixtureId::table2;
  if (name == "table3") return FixtureId::table3;
  if (name == "table4") return FixtureId::table4;
  if (name == "table5") return FixtureId::table5;
  if (name == "table6") return FixtureId::table6;
  return std::nullopt;
}

std::string to_string(FixtureId id) {
  switch (id) {
    case FixtureId::intro: return "intro";
    case FixtureId::table2: return "table2";
    case FixtureId::table3: return "table3";
    case FixtureId::table4: return "table4";
    case FixtureId::table5: return "table5";
    case FixtureId::table6: return "table6";
  }
  return "";
}

std::vector<FixtureId> all_fixture_ids() {
  return {FixtureId::intro,  FixtureId::table2, FixtureId::table3,
          FixtureId::table4, FixtureId::table5, FixtureId::table6};
}

const Allocation& Fixture::allocation(std::string_view name) const {
  for (const auto& [snapshot, alloc] : allocations) {
    if (snapshot == name) return alloc;
  }
  throw std::out_of_range("fixture has no allocation snapshot named '" +
                          std::string(name) + "'");
}

namespace {

// Builds an allocation from bundles given as item-id lists (one per agent,
// in agent order).  Items not listed stay unassigned, so partial states are
// expressed by simply omitting them.
Allocation bundles(const Instance& instance,
                   const std::vector<std::vector<std::string>>& per_agent) {
  Allocation allocation(instance.num_agents(), instance.num_items());
  for (std::size_t a = 0; a < per_agent.size(); ++a) {
    for (const auto& id : per_agent[a]) {
      allocation.assign(*instance.find_item(id), static_cast<int>(a));
    }
  }
  return allocation;
}

Rational r(long v) { return Rational(v); }

Fixture make_intro() {
  Instance instance =
      InstanceBuilder{}
          .agents({"a1", "a2"})
          .category("c1", 1, {"o1", "o2"})
          .utility_row("a1", {r(1), r(-1)})
          .utility_row("a2", {r(1), r(-1)})
          .build();
  Fixture fixture{FixtureId::intro, instance, {}};
  fixture.allocations.emplace_back("split",
                                   bundles(instance, {{"o1"}, {"o2"}}));
  return fixture;
}

Fixture make_table2() {
  Instance instance =
      InstanceBuilder{}
          .agents({"a1", "a2"})
          .category("c1", 2, {"o1", "o2", "o3", "o4"})
          .category("c2", 1, {"o5", "o6"})
          .utility_row("a1", {r(0), r(-1), r(-4), r(-5), r(0), r(2)})
          .utility_row("a2", {r(0), r(-1), r(-2), r(-1), r(-1), r(0)})
          .build();
  Fixture fixture{FixtureId::table2, instance, {}};
  fixture.allocations.emplace_back(
      "initial", bundles(instance, {{"o1", "o2", "o6"}, {"o3", "o4", "o5"}}));
  fixture.allocations.emplace_back(
      "after_o5_o6_swap",
      bundles(instance, {{"o1", "o2", "o5"}, {"o3", "o4", "o6"}}));
  return fixture;
}

Fixture make_table3() {
  Instance instance =
      InstanceBuilder{}
          .agents({"a1", "a2"})
          .category("c1", 1, {"o1_1", "o1_2"})
          .category("c2", 1, {"o2_1", "o2_2"})
          .utility_row("a1", {r(0), r(-2), r(-2), r(-1)})
          .utility_row("a2", {r(0), r(-4), r(-4), r(0)})
          .build();
  Fixture fixture{FixtureId::table3, instance, {}};
  fixture.allocations.emplace_back("round1",
                                   bundles(instance, {{"o1_2"}, {"o1_1"}}));
  fixture.allocations.emplace_back(
      "round2", bundles(instance, {{"o1_2", "o2_1"}, {"o1_1", "o2_2"}}));
  return fixture;
}

Fixture make_table4() {
  Instance instance =
      InstanceBuilder{}
          .agents({"a1", "a2"})
          .category("c1", 2, {"o1_1", "o1_2", "o1_3", "o1_4"})
          .category("c2", 1, {"o2_1", "o2_2"})
          .utility_row("a1", {r(-1), r(0), r(0), r(0), r(-2), r(-4)})
          .utility_row("a2", {r(-1), r(0), r(0), r(0), r(-1), r(-3)})
          .build();
  Fixture fixture{FixtureId::table4, instance, {}};
  fixture.allocations.emplace_back(
      "midrun", bundles(instance, {{"o1_1"}, {"o1_2", "o1_3"}}));
  return fixture;
}

Fixture make_table5() {
  Instance instance =
      InstanceBuilder{}
          .agents({"a1", "a2", "a3", "a4"})
          .category("c1", 1, {"o1", "o2", "o3", "o4"})
          .utility_row("a1", {r(-5), r(-3), r(-7), r(-7)})
          .utility_row("a2", {r(-5), r(-2), r(-1), r(-4)})
          .utility_row("a3", {r(-4), r(-7), r(-6), r(-1)})
          .utility_row("a4", {r(-3), r(-3), r(-2), r(-1)})
          .build();
  Fixture fixture{FixtureId::table5, instance, {}};
  fixture.allocations.emplace_back(
      "singletons", bundles(instance, {{"o1"}, {"o2"}, {"o3"}, {"o4"}}));
  return fixture;
}

Fixture make_table6() {
  Instance instance =
      InstanceBuilder{}
          .agents({"a1", "a2"})
          .category("c1", 8,
                    {"o1", "o2", "o3", "o4", "o5", "o6", "o7", "o8"})
          .utility_row("a1", {r(-5), r(-2), r(-1), r(-2), r(-2), r(-2), r(-1),
                              r(-2)})
          .utility_row("a2",
                       {r(-1), r(-1), r(-2), r(-1), r(-1), r(0), r(0), r(0)})
          .build();
  Fixture fixture{FixtureId::table6, instance, {}};
  fixture.allocations.emplace_back(
      "A", bundles(instance, {{"o1", "o5", "o6", "o7"}, {"o2", "o3", "o4", "o8"}}));
  fixture.allocations.emplace_back(
      "A_prime",
      bundles(instance,
              {{"o2", "o3", "o4", "o5", "o6", "o7"}, {"o1", "o8"}}));
  return fixture;
}

}  // namespace

Fixture make_fixture(FixtureId id) {
  switch (id) {
    case FixtureId::intro: return make_intro();
    case FixtureId::table2: return make_table2();
    case FixtureId::table3: return make_table3();
    case FixtureId::table4: return make_table4();
    case FixtureId::table5: return make_table5();
    case FixtureId::table6: return make_table6();
  }
  throw std::out_of_range("unknown fixture id");
}

}  // namespace capfair
