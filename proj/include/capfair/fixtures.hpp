#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capfair/instance.hpp"

namespace capfair {

// Small worked instances used across the test suite and exposed through the
// CLI.  Each fixture bundles the instance with the allocation states the
// accompanying walkthroughs reason about, under stable snapshot names.
enum class FixtureId { intro, table2, table3, table4, table5, table6 };

std::optional<FixtureId> fixture_from_name(std::string_view name);
std::string to_string(FixtureId id);
std::vector<FixtureId> all_fixture_ids();

struct Fixture {
  FixtureId id = FixtureId::intro;
  Instance instance;
  // Named allocation states; allocations may be partial (mid-run states).
  std::vector<std::pair<std::string, Allocation>> allocations;

  const Allocation& allocation(std::string_view name) const;
};

// Builds the fixture afresh (instances are immutable; callers may keep it).
//
//   intro   — one category {o1, o2}, capacity 1; o1 a shared good, o2 a
//             shared chore.  Snapshot "split": a1 gets the good.
//   table2  — two chore/good categories, the running two-agent example.
//             Snapshots "initial" and "after_o5_o6_swap".
//   table3  — iterated-matching counterexample; snapshots "round1" (partial,
//             first category only) and "round2".
//   table4  — top-trading counterexample; snapshot "midrun" (partial).
//   table5  — 4-agent cycle-elimination counterexample; snapshot
//             "singletons" (agent i holds item i).
//   table6  — Pareto-improvement counterexample; snapshots "A" and
//             "A_prime" (after trading {o1} for {o2,o3,o4}).
Fixture make_fixture(FixtureId id);

}  // namespace capfair
