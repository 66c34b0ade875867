#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capfair/instance.hpp"

namespace capfair {

// Directed graph over agents.  Used both for the envy graph (i -> j iff i
// strictly prefers j's bundle to its own) and the top-trading graph (i -> k
// iff A_k is a most-preferred bundle and strictly better than i's own).
struct EnvyGraph {
  int num_agents = 0;
  std::vector<std::pair<int, int>> edges;  // sorted (source, target)

  bool has_edge(int from, int to) const;
  std::vector<int> out_neighbors(int from) const;
  // Agents with no outgoing edge.
  std::vector<int> sinks() const;
  bool has_cycle() const;
};

EnvyGraph envy_graph(const Instance& instance, const Allocation& allocation);
EnvyGraph top_trading_graph(const Instance& instance,
                            const Allocation& allocation);

enum class FairnessProperty { EF, EF1, EF11, EF11U };

std::string to_string(FairnessProperty property);
std::optional<FairnessProperty> fairness_property_from_string(
    std::string_view name);

// Outcome of one ordered agent pair (i looking at j).  When satisfied, the
// optional removals record which items certify the property:
//   EF    — both empty (no envy at all);
//   EF1   — at most one of the two set (one removal suffices);
//   EF11  — removal from own bundle (T) and/or from the other bundle (G);
//           when both are set they share a category;
//   EF11U — same as EF11 without the shared-category requirement.
struct PairCertificate {
  int envious = 0;  // agent i
  int envied = 0;   // agent j
  bool satisfied = false;
  std::optional<int> removed_from_own;    // item in A_i
  std::optional<int> removed_from_other;  // item in A_j
};

struct FairnessVerdict {
  FairnessProperty property = FairnessProperty::EF;
  bool holds = false;
  // One entry per ordered agent pair (i != j), in (i, j) order.
  std::vector<PairCertificate> certificates;

  std::vector<std::pair<int, int>> violating_pairs() const;
};

// Evaluates a fairness property on a (possibly partial) allocation.  Partial
// allocations arise when checking mid-run states of round-based baselines;
// unassigned items simply belong to no bundle.
FairnessVerdict check(const Instance& instance, const Allocation& allocation,
                      FairnessProperty property);

// True iff `to` weakly improves every agent's utility and strictly improves
// at least one, relative to `from`.
bool is_pareto_improvement(const Instance& instance, const Allocation& from,
                           const Allocation& to);

}  // namespace capfair
