#include "capfair/matching.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "capfair/errors.hpp"

namespace capfair {

WeightVector::WeightVector(std::vector<Rational> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("weight vector must not be empty");
  }
  Rational sum(0);
  for (const Rational& w : weights_) {
    if (sgn(w) <= 0 || cmp(w, 1) >= 0) {
      throw std::invalid_argument("weights must lie strictly inside (0,1)");
    }
    sum += w;
  }
  if (cmp(sum, 1) != 0) {
    throw std::invalid_argument("weights must sum to 1");
  }
}

WeightVector WeightVector::uniform(int num_agents) {
  return WeightVector(
      std::vector<Rational>(num_agents, make_rational(1, num_agents)));
}

WeightVector WeightVector::from_ratio(const Rational& r) {
  if (sgn(r) <= 0) {
    throw std::invalid_argument("weight ratio must be positive");
  }
  Rational w1 = r / (1 + r);
  Rational w2 = Rational(1) / (1 + r);
  w1.canonicalize();
  w2.canonicalize();
  return WeightVector({w1, w2});
}

std::size_t AssignmentGraph::num_edges() const {
  std::size_t total = 0;
  for (const Block& b : blocks) {
    total += b.slots.size() * b.items.size();
  }
  return total;
}

AssignmentGraph build_assignment_graph(const Instance& padded,
                                       const WeightVector& w) {
  if (!is_padded(padded)) {
    throw std::invalid_argument(
        "assignment graph requires a padded instance (every category must "
        "hold exactly num_agents * capacity items)");
  }
  if (w.size() != padded.num_agents()) {
    throw std::invalid_argument("weight vector size must match agent count");
  }
  AssignmentGraph graph;
  graph.weights = w.values();
  for (int c = 0; c < padded.num_categories(); ++c) {
    AssignmentGraph::Block block;
    block.category = c;
    block.items = padded.category_items(c);
    for (int a = 0; a < padded.num_agents(); ++a) {
      for (long copy = 0; copy < padded.capacity(c); ++copy) {
        block.slots.push_back(graph.num_slots());
        graph.slots.push_back({c, a, static_cast<int>(copy)});
      }
    }
    graph.blocks.push_back(std::move(block));
  }
  return graph;
}

Rational edge_weight(const Instance& padded, const AssignmentGraph& graph,
                     int slot, int item) {
  const AssignmentGraph::Slot& s = graph.slots.at(slot);
  if (padded.item_category(item) != s.category) {
    throw std::invalid_argument("edge crosses category blocks");
  }
  return graph.weights.at(s.agent) * padded.utility(s.agent, item);
}

namespace {

// Exact Hungarian method on one square block, minimizing total cost.
// Potentials-based shortest augmenting path; every comparison is exact, and
// ties always resolve to the smallest column index, so the returned matching
// depends only on the cost matrix.
std::vector<int> solve_min_cost_assignment(
    const std::vector<std::vector<Rational>>& cost) {
  const int n = static_cast<int>(cost.size());
  // 1-indexed with a virtual column 0; p[j] = row matched to column j.
  std::vector<Rational> u(n + 1, Rational(0)), v(n + 1, Rational(0));
  std::vector<int> p(n + 1, 0), way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      std::optional<Rational> delta;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cmp(cur, *minv[j]) < 0) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || cmp(*minv[j], *delta) < 0) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    while (j0 != 0) {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    }
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  for (int r = 0; r < n; ++r) {
    if (row_to_col[r] < 0) {
      throw InternalInvariantError(
          "assignment solver left a row unmatched on a complete block");
    }
  }
  return row_to_col;
}

}  // namespace

Matching max_weight_perfect_matching(const Instance& padded,
                                     const AssignmentGraph& graph) {
  Matching matching;
  matching.slot_to_item.assign(graph.num_slots(), -1);
  matching.total_weight = Rational(0);

  for (const AssignmentGraph::Block& block : graph.blocks) {
    const int size = static_cast<int>(block.slots.size());
    if (size != static_cast<int>(block.items.size())) {
      throw InternalInvariantError(
          "assignment block is not square; padding is broken");
    }
    std::vector<std::vector<Rational>> cost(
        size, std::vector<Rational>(size, Rational(0)));
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) {
        // Maximize weight == minimize negated weight.
        cost[r][c] = -edge_weight(padded, graph, block.slots[r], block.items[c]);
      }
    }
    const std::vector<int> row_to_col = solve_min_cost_assignment(cost);
    for (int r = 0; r < size; ++r) {
      const int item = block.items[row_to_col[r]];
      matching.slot_to_item[block.slots[r]] = item;
      matching.total_weight += edge_weight(padded, graph, block.slots[r], item);
    }
  }
  return matching;
}

Allocation w_maximal_allocation(const Instance& instance,
                                const WeightVector& w) {
  instance.ensure_valid();
  const bool already_padded = is_padded(instance);
  const Instance padded = already_padded ? instance : pad_with_dummies(instance);

  const AssignmentGraph graph = build_assignment_graph(padded, w);
  const Matching matching = max_weight_perfect_matching(padded, graph);

  Allocation on_padded(padded.num_agents(), padded.num_items());
  for (int s = 0; s < graph.num_slots(); ++s) {
    on_padded.assign(matching.slot_to_item[s], graph.slots[s].agent);
  }
  if (already_padded) {
    return on_padded;
  }
  return strip_dummies(padded, instance, on_padded);
}

namespace {

// Two-agent certificate: every same-category cross pair (o1 in A_1, o2 in
// A_2) must fall into one of three mutually exclusive cases relating the
// agents' preference directions to the weight ratio w1/w2.
bool is_w_maximal_two_agents(const Instance& padded,
                             const Allocation& allocation,
                             const WeightVector& w) {
  const Rational weight_ratio = w[0] / w[1];
  for (int c = 0; c < padded.num_categories(); ++c) {
    std::vector<int> in_a1, in_a2;
    for (int o : padded.category_items(c)) {
      if (allocation.owner(o) == 0) in_a1.push_back(o);
      if (allocation.owner(o) == 1) in_a2.push_back(o);
    }
    for (int o1 : in_a1) {
      for (int o2 : in_a2) {
        const Rational d1 = padded.utility(0, o1) - padded.utility(0, o2);
        const Rational d2 = padded.utility(1, o1) - padded.utility(1, o2);
        const int sign = sgn(d1);
        if (sign == 0) {
          // Equal for agent 1: the swap must not raise agent 2's total.
          if (sgn(d2) > 0) return false;
          continue;
        }
        const DifferenceRatio r = DifferenceRatio::from_quotient(d2, d1);
        if (sign > 0) {
          if (r.compare(weight_ratio) > 0) return false;  // need w1/w2 >= r
        } else {
          if (r.compare(weight_ratio) < 0) return false;  // need w1/w2 <= r
        }
      }
    }
  }
  return true;
}

// General-n certificate: no same-category exchange cycle of up to n distinct
// agents may strictly increase the weighted utility sum.  Cycles are
// enumerated with the smallest participating agent first, which covers every
// cyclic order exactly once.
bool no_improving_cycle(const Instance& padded, const Allocation& allocation,
                        const WeightVector& w) {
  const int n = padded.num_agents();
  for (int c = 0; c < padded.num_categories(); ++c) {
    std::vector<std::vector<int>> held(n);
    for (int o : padded.category_items(c)) {
      if (allocation.owner(o) != Allocation::kUnassigned) {
        held[allocation.owner(o)].push_back(o);
      }
    }

    std::vector<int> agents;   // cycle agents a_1..a_x
    std::vector<int> items;    // chosen item per agent
    std::vector<bool> in_use(n, false);

    // Checks the cycle inequality for the currently chosen agents/items:
    // keeping each o_j with a_j must weigh at least as much as rotating
    // every o_j to a_{j+1}.
    auto cycle_ok = [&]() {
      Rational keep(0), rotated(0);
      const int x = static_cast<int>(agents.size());
      for (int j = 0; j < x; ++j) {
        keep += w[agents[j]] * padded.utility(agents[j], items[j]);
        const int received = items[(j + x - 1) % x];  // a_j receives o_{j-1}
        rotated += w[agents[j]] * padded.utility(agents[j], received);
      }
      return cmp(keep, rotated) >= 0;
    };

    // Depth-first over agent sequences and item choices.  Every length >= 2
    // prefix is itself a cycle and gets checked.  To visit each cyclic order
    // exactly once, the first agent is the minimum of its cycle: extensions
    // are restricted to larger agent ids (in any order, so both directions
    // of longer cycles are covered).
    auto explore = [&](auto&& self) -> bool {
      const int x = static_cast<int>(agents.size());
      if (x >= 2 && !cycle_ok()) return false;
      if (x == n) return true;
      for (int a = (x == 0 ? 0 : agents[0] + 1); a < n; ++a) {
        if (in_use[a]) continue;
        agents.push_back(a);
        in_use[a] = true;
        for (int o : held[a]) {
          items.push_back(o);
          const bool ok = self(self);
          items.pop_back();
          if (!ok) {
            in_use[a] = false;
            agents.pop_back();
            return false;
          }
        }
        in_use[a] = false;
        agents.pop_back();
      }
      return true;
    };
    if (!explore(explore)) return false;
  }
  return true;
}

}  // namespace

bool is_w_maximal(const Instance& instance, const Allocation& allocation,
                  const WeightVector& w) {
  instance.ensure_valid();
  if (w.size() != instance.num_agents()) {
    throw std::invalid_argument("weight vector size must match agent count");
  }
  const bool already_padded = is_padded(instance);
  const Instance padded = already_padded ? instance : pad_with_dummies(instance);

  const Allocation on_padded = complete_with_dummies(
      padded, lift_to_padded(padded, instance, allocation));
  if (!is_feasible(padded, on_padded)) {
    throw std::invalid_argument(
        "is_w_maximal requires a feasible allocation of all real items");
  }

  if (padded.num_agents() == 2) {
    return is_w_maximal_two_agents(padded, on_padded, w);
  }
  return no_improving_cycle(padded, on_padded, w);
}

}  // namespace capfair
