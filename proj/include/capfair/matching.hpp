#pragma once

#include <vector>

#include "capfair/instance.hpp"
#include "capfair/rational.hpp"

namespace capfair {

// Per-agent weights, strictly inside (0,1) and summing to 1.  The open
// interval matters: a zero weight would let the matching ignore that agent's
// utilities entirely and the efficiency guarantee below would evaporate.
class WeightVector {
 public:
  // Validates the domain; throws std::invalid_argument otherwise.
  explicit WeightVector(std::vector<Rational> weights);

  static WeightVector uniform(int num_agents);  // (1/n, ..., 1/n)
  // Two-agent vector (r/(1+r), 1/(1+r)) whose component ratio w1/w2 is r.
  static WeightVector from_ratio(const Rational& r);

  int size() const { return static_cast<int>(weights_.size()); }
  const Rational& operator[](int agent) const { return weights_.at(agent); }
  const std::vector<Rational>& values() const { return weights_; }

 private:
  std::vector<Rational> weights_;
};

// Weighted bipartite graph between agent-copy slots and items.  Each category
// c contributes capacity(c) slots per agent and exactly n*capacity(c) items
// (the instance must be padded), so both sides have m vertices and every
// block admits a perfect matching.  Edges exist only inside a category block;
// the weight of (slot of agent i, item o) is w_i * u_i(o).
//
// Vertex order is deterministic: blocks follow category order; within a
// block, items keep instance order and slots are grouped by agent in agent
// order (capacity(c) consecutive copies each).
struct AssignmentGraph {
  struct Slot {
    int category = 0;
    int agent = 0;
    int copy = 0;  // 0-based copy index within (category, agent)
  };

  struct Block {
    int category = 0;
    std::vector<int> slots;  // global slot indices
    std::vector<int> items;  // instance item indices
  };

  std::vector<Slot> slots;
  std::vector<Block> blocks;
  std::vector<Rational> weights;  // per agent, as supplied

  int num_slots() const { return static_cast<int>(slots.size()); }
  std::size_t num_edges() const;
};

AssignmentGraph build_assignment_graph(const Instance& padded,
                                       const WeightVector& w);

// Weight of the edge between a slot and an item of the same block.
Rational edge_weight(const Instance& padded, const AssignmentGraph& graph,
                     int slot, int item);

struct Matching {
  std::vector<int> slot_to_item;  // per slot, the matched item index
  Rational total_weight;
};

// Maximum-weight perfect matching, solved per category block with a
// Hungarian-style shortest-augmenting-path method over exact rationals.
// Deterministic for a fixed graph: rows augment in slot order and column
// ties resolve to the lowest index.
Matching max_weight_perfect_matching(const Instance& padded,
                                     const AssignmentGraph& graph);

// Feasible allocation maximizing sum_i w_i * u_i(A_i).  Pads internally when
// needed and strips the padding from the result, so the returned allocation
// is on `instance` itself.
Allocation w_maximal_allocation(const Instance& instance,
                                const WeightVector& w);

// Certifies maximality without re-solving, via local exchange conditions:
// for two agents, every same-category cross pair must satisfy the three-case
// swap condition; for general n, no exchange cycle of length <= n within a
// category may increase the weighted sum.  Partial allocations are completed
// with dummy items first; the allocation must cover all real items.
bool is_w_maximal(const Instance& instance, const Allocation& allocation,
                  const WeightVector& w);

}  // namespace capfair
