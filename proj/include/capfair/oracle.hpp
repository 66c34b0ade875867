#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "capfair/fairness.hpp"
#include "capfair/instance.hpp"
#include "capfair/matching.hpp"

namespace capfair {

// Exhaustive-search ground truth.  Everything here is deliberately naive:
// enumerate all feasible allocations and evaluate definitions directly.  The
// point is to certify the clever paths (matching, exchange loop) on small
// inputs, so clarity beats speed throughout.

struct EnumerationBudget {
  std::uint64_t max_allocations = 1'000'000;
};

// Number of feasible allocations of the padded instance: the product over
// categories of the multinomial count of ways to deal n*s_c items into n
// hands of s_c.
mpz_class count_feasible(const Instance& padded);

// Calls `visit` once per feasible allocation of the padded instance, in a
// fixed canonical order: categories vary most significantly in declaration
// order; within a category, agent bundles are chosen as index-subsets in
// colexicographic order, agent by agent.  The first allocation visited is
// therefore the same on every run and platform.
//
// Stops early when `visit` returns false.  Throws BudgetExceededError up
// front when the total count exceeds the budget.
void enumerate_feasible(const Instance& padded,
                        const std::function<bool(const Allocation&)>& visit,
                        const EnumerationBudget& budget = {});

// Convenience wrapper collecting every feasible allocation.
std::vector<Allocation> all_feasible(const Instance& padded,
                                     const EnumerationBudget& budget = {});

// True iff no feasible allocation Pareto-dominates this one.  The instance
// may be unpadded; the allocation must cover its real items.
bool is_pareto_optimal(const Instance& instance, const Allocation& allocation,
                       const EnumerationBudget& budget = {});

// Conjunction of fairness properties plus optional Pareto optimality,
// evaluated per allocation during a search.
struct PropertySet {
  std::set<FairnessProperty> fairness;
  bool pareto_optimal = false;
};

// First allocation in canonical order satisfying every requested property,
// or nullopt if none exists.  Results are reported on the original
// (unpadded) instance.
std::optional<Allocation> find_allocation(const Instance& instance,
                                          const PropertySet& properties,
                                          const EnumerationBudget& budget = {});

struct WMaximalResult {
  Rational max_weighted_sum;
  std::vector<Allocation> argmax;  // canonical enumeration order
  std::uint64_t enumerated = 0;
};

// Maximum of sum_i w_i u_i(A_i) over all feasible allocations of the padded
// instance, together with every attaining allocation.
WMaximalResult brute_force_w_maximal(const Instance& instance,
                                     const WeightVector& w,
                                     const EnumerationBudget& budget = {});

// Rotation of same-category items among >= 2 distinct agents: item items[j]
// leaves agents[j]'s bundle and joins agents[j+1]'s (cyclically).
struct ExchangeCycle {
  std::vector<int> agents;
  std::vector<int> items;
  int category = -1;
};

Allocation apply_cycle(const Allocation& allocation, const ExchangeCycle& cycle);

// Decomposes the difference between two feasible allocations of the same
// instance into item-disjoint, single-category exchange cycles; applying
// them to `from` in order yields `to`.  Walks misplaced items, always
// continuing from the smallest-id misplaced item of the category, and closes
// a cycle as soon as the walk returns to an agent already on the path, so
// each cycle uses distinct agents.
std::vector<ExchangeCycle> exchange_cycle_decomposition(
    const Instance& instance, const Allocation& from, const Allocation& to);

}  // namespace capfair
