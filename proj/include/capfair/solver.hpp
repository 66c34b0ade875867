#pragma once

#include <array>
#include <optional>
#include <vector>

#include "capfair/fairness.hpp"
#include "capfair/instance.hpp"
#include "capfair/matching.hpp"
#include "capfair/rational.hpp"

namespace capfair {

// r_{j/i}(o_i, o_j) = (u_j(o_i) - u_j(o_j)) / (u_i(o_i) - u_i(o_j)), with the
// DifferenceRatio conventions for vanishing numerator/denominator.  The value
// measures how strongly agent j's preference between the two items compares
// to agent i's; it is symmetric under swapping the two items.
DifferenceRatio difference_ratio(const Instance& instance, int agent_j,
                                 int agent_i, int item_i, int item_j);

// A same-category pair with one item in each of the two oriented bundles.
// `ratio` caches r_{a2/a1}(item_in_a1, item_in_a2); `preferred` is the item
// both agents strictly prefer, when one exists.
struct ExchangeablePair {
  int item_in_a1 = -1;
  int item_in_a2 = -1;
  int category = -1;
  DifferenceRatio ratio = DifferenceRatio::finite(Rational(0));
  std::optional<int> preferred;
};

// All exchangeable pairs whose swap strictly increases agent a2's utility
// (u_{a2}(item_in_a1) > u_{a2}(item_in_a2)), ordered by (category,
// item_in_a1, item_in_a2).  a2 is the agent the caller has oriented as
// jealous; the defaults fit an already-oriented two-agent allocation.
std::vector<ExchangeablePair> candidate_pairs(const Instance& instance,
                                              const Allocation& allocation,
                                              int a1 = 0, int a2 = 1);

// Pair with the maximal ratio; ties resolve to the listwise-first pair,
// i.e. lexicographically smallest (category, item_in_a1, item_in_a2).
// Throws InternalInvariantError on an empty list: the caller only selects
// while envy persists, and envy guarantees a candidate.
ExchangeablePair select_current_pair(const std::vector<ExchangeablePair>& pairs);

// Swaps the pair's two items between their owners.  Throws
// std::invalid_argument if the items are not currently held by the stated
// agents (a stale pair).
Allocation apply_exchange(const Allocation& allocation,
                          const ExchangeablePair& pair, int a1 = 0,
                          int a2 = 1);

// The affine function of w1 whose value is w1*u1(o) - w2*u2(o) for
// w2 = 1 - w1.  Two items' lines intersect where the weight ratio w1/w2
// equals their difference ratio, which is what makes the geometry a useful
// picture of the exchange sequence.
struct ItemLine {
  Rational slope;      // u1(o) + u2(o)
  Rational intercept;  // -u2(o)

  Rational at(const Rational& w1) const { return slope * w1 + intercept; }
};

ItemLine item_line(const Instance& instance, int item);

// Intersection of two item lines, described by the w1 coordinate.
struct LineIntersection {
  enum class Kind { point, parallel, coincident };
  Kind kind = Kind::parallel;
  Rational w1;  // meaningful only when kind == point
};

LineIntersection line_intersection(const Instance& instance, int item_a,
                                   int item_b);

// One exchange performed by the solve loop.  Bundles and items are in the
// instance's own agent order (the oriented roles are recorded separately in
// the trace).
struct SolveStep {
  ExchangeablePair pair;   // oriented: item_in_a1 left the non-jealous bundle
  Allocation after;        // padded allocation after the swap
  bool ef11_after = false;
};

// Replayable certificate of a solve run: applying each step's exchange to
// `initial` reproduces `final_padded`, and the step ratios never increase.
struct SolveTrace {
  // orientation[role] = instance agent index playing that role; role 1 is
  // the jealous agent during the loop.  Identity when no renaming happened.
  std::array<int, 2> orientation{0, 1};
  bool renamed = false;
  Instance padded;          // the padded instance the loop ran on
  Allocation initial;       // padded w-maximal start, before any exchange
  std::vector<SolveStep> steps;
  Allocation final_padded;
};

struct SolveResult {
  Allocation allocation;  // on the original instance, dummies stripped
  SolveTrace trace;
};

// Two-agent solve: start from a (1/2,1/2)-maximal allocation and exchange
// max-ratio candidate pairs until the allocation satisfies the
// one-good-one-chore relaxation for both agents.  The result additionally
// admits positive weights under which it is a maximum-weight matching, hence
// it is Pareto-optimal.
//
// Throws std::invalid_argument unless the instance is valid with exactly two
// agents; throws InternalInvariantError if the loop ever runs out of
// candidates or exceeds its certified exchange bound (either would be a bug,
// not an input problem).
SolveResult solve(const Instance& instance);

}  // namespace capfair
