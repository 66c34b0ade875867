#include "capfair/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "capfair/errors.hpp"

namespace capfair {

DifferenceRatio difference_ratio(const Instance& instance, int agent_j,
                                 int agent_i, int item_i, int item_j) {
  if (agent_i == agent_j) {
    throw std::invalid_argument("difference ratio needs two distinct agents");
  }
  const Rational numerator =
      instance.utility(agent_j, item_i) - instance.utility(agent_j, item_j);
  const Rational denominator =
      instance.utility(agent_i, item_i) - instance.utility(agent_i, item_j);
  return DifferenceRatio::from_quotient(numerator, denominator);
}

namespace {

ExchangeablePair make_pair(const Instance& instance, int a1, int a2, int o1,
                           int o2) {
  ExchangeablePair pair;
  pair.item_in_a1 = o1;
  pair.item_in_a2 = o2;
  pair.category = instance.item_category(o1);
  pair.ratio = difference_ratio(instance, a2, a1, o1, o2);
  const int d1 = cmp(instance.utility(a1, o1), instance.utility(a1, o2));
  const int d2 = cmp(instance.utility(a2, o1), instance.utility(a2, o2));
  if (d1 > 0 && d2 > 0) {
    pair.preferred = o1;
  } else if (d1 < 0 && d2 < 0) {
    pair.preferred = o2;
  }
  return pair;
}

bool pair_order(const ExchangeablePair& a, const ExchangeablePair& b) {
  if (a.category != b.category) return a.category < b.category;
  if (a.item_in_a1 != b.item_in_a1) return a.item_in_a1 < b.item_in_a1;
  return a.item_in_a2 < b.item_in_a2;
}

}  // namespace

std::vector<ExchangeablePair> candidate_pairs(const Instance& instance,
                                              const Allocation& allocation,
                                              int a1, int a2) {
  std::vector<ExchangeablePair> pairs;
  for (int c = 0; c < instance.num_categories(); ++c) {
    std::vector<int> in_a1, in_a2;
    for (int o : instance.category_items(c)) {
      if (allocation.owner(o) == a1) in_a1.push_back(o);
      if (allocation.owner(o) == a2) in_a2.push_back(o);
    }
    for (int o1 : in_a1) {
      for (int o2 : in_a2) {
        if (cmp(instance.utility(a2, o1), instance.utility(a2, o2)) > 0) {
          pairs.push_back(make_pair(instance, a1, a2, o1, o2));
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), pair_order);
  return pairs;
}

ExchangeablePair select_current_pair(
    const std::vector<ExchangeablePair>& pairs) {
  if (pairs.empty()) {
    throw InternalInvariantError(
        "no candidate pair to select: a jealous agent must admit an "
        "exchangeable pair it prefers");
  }
  const ExchangeablePair* best = &pairs.front();
  for (const ExchangeablePair& p : pairs) {
    const int c = p.ratio.compare(best->ratio);
    if (c > 0 || (c == 0 && pair_order(p, *best))) {
      best = &p;
    }
  }
  return *best;
}

Allocation apply_exchange(const Allocation& allocation,
                          const ExchangeablePair& pair, int a1, int a2) {
  if (allocation.owner(pair.item_in_a1) != a1 ||
      allocation.owner(pair.item_in_a2) != a2) {
    throw std::invalid_argument(
        "stale exchangeable pair: items are not in the stated bundles");
  }
  Allocation next = allocation;
  next.assign(pair.item_in_a1, a2);
  next.assign(pair.item_in_a2, a1);
  return next;
}

ItemLine item_line(const Instance& instance, int item) {
  if (instance.num_agents() != 2) {
    throw std::invalid_argument("item lines are defined for two agents");
  }
  Rational u1 = instance.utility(0, item);
  Rational u2 = instance.utility(1, item);
  return ItemLine{u1 + u2, -u2};
}

LineIntersection line_intersection(const Instance& instance, int item_a,
                                   int item_b) {
  const ItemLine la = item_line(instance, item_a);
  const ItemLine lb = item_line(instance, item_b);
  LineIntersection result;
  const Rational slope_diff = la.slope - lb.slope;
  const Rational intercept_diff = lb.intercept - la.intercept;
  if (sgn(slope_diff) == 0) {
    result.kind = sgn(intercept_diff) == 0 ? LineIntersection::Kind::coincident
                                           : LineIntersection::Kind::parallel;
    return result;
  }
  result.kind = LineIntersection::Kind::point;
  result.w1 = intercept_diff / slope_diff;
  result.w1.canonicalize();
  return result;
}

namespace {

bool is_ef11(const Instance& instance, const Allocation& allocation) {
  return check(instance, allocation, FairnessProperty::EF11).holds;
}

// Incremental candidate maintenance after swapping (o1, o2): pairs touching
// either item are stale; the items re-enter on their new sides against the
// opposing bundle.  Everything else is unaffected because bundles and
// utilities did not change elsewhere.
void refresh_pairs_after_swap(const Instance& instance,
                              const Allocation& after, int a1, int a2, int o1,
                              int o2, std::vector<ExchangeablePair>& pairs) {
  std::erase_if(pairs, [&](const ExchangeablePair& p) {
    return p.item_in_a1 == o1 || p.item_in_a2 == o2;
  });

  const int category = instance.item_category(o1);
  std::vector<ExchangeablePair> added;
  for (int o : instance.category_items(category)) {
    // o2 joined bundle a1: new pairs (o2, y) for y now held by a2.
    if (after.owner(o) == a2 &&
        cmp(instance.utility(a2, o2), instance.utility(a2, o)) > 0) {
      added.push_back(make_pair(instance, a1, a2, o2, o));
    }
    // o1 joined bundle a2: new pairs (x, o1) for x still held by a1.
    if (after.owner(o) == a1 && o != o2 &&
        cmp(instance.utility(a2, o), instance.utility(a2, o1)) > 0) {
      added.push_back(make_pair(instance, a1, a2, o, o1));
    }
  }
  pairs.insert(pairs.end(), added.begin(), added.end());
  std::sort(pairs.begin(), pairs.end(), pair_order);
}

}  // namespace

SolveResult solve(const Instance& instance) {
  instance.ensure_valid();
  if (instance.num_agents() != 2) {
    throw std::invalid_argument("solve supports exactly two agents");
  }

  SolveResult result{Allocation{}, SolveTrace{{0, 1}, false,
                                              pad_with_dummies(instance),
                                              Allocation{}, {}, Allocation{}}};
  SolveTrace& trace = result.trace;
  const Instance& padded = trace.padded;

  Allocation current =
      w_maximal_allocation(padded, WeightVector::uniform(2));
  trace.initial = current;

  if (!is_ef11(padded, current)) {
    // Orient the jealous agent into role 1.  A maximum-weight allocation
    // admits no mutual envy, so exactly one agent envies here.
    const EnvyGraph envy = envy_graph(padded, current);
    const bool zero_envies = envy.has_edge(0, 1);
    const bool one_envies = envy.has_edge(1, 0);
    if (zero_envies == one_envies) {
      throw InternalInvariantError(
          "expected exactly one envious agent in a non-EF[1,1] "
          "maximum-weight allocation");
    }
    const int jealous = zero_envies ? 0 : 1;
    trace.orientation = {1 - jealous, jealous};
    trace.renamed = jealous == 0;
    const int a1 = trace.orientation[0];
    const int a2 = trace.orientation[1];

    std::vector<ExchangeablePair> pairs =
        candidate_pairs(padded, current, a1, a2);

    // Exchanges strictly raise the jealous agent's utility, so no allocation
    // repeats; the cross-pair count bounds the loop independently.
    long safety = 0;
    for (int c = 0; c < padded.num_categories(); ++c) {
      safety += padded.capacity(c) * padded.capacity(c);
    }

    while (!is_ef11(padded, current)) {
      if (pairs.empty()) {
        throw InternalInvariantError(
            "candidate pairs exhausted before reaching an EF[1,1] "
            "allocation");
      }
      if (static_cast<long>(trace.steps.size()) > safety) {
        throw InternalInvariantError(
            "exchange loop exceeded its certified bound");
      }
      const ExchangeablePair chosen = select_current_pair(pairs);

      // On a maximum-weight allocation, the jealous agent preferring
      // item_in_a1 forces the other agent to prefer it too; the selected
      // ratio is therefore finite and positive.  Check rather than assume.
      if (chosen.preferred != chosen.item_in_a1 || !chosen.ratio.is_finite() ||
          sgn(chosen.ratio.value()) <= 0) {
        throw InternalInvariantError(
            "selected pair lacks the preferred-item structure expected on a "
            "maximum-weight allocation");
      }
      if (!trace.steps.empty() &&
          chosen.ratio.compare(trace.steps.back().pair.ratio) > 0) {
        throw InternalInvariantError(
            "selected ratios must not increase across exchanges");
      }

      current = apply_exchange(current, chosen, a1, a2);
      refresh_pairs_after_swap(padded, current, a1, a2, chosen.item_in_a1,
                               chosen.item_in_a2, pairs);
      trace.steps.push_back(
          SolveStep{chosen, current, is_ef11(padded, current)});
    }
  }

  trace.final_padded = current;
  result.allocation = strip_dummies(padded, instance, current);
  return result;
}

}  // namespace capfair
