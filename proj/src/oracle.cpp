#include "capfair/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "capfair/errors.hpp"

namespace capfair {

namespace {

// All K-element subsets of {0..M-1} in colexicographic order.
std::vector<std::vector<int>> colex_subsets(int M, int K) {
  std::vector<std::vector<int>> out;
  if (K == 0) {
    out.push_back({});
    return out;
  }
  if (K > M) return out;
  std::vector<int> c(K);
  for (int i = 0; i < K; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = 0;
    for (; i < K; ++i) {
      const int limit = (i + 1 < K) ? c[i + 1] : M;
      if (c[i] + 1 < limit) break;
    }
    if (i == K) return out;
    ++c[i];
    for (int t = 0; t < i; ++t) c[t] = t;
  }
}

// Every way to deal one category's items to the agents, s items each.  A
// config maps local item position -> agent.  Order: agent 0's subset varies
// slowest (colex), then agent 1's within the remaining items, and so on.
void build_category_configs(int size, int num_agents, long per_agent,
                            std::vector<int>& positions_left,
                            std::vector<int>& config, int agent,
                            std::vector<std::vector<int>>& out) {
  if (agent == num_agents) {
    out.push_back(config);
    return;
  }
  const auto subsets =
      colex_subsets(static_cast<int>(positions_left.size()),
                    static_cast<int>(per_agent));
  for (const auto& subset : subsets) {
    std::vector<int> taken, rest;
    for (int idx = 0, s = 0; idx < static_cast<int>(positions_left.size());
         ++idx) {
      if (s < static_cast<int>(subset.size()) && subset[s] == idx) {
        taken.push_back(positions_left[idx]);
        ++s;
      } else {
        rest.push_back(positions_left[idx]);
      }
    }
    for (int p : taken) config[p] = agent;
    build_category_configs(size, num_agents, per_agent, rest, config,
                           agent + 1, out);
    for (int p : taken) config[p] = -1;
  }
}

std::vector<std::vector<int>> category_configs(const Instance& padded, int c) {
  const int size = static_cast<int>(padded.category_items(c).size());
  std::vector<int> positions(size);
  for (int i = 0; i < size; ++i) positions[i] = i;
  std::vector<int> config(size, -1);
  std::vector<std::vector<int>> out;
  build_category_configs(size, padded.num_agents(), padded.capacity(c),
                         positions, config, 0, out);
  return out;
}

}  // namespace

mpz_class count_feasible(const Instance& padded) {
  const long n = padded.num_agents();
  mpz_class total = 1;
  for (int c = 0; c < padded.num_categories(); ++c) {
    const long s = padded.capacity(c);
    for (long a = 0; a < n; ++a) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(),
                   static_cast<unsigned long>((n - a) * s),
                   static_cast<unsigned long>(s));
      total *= binom;
    }
  }
  return total;
}

void enumerate_feasible(const Instance& padded,
                        const std::function<bool(const Allocation&)>& visit,
                        const EnumerationBudget& budget) {
  padded.ensure_valid();
  if (!is_padded(padded)) {
    throw std::invalid_argument(
        "feasible enumeration requires a padded instance");
  }
  const mpz_class total = count_feasible(padded);
  if (cmp(total, mpz_class(static_cast<unsigned long>(
                     budget.max_allocations))) > 0) {
    throw BudgetExceededError(
        "instance admits " + total.get_str() +
        " feasible allocations, above the enumeration budget of " +
        std::to_string(budget.max_allocations));
  }

  const int k = padded.num_categories();
  std::vector<std::vector<std::vector<int>>> configs(k);
  for (int c = 0; c < k; ++c) configs[c] = category_configs(padded, c);

  std::vector<std::size_t> at(k, 0);
  Allocation allocation(padded.num_agents(), padded.num_items());
  while (true) {
    for (int c = 0; c < k; ++c) {
      const auto& items = padded.category_items(c);
      const auto& config = configs[c][at[c]];
      for (std::size_t p = 0; p < items.size(); ++p) {
        allocation.assign(items[p], config[p]);
      }
    }
    if (!visit(allocation)) return;

    // Odometer: the last category is the fastest digit, so the first
    // category is the most significant.
    int c = k - 1;
    for (; c >= 0; --c) {
      if (++at[c] < configs[c].size()) break;
      at[c] = 0;
    }
    if (c < 0) return;
  }
}

std::vector<Allocation> all_feasible(const Instance& padded,
                                     const EnumerationBudget& budget) {
  std::vector<Allocation> out;
  enumerate_feasible(
      padded,
      [&](const Allocation& a) {
        out.push_back(a);
        return true;
      },
      budget);
  return out;
}

namespace {

// Utility of each agent's own bundle, as a vector.
std::vector<Rational> own_utilities(const Instance& instance,
                                    const Allocation& allocation) {
  std::vector<Rational> u;
  for (int a = 0; a < instance.num_agents(); ++a) {
    u.push_back(bundle_utility(instance, a, allocation));
  }
  return u;
}

bool dominates(const std::vector<Rational>& candidate,
               const std::vector<Rational>& base) {
  bool strict = false;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const int c = cmp(candidate[i], base[i]);
    if (c < 0) return false;
    if (c > 0) strict = true;
  }
  return strict;
}

}  // namespace

bool is_pareto_optimal(const Instance& instance, const Allocation& allocation,
                       const EnumerationBudget& budget) {
  instance.ensure_valid();
  const Instance padded =
      is_padded(instance) ? instance : pad_with_dummies(instance);
  const Allocation on_padded = complete_with_dummies(
      padded, lift_to_padded(padded, instance, allocation));
  if (!is_feasible(padded, on_padded)) {
    throw std::invalid_argument(
        "Pareto check requires a feasible allocation");
  }
  const std::vector<Rational> base = own_utilities(padded, on_padded);
  bool optimal = true;
  enumerate_feasible(
      padded,
      [&](const Allocation& other) {
        if (dominates(own_utilities(padded, other), base)) {
          optimal = false;
          return false;
        }
        return true;
      },
      budget);
  return optimal;
}

std::optional<Allocation> find_allocation(const Instance& instance,
                                          const PropertySet& properties,
                                          const EnumerationBudget& budget) {
  instance.ensure_valid();
  const Instance padded =
      is_padded(instance) ? instance : pad_with_dummies(instance);

  // Pareto optimality needs the full utility profile of every allocation, so
  // collect the profiles once and compare pairwise.
  std::vector<Allocation> allocations;
  std::vector<std::vector<Rational>> profiles;
  enumerate_feasible(
      padded,
      [&](const Allocation& a) {
        allocations.push_back(a);
        profiles.push_back(own_utilities(padded, a));
        return true;
      },
      budget);

  for (std::size_t i = 0; i < allocations.size(); ++i) {
    bool ok = true;
    for (FairnessProperty property : properties.fairness) {
      if (!check(padded, allocations[i], property).holds) {
        ok = false;
        break;
      }
    }
    if (ok && properties.pareto_optimal) {
      for (std::size_t j = 0; j < allocations.size() && ok; ++j) {
        if (dominates(profiles[j], profiles[i])) ok = false;
      }
    }
    if (ok) {
      if (padded.num_items() == instance.num_items()) {
        return allocations[i];
      }
      return strip_dummies(padded, instance, allocations[i]);
    }
  }
  return std::nullopt;
}

WMaximalResult brute_force_w_maximal(const Instance& instance,
                                     const WeightVector& w,
                                     const EnumerationBudget& budget) {
  instance.ensure_valid();
  const Instance padded =
      is_padded(instance) ? instance : pad_with_dummies(instance);

  WMaximalResult result;
  result.max_weighted_sum = Rational(0);
  bool first = true;
  enumerate_feasible(
      padded,
      [&](const Allocation& a) {
        ++result.enumerated;
        Rational sum(0);
        for (int agent = 0; agent < padded.num_agents(); ++agent) {
          sum += w[agent] * bundle_utility(padded, agent, a);
        }
        const int c = first ? 1 : cmp(sum, result.max_weighted_sum);
        if (c > 0) {
          result.max_weighted_sum = sum;
          result.argmax.clear();
          result.argmax.push_back(a);
        } else if (c == 0) {
          result.argmax.push_back(a);
        }
        first = false;
        return true;
      },
      budget);
  return result;
}

Allocation apply_cycle(const Allocation& allocation,
                       const ExchangeCycle& cycle) {
  const std::size_t x = cycle.agents.size();
  if (x < 2 || cycle.items.size() != x) {
    throw std::invalid_argument("exchange cycle needs >= 2 (agent, item) pairs");
  }
  for (std::size_t j = 0; j < x; ++j) {
    if (allocation.owner(cycle.items[j]) != cycle.agents[j]) {
      throw std::invalid_argument(
          "exchange cycle item is not held by its stated agent");
    }
  }
  Allocation next = allocation;
  for (std::size_t j = 0; j < x; ++j) {
    next.assign(cycle.items[j], cycle.agents[(j + 1) % x]);
  }
  return next;
}

std::vector<ExchangeCycle> exchange_cycle_decomposition(
    const Instance& instance, const Allocation& from, const Allocation& to) {
  instance.ensure_valid();
  if (from.num_items() != instance.num_items() ||
      to.num_items() != instance.num_items()) {
    throw std::invalid_argument(
        "cycle decomposition: allocations must cover the instance items");
  }
  if (!is_feasible(instance, from) || !is_feasible(instance, to)) {
    throw std::invalid_argument(
        "cycle decomposition requires two feasible allocations");
  }
  // The walk below relies on every agent holding the same number of items
  // per category in both allocations (guaranteed on padded instances).
  for (int c = 0; c < instance.num_categories(); ++c) {
    std::vector<int> cnt_from(instance.num_agents(), 0),
        cnt_to(instance.num_agents(), 0);
    for (int o : instance.category_items(c)) {
      ++cnt_from[from.owner(o)];
      ++cnt_to[to.owner(o)];
    }
    if (cnt_from != cnt_to) {
      throw std::invalid_argument(
          "cycle decomposition: per-agent category counts differ between the "
          "two allocations");
    }
  }

  std::vector<ExchangeCycle> cycles;
  Allocation current = from;
  while (true) {
    // Smallest misplaced item restarts the walk.
    int start = -1;
    for (int o = 0; o < instance.num_items(); ++o) {
      if (current.owner(o) != to.owner(o)) {
        start = o;
        break;
      }
    }
    if (start < 0) break;

    const int category = instance.item_category(start);
    std::vector<int> path_agents, path_items;
    int item = start;
    while (true) {
      const int holder = current.owner(item);
      const int target = to.owner(item);
      path_agents.push_back(holder);
      path_items.push_back(item);

      const auto seen =
          std::find(path_agents.begin(), path_agents.end(), target);
      if (seen != path_agents.end()) {
        // Close the cycle at the first revisited agent; the suffix of the
        // path forms a rotation among distinct agents.
        const auto offset = seen - path_agents.begin();
        ExchangeCycle cycle;
        cycle.agents.assign(path_agents.begin() + offset, path_agents.end());
        cycle.items.assign(path_items.begin() + offset, path_items.end());
        cycle.category = category;
        current = apply_cycle(current, cycle);
        cycles.push_back(std::move(cycle));
        break;
      }

      // The target agent gains an item of this category, so it must also
      // give one up: pick its smallest misplaced item of the category.
      int next_item = -1;
      for (int o : instance.category_items(category)) {
        if (current.owner(o) == target && to.owner(o) != target) {
          next_item = o;
          break;
        }
      }
      if (next_item < 0) {
        throw InternalInvariantError(
            "cycle walk stuck: equal category counts guarantee a misplaced "
            "item to continue with");
      }
      item = next_item;
    }
  }
  return cycles;
}

}  // namespace capfair
