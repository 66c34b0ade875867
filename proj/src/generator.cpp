#include "capfair/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace capfair {

std::uint64_t Rng::next() {
  // splitmix64 step: tiny, fully specified, and unencumbered by the
  // implementation-defined behavior of std::uniform_int_distribution.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::uniform(long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<long>(draw % span);
}

std::optional<CapacityPolicy> capacity_policy_from_string(
    std::string_view name) {
  if (name == "min") return CapacityPolicy::minimum;
  if (name == "max") return CapacityPolicy::maximum;
  if (name == "random") return CapacityPolicy::random;
  return std::nullopt;
}

Instance generate_instance(const GeneratorConfig& config) {
  const long n = config.num_agents;
  if (n < 1) throw std::invalid_argument("need at least one agent");
  if (config.items_per_category.empty()) {
    throw std::invalid_argument("need at least one category");
  }
  if (config.utility_min > config.utility_max) {
    throw std::invalid_argument("empty utility range");
  }
  if (config.capacities &&
      config.capacities->size() != config.items_per_category.size()) {
    throw std::invalid_argument(
        "capacities list must match the category count");
  }

  Rng rng(config.seed);
  std::vector<std::string> agents;
  for (long a = 1; a <= n; ++a) agents.push_back("a" + std::to_string(a));

  std::vector<Instance::CategorySpec> categories;
  long item_counter = 0;
  for (std::size_t c = 0; c < config.items_per_category.size(); ++c) {
    const long size = config.items_per_category[c];
    if (size < 1) throw std::invalid_argument("empty category requested");
    const long lower = (size + n - 1) / n;
    long capacity;
    if (config.capacities) {
      capacity = (*config.capacities)[c];
      if (capacity < lower || capacity > size) {
        throw std::invalid_argument(
            "capacity " + std::to_string(capacity) + " for a category of " +
            std::to_string(size) + " items lies outside [" +
            std::to_string(lower) + ", " + std::to_string(size) + "]");
      }
    } else {
      switch (config.capacity_policy) {
        case CapacityPolicy::minimum: capacity = lower; break;
        case CapacityPolicy::maximum: capacity = size; break;
        case CapacityPolicy::random:
          capacity = rng.uniform(lower, size);
          break;
      }
    }
    Instance::CategorySpec spec;
    spec.id = "c" + std::to_string(c + 1);
    spec.capacity = capacity;
    for (long i = 0; i < size; ++i) {
      spec.items.push_back("o" + std::to_string(++item_counter));
    }
    categories.push_back(std::move(spec));
  }

  Instance::UtilityTable utilities;
  for (const auto& agent : agents) {
    for (const auto& category : categories) {
      long lo = config.utility_min;
      long hi = config.utility_max;
      if (config.same_sign) {
        // One sign per (agent, category): draw the sign, then clamp the
        // range to that side of zero (zero itself stays available).
        if (rng.coin()) {
          lo = std::max(0L, lo);
          hi = std::max(0L, hi);
        } else {
          lo = std::min(0L, lo);
          hi = std::min(0L, hi);
        }
      }
      for (const auto& item : category.items) {
        utilities[agent][item] = Rational(rng.uniform(lo, hi));
      }
    }
  }
  return Instance(agents, categories, utilities);
}

}  // namespace capfair
