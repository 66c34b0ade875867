#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capfair/instance.hpp"

namespace capfair {

// Seeded random instances for the property suites.  Determinism matters more
// than statistical niceties here: the same seed must produce the same
// instance on every platform, so sampling avoids the standard library's
// implementation-defined distributions and uses rejection sampling over a
// splitmix64 stream instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Uniform integer in [lo, hi], inclusive; lo <= hi.
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::uint64_t next();
  std::uint64_t state_;
};

enum class CapacityPolicy {
  minimum,  // tightest: ceil(|C| / n)
  maximum,  // loosest: |C|
  random,   // uniform between the two bounds
};

std::optional<CapacityPolicy> capacity_policy_from_string(std::string_view name);

struct GeneratorConfig {
  std::uint64_t seed = 0;
  int num_agents = 2;
  std::vector<long> items_per_category;  // one entry per category
  // Explicit capacities win over the policy when present (same length as
  // items_per_category); out-of-bounds values are a configuration error.
  std::optional<std::vector<long>> capacities;
  CapacityPolicy capacity_policy = CapacityPolicy::minimum;
  long utility_min = -9;
  long utility_max = 9;
  // Force every (agent, category) pair to draw all-goods or all-chores.
  bool same_sign = false;
};

// Deterministically builds a valid instance from the config.  Agent ids are
// a1..an, categories c1..ck, items o1..om (numbered across categories).
// Throws std::invalid_argument on unsatisfiable parameters (empty shape,
// capacities outside [ceil(|C|/n), |C|], bad utility range).
Instance generate_instance(const GeneratorConfig& config);

}  // namespace capfair
