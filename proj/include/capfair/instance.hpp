#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capfair/rational.hpp"

namespace capfair {

// Item identifiers beginning with this prefix are reserved for the zero-utility
// filler items introduced by pad_with_dummies; user instances must not use it.
inline constexpr std::string_view kDummyIdPrefix = "__dummy_";

// One structural problem found by validate() or check_feasibility().  The code
// is a stable machine-readable tag (tests and the CLI match on it); the
// message is for humans.
struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
  std::string summary() const;  // one line per violation
};

// An allocation problem: agents, items partitioned into categories, a
// per-category capacity, and an exact rational utility for every
// (agent, item) pair.
//
// Construction indexes the raw data but deliberately never fails on semantic
// problems (capacity out of range, missing utility entries, reserved ids...).
// Those are surfaced as data by validate(), so the CLI can report every
// problem in one pass.  Operations that only make sense on a valid instance
// call ensure_valid() and throw InvalidInstanceError otherwise.
//
// Agents, categories, and items are referred to by dense indices in
// declaration order; string ids exist only at the I/O boundary.  Item indices
// are category-major: all items of category 0 precede all items of category 1,
// and so on.
class Instance {
 public:
  struct CategorySpec {
    std::string id;
    long capacity = 0;
    std::vector<std::string> items;
    // Parallel to items; true marks padding items.  User-facing construction
    // paths leave this empty (= all real).
    std::vector<bool> dummy;
  };

  using UtilityTable =
      std::map<std::string, std::map<std::string, Rational>>;

  Instance(std::vector<std::string> agents,
           std::vector<CategorySpec> categories,
           const UtilityTable& utilities);

  int num_agents() const { return static_cast<int>(agents_.size()); }
  int num_items() const { return static_cast<int>(item_ids_.size()); }
  int num_categories() const { return static_cast<int>(categories_.size()); }

  const std::string& agent_id(int agent) const { return agents_.at(agent); }
  const std::string& item_id(int item) const { return item_ids_.at(item); }
  const std::string& category_id(int category) const;
  long capacity(int category) const;
  // Item indices belonging to a category, in index order.
  const std::vector<int>& category_items(int category) const;
  int item_category(int item) const { return item_category_.at(item); }
  bool is_dummy(int item) const { return item_dummy_.at(item); }

  std::optional<int> find_agent(std::string_view id) const;
  std::optional<int> find_item(std::string_view id) const;
  std::optional<int> find_category(std::string_view id) const;

  // Utility of one item for one agent.  On an instance with missing utility
  // entries (reported by validate()) the missing entries read as 0.
  const Rational& utility(int agent, int item) const;

  // Two instances are equal when they declare the same agents, categories,
  // capacities, items (including dummy flags), and utilities, in the same
  // order.
  friend bool operator==(const Instance& a, const Instance& b);

  ValidationReport validate() const;
  void ensure_valid() const;  // throws InvalidInstanceError if !validate().ok()

 private:
  std::vector<std::string> agents_;

  struct Category {
    std::string id;
    long capacity;
    std::vector<int> items;
  };
  std::vector<Category> categories_;

  std::vector<std::string> item_ids_;
  std::vector<int> item_category_;
  std::vector<bool> item_dummy_;

  std::map<std::string, int, std::less<>> agent_index_;
  std::map<std::string, int, std::less<>> item_index_;
  std::map<std::string, int, std::less<>> category_index_;

  // Dense num_agents x num_items utility matrix; missing entries are 0 with
  // the presence bit cleared so validate() can report them.
  std::vector<Rational> utility_;
  std::vector<bool> utility_present_;

  // Diagnostics collected during construction for validate().
  std::vector<std::string> duplicate_agents_;
  std::vector<std::string> duplicate_items_;
  std::vector<std::pair<std::string, std::string>> unknown_utility_entries_;
};

// Convenience builder used by fixtures, generators, and tests.  Utilities can
// be given row-wise in item declaration order, which keeps tabular data
// readable.
class InstanceBuilder {
 public:
  InstanceBuilder& agents(std::vector<std::string> ids);
  InstanceBuilder& category(std::string id, long capacity,
                            std::vector<std::string> items);
  // Utilities for one agent, aligned with all items declared so far in
  // category-major declaration order.
  InstanceBuilder& utility_row(const std::string& agent,
                               std::vector<Rational> values);
  InstanceBuilder& utility(const std::string& agent, const std::string& item,
                           Rational value);
  Instance build() const;

 private:
  std::vector<std::string> agents_;
  std::vector<Instance::CategorySpec> categories_;
  Instance::UtilityTable utilities_;
};

// Assignment of items to agents.  owner(item) is the agent index or
// kUnassigned; partial allocations are first-class so that mid-run states
// can be inspected and checked.  Structural disjointness (an item belonging
// to two bundles) is impossible by construction.
class Allocation {
 public:
  static constexpr int kUnassigned = -1;

  Allocation() = default;
  Allocation(int num_agents, int num_items);

  int num_agents() const { return num_agents_; }
  int num_items() const { return static_cast<int>(owner_.size()); }

  int owner(int item) const { return owner_.at(item); }
  void assign(int item, int agent);
  void unassign(int item);
  bool is_complete() const;  // every item has an owner

  // Items owned by the agent, ascending by item index.
  std::vector<int> bundle(int agent) const;
  int bundle_size(int agent) const;

  friend bool operator==(const Allocation& a, const Allocation& b) = default;

 private:
  int num_agents_ = 0;
  std::vector<int> owner_;
};

// --- Operations on instances and allocations ---

ValidationReport validate(const Instance& instance);

// Appends zero-utility dummy items to every category until it holds exactly
// num_agents * capacity items.  The result is a new instance on which every
// feasible allocation gives each agent exactly `capacity` items per category.
// Idempotent; requires a valid instance.
Instance pad_with_dummies(const Instance& instance);

bool is_padded(const Instance& instance);

// Re-indexes an allocation on `original` onto `padded` (built from it via
// pad_with_dummies) by item id; dummy items stay unassigned.  Padding can
// shift item indices between categories, so never copy indices directly.
Allocation lift_to_padded(const Instance& padded, const Instance& original,
                          const Allocation& allocation);

// Extends a (possibly partial) allocation indexed on `padded` by assigning
// the dummy items of each category to agents still below that category's
// capacity.  Deterministic: dummies in index order go to the lowest-index
// agent with remaining headroom.  Real items are untouched.
Allocation complete_with_dummies(const Instance& padded,
                                 const Allocation& allocation);

// Restricts an allocation on a padded instance to the real items of the
// original instance.  `original` must be the instance `padded` was built
// from.
Allocation strip_dummies(const Instance& padded, const Instance& original,
                         const Allocation& allocation);

// True when, for every agent and category, the utilities of that category's
// items are all >= 0 or all <= 0 (dummy items, being zero, never break
// same-sign).
bool is_same_sign(const Instance& instance);

// Sum of the agent's utilities over a set of items.
Rational bundle_utility(const Instance& instance, int agent,
                        const std::vector<int>& items);

// Sum over the agent's bundle in an allocation (partial allowed).
Rational bundle_utility(const Instance& instance, int agent,
                        const Allocation& allocation);

// Checks coverage (every item assigned) and per-category capacities.
// Violation codes: "unallocated_item", "capacity_exceeded".
ValidationReport check_feasibility(const Instance& instance,
                                   const Allocation& allocation);

bool is_feasible(const Instance& instance, const Allocation& allocation);

}  // namespace capfair
