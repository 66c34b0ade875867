#include "capfair/instance.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "capfair/errors.hpp"

namespace capfair {

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << v.code << ": " << v.message << "\n";
  }
  return out.str();
}

Instance::Instance(std::vector<std::string> agents,
                   std::vector<CategorySpec> categories,
                   const UtilityTable& utilities)
    : agents_(std::move(agents)) {
  for (int a = 0; a < num_agents(); ++a) {
    if (!agent_index_.emplace(agents_[a], a).second) {
      duplicate_agents_.push_back(agents_[a]);
    }
  }
  for (auto& spec : categories) {
    Category cat;
    cat.id = spec.id;
    cat.capacity = spec.capacity;
    const int c = static_cast<int>(categories_.size());
    if (!category_index_.emplace(cat.id, c).second) {
      // Treat a repeated category id like a repeated item container: record
      // it as a duplicate-item style problem on the id itself.
      duplicate_items_.push_back("category:" + cat.id);
    }
    for (std::size_t k = 0; k < spec.items.size(); ++k) {
      const std::string& id = spec.items[k];
      const int item = static_cast<int>(item_ids_.size());
      if (!item_index_.emplace(id, item).second) {
        duplicate_items_.push_back(id);
        continue;  // keep the first occurrence only
      }
      item_ids_.push_back(id);
      item_category_.push_back(c);
      item_dummy_.push_back(k < spec.dummy.size() ? bool(spec.dummy[k]) : false);
      cat.items.push_back(item);
    }
    categories_.push_back(std::move(cat));
  }

  utility_.assign(static_cast<std::size_t>(num_agents()) * num_items(),
                  Rational(0));
  utility_present_.assign(utility_.size(), false);
  for (const auto& [agent_id, row] : utilities) {
    auto a = find_agent(agent_id);
    for (const auto& [item_id, value] : row) {
      auto o = find_item(item_id);
      if (!a || !o) {
        unknown_utility_entries_.emplace_back(agent_id, item_id);
        continue;
      }
      const std::size_t idx =
          static_cast<std::size_t>(*a) * num_items() + *o;
      utility_[idx] = value;
      utility_present_[idx] = true;
    }
  }
}

const std::string& Instance::category_id(int category) const {
  return categories_.at(category).id;
}

long Instance::capacity(int category) const {
  return categories_.at(category).capacity;
}

const std::vector<int>& Instance::category_items(int category) const {
  return categories_.at(category).items;
}

std::optional<int> Instance::find_agent(std::string_view id) const {
  auto it = agent_index_.find(id);
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Instance::find_item(std::string_view id) const {
  auto it = item_index_.find(id);
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Instance::find_category(std::string_view id) const {
  auto it = category_index_.find(id);
  if (it == category_index_.end()) return std::nullopt;
  return it->second;
}

const Rational& Instance::utility(int agent, int item) const {
  if (agent < 0 || agent >= num_agents() || item < 0 || item >= num_items()) {
    throw std::out_of_range("utility(agent, item) index out of range");
  }
  return utility_[static_cast<std::size_t>(agent) * num_items() + item];
}

bool operator==(const Instance& a, const Instance& b) {
  if (a.agents_ != b.agents_ || a.item_ids_ != b.item_ids_ ||
      a.item_category_ != b.item_category_ || a.item_dummy_ != b.item_dummy_) {
    return false;
  }
  if (a.categories_.size() != b.categories_.size()) return false;
  for (std::size_t c = 0; c < a.categories_.size(); ++c) {
    if (a.categories_[c].id != b.categories_[c].id ||
        a.categories_[c].capacity != b.categories_[c].capacity ||
        a.categories_[c].items != b.categories_[c].items) {
      return false;
    }
  }
  if (a.utility_present_ != b.utility_present_) return false;
  for (std::size_t i = 0; i < a.utility_.size(); ++i) {
    if (cmp(a.utility_[i], b.utility_[i]) != 0) return false;
  }
  return true;
}

ValidationReport Instance::validate() const {
  ValidationReport report;
  auto add = [&](std::string code, std::string message) {
    report.violations.push_back({std::move(code), std::move(message)});
  };

  if (agents_.empty()) {
    add("no_agents", "instance declares no agents");
  }
  for (const auto& id : duplicate_agents_) {
    add("duplicate_agent", "agent id '" + id + "' declared more than once");
  }
  for (const auto& id : duplicate_items_) {
    add("duplicate_item", "item id '" + id + "' declared more than once");
  }

  const long n = static_cast<long>(agents_.size());
  for (const Category& cat : categories_) {
    const long size = static_cast<long>(cat.items.size());
    if (cat.capacity < 1) {
      add("capacity_not_positive",
          "category '" + cat.id + "' has capacity " +
              std::to_string(cat.capacity) + ", which is below 1");
    }
    if (n > 0) {
      const long lower = (size + n - 1) / n;  // ceil(|C|/n)
      if (cat.capacity < lower) {
        add("capacity_below_minimum",
            "category '" + cat.id + "' has capacity " +
                std::to_string(cat.capacity) + " but needs at least ceil(" +
                std::to_string(size) + "/" + std::to_string(n) + ") = " +
                std::to_string(lower) + " so every item can be assigned");
      }
    }
    if (cat.capacity > size) {
      add("capacity_above_maximum",
          "category '" + cat.id + "' has capacity " +
              std::to_string(cat.capacity) + " but only " +
              std::to_string(size) + " items");
    }
  }

  for (int o = 0; o < num_items(); ++o) {
    const bool reserved = item_ids_[o].rfind(kDummyIdPrefix, 0) == 0;
    if (reserved && !item_dummy_[o]) {
      add("reserved_item_id",
          "item id '" + item_ids_[o] + "' uses the reserved dummy prefix");
    }
    if (item_dummy_[o]) {
      for (int a = 0; a < num_agents(); ++a) {
        if (sgn(utility(a, o)) != 0) {
          add("dummy_nonzero_utility",
              "dummy item '" + item_ids_[o] + "' has nonzero utility for agent '" +
                  agents_[a] + "'");
        }
      }
    }
  }

  for (int a = 0; a < num_agents(); ++a) {
    for (int o = 0; o < num_items(); ++o) {
      if (!utility_present_[static_cast<std::size_t>(a) * num_items() + o]) {
        add("missing_utility", "no utility entry for agent '" + agents_[a] +
                                   "', item '" + item_ids_[o] + "'");
      }
    }
  }
  for (const auto& [agent, item] : unknown_utility_entries_) {
    add("unknown_utility_reference",
        "utility entry for undeclared pair ('" + agent + "', '" + item + "')");
  }

  return report;
}

void Instance::ensure_valid() const {
  ValidationReport report = validate();
  if (!report.ok()) {
    throw InvalidInstanceError("instance is invalid:\n" + report.summary());
  }
}

ValidationReport validate(const Instance& instance) {
  return instance.validate();
}

InstanceBuilder& InstanceBuilder::agents(std::vector<std::string> ids) {
  agents_ = std::move(ids);
  return *this;
}

InstanceBuilder& InstanceBuilder::category(std::string id, long capacity,
                                           std::vector<std::string> items) {
  categories_.push_back({std::move(id), capacity, std::move(items), {}});
  return *this;
}

InstanceBuilder& InstanceBuilder::utility_row(const std::string& agent,
                                              std::vector<Rational> values) {
  std::size_t k = 0;
  for (const auto& cat : categories_) {
    for (const auto& item : cat.items) {
      if (k >= values.size()) {
        throw std::invalid_argument("utility_row for '" + agent +
                                    "': too few values");
      }
      utilities_[agent][item] = values[k++];
    }
  }
  if (k != values.size()) {
    throw std::invalid_argument("utility_row for '" + agent +
                                "': too many values");
  }
  return *this;
}

InstanceBuilder& InstanceBuilder::utility(const std::string& agent,
                                          const std::string& item,
                                          Rational value) {
  utilities_[agent][item] = std::move(value);
  return *this;
}

Instance InstanceBuilder::build() const {
  return Instance(agents_, categories_, utilities_);
}

Allocation::Allocation(int num_agents, int num_items)
    : num_agents_(num_agents), owner_(num_items, kUnassigned) {}

void Allocation::assign(int item, int agent) {
  if (agent < 0 || agent >= num_agents_) {
    throw std::out_of_range("assign: agent index out of range");
  }
  owner_.at(item) = agent;
}

void Allocation::unassign(int item) { owner_.at(item) = kUnassigned; }

bool Allocation::is_complete() const {
  return std::none_of(owner_.begin(), owner_.end(),
                      [](int a) { return a == kUnassigned; });
}

std::vector<int> Allocation::bundle(int agent) const {
  std::vector<int> items;
  for (int o = 0; o < num_items(); ++o) {
    if (owner_[o] == agent) items.push_back(o);
  }
  return items;
}

int Allocation::bundle_size(int agent) const {
  return static_cast<int>(
      std::count(owner_.begin(), owner_.end(), agent));
}

Instance pad_with_dummies(const Instance& instance) {
  instance.ensure_valid();
  const int n = instance.num_agents();

  std::vector<std::string> agents;
  for (int a = 0; a < n; ++a) agents.push_back(instance.agent_id(a));

  std::vector<Instance::CategorySpec> categories;
  Instance::UtilityTable utilities;
  for (int c = 0; c < instance.num_categories(); ++c) {
    Instance::CategorySpec spec;
    spec.id = instance.category_id(c);
    spec.capacity = instance.capacity(c);
    for (int o : instance.category_items(c)) {
      spec.items.push_back(instance.item_id(o));
      spec.dummy.push_back(instance.is_dummy(o));
      for (int a = 0; a < n; ++a) {
        utilities[instance.agent_id(a)][instance.item_id(o)] =
            instance.utility(a, o);
      }
    }
    const long target = static_cast<long>(n) * spec.capacity;
    long missing = target - static_cast<long>(spec.items.size());
    for (long k = 0; k < missing; ++k) {
      std::string id = std::string(kDummyIdPrefix) + spec.id + "_" +
                       std::to_string(k);
      spec.items.push_back(id);
      spec.dummy.push_back(true);
      for (int a = 0; a < n; ++a) {
        utilities[instance.agent_id(a)][id] = Rational(0);
      }
    }
    categories.push_back(std::move(spec));
  }
  return Instance(std::move(agents), std::move(categories), utilities);
}

bool is_padded(const Instance& instance) {
  const long n = instance.num_agents();
  for (int c = 0; c < instance.num_categories(); ++c) {
    if (static_cast<long>(instance.category_items(c).size()) !=
        n * instance.capacity(c)) {
      return false;
    }
  }
  return true;
}

Allocation lift_to_padded(const Instance& padded, const Instance& original,
                          const Allocation& allocation) {
  Allocation out(padded.num_agents(), padded.num_items());
  for (int o = 0; o < original.num_items(); ++o) {
    auto in_padded = padded.find_item(original.item_id(o));
    if (!in_padded) {
      throw std::invalid_argument("lift_to_padded: item '" +
                                  original.item_id(o) +
                                  "' missing from padded instance");
    }
    if (o < allocation.num_items() &&
        allocation.owner(o) != Allocation::kUnassigned) {
      out.assign(*in_padded, allocation.owner(o));
    }
  }
  return out;
}

Allocation complete_with_dummies(const Instance& padded,
                                 const Allocation& allocation) {
  Allocation out(padded.num_agents(), padded.num_items());
  for (int o = 0; o < padded.num_items(); ++o) {
    if (o < allocation.num_items() && allocation.owner(o) != Allocation::kUnassigned) {
      out.assign(o, allocation.owner(o));
    }
  }
  for (int c = 0; c < padded.num_categories(); ++c) {
    std::vector<long> load(padded.num_agents(), 0);
    for (int o : padded.category_items(c)) {
      if (out.owner(o) != Allocation::kUnassigned) ++load[out.owner(o)];
    }
    for (int o : padded.category_items(c)) {
      if (out.owner(o) != Allocation::kUnassigned) continue;
      if (!padded.is_dummy(o)) continue;  // never invent owners for real items
      for (int a = 0; a < padded.num_agents(); ++a) {
        if (load[a] < padded.capacity(c)) {
          out.assign(o, a);
          ++load[a];
          break;
        }
      }
    }
  }
  return out;
}

Allocation strip_dummies(const Instance& padded, const Instance& original,
                         const Allocation& allocation) {
  Allocation out(original.num_agents(), original.num_items());
  for (int o = 0; o < original.num_items(); ++o) {
    auto in_padded = padded.find_item(original.item_id(o));
    if (!in_padded) {
      throw std::invalid_argument("strip_dummies: item '" +
                                  original.item_id(o) +
                                  "' missing from padded instance");
    }
    if (allocation.owner(*in_padded) != Allocation::kUnassigned) {
      out.assign(o, allocation.owner(*in_padded));
    }
  }
  return out;
}

bool is_same_sign(const Instance& instance) {
  for (int a = 0; a < instance.num_agents(); ++a) {
    for (int c = 0; c < instance.num_categories(); ++c) {
      int seen = 0;  // -1, 0, +1 as a running sign summary
      for (int o : instance.category_items(c)) {
        const int s = sgn(instance.utility(a, o));
        if (s == 0) continue;
        if (seen == 0) {
          seen = s;
        } else if (seen != s) {
          return false;
        }
      }
    }
  }
  return true;
}

Rational bundle_utility(const Instance& instance, int agent,
                        const std::vector<int>& items) {
  Rational total(0);
  for (int o : items) {
    total += instance.utility(agent, o);
  }
  return total;
}

Rational bundle_utility(const Instance& instance, int agent,
                        const Allocation& allocation) {
  Rational total(0);
  for (int o = 0; o < allocation.num_items(); ++o) {
    if (allocation.owner(o) == agent) {
      total += instance.utility(agent, o);
    }
  }
  return total;
}

ValidationReport check_feasibility(const Instance& instance,
                                   const Allocation& allocation) {
  ValidationReport report;
  for (int o = 0; o < instance.num_items(); ++o) {
    if (o >= allocation.num_items() ||
        allocation.owner(o) == Allocation::kUnassigned) {
      report.violations.push_back(
          {"unallocated_item",
           "item '" + instance.item_id(o) + "' is not assigned to any agent"});
    }
  }
  for (int c = 0; c < instance.num_categories(); ++c) {
    std::vector<long> load(instance.num_agents(), 0);
    for (int o : instance.category_items(c)) {
      if (o < allocation.num_items() &&
          allocation.owner(o) != Allocation::kUnassigned) {
        ++load[allocation.owner(o)];
      }
    }
    for (int a = 0; a < instance.num_agents(); ++a) {
      if (load[a] > instance.capacity(c)) {
        report.violations.push_back(
            {"capacity_exceeded",
             "agent '" + instance.agent_id(a) + "' holds " +
                 std::to_string(load[a]) + " items of category '" +
                 instance.category_id(c) + "' (capacity " +
                 std::to_string(instance.capacity(c)) + ")"});
      }
    }
  }
  return report;
}

bool is_feasible(const Instance& instance, const Allocation& allocation) {
  return check_feasibility(instance, allocation).ok();
}

}  // namespace capfair
