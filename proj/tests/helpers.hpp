#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "capfair/instance.hpp"

namespace capfair::testing {

// Builds a (possibly partial) allocation from per-agent item-id lists.
inline Allocation allocation_from_ids(
    const Instance& instance,
    std::initializer_list<std::vector<std::string>> bundles) {
  Allocation allocation(instance.num_agents(), instance.num_items());
  int agent = 0;
  for (const auto& bundle : bundles) {
    for (const auto& id : bundle) {
      auto item = instance.find_item(id);
      if (!item) throw std::runtime_error("test bundle names unknown item " + id);
      allocation.assign(*item, agent);
    }
    ++agent;
  }
  return allocation;
}

// Item ids of one agent's bundle, for readable assertions.
inline std::vector<std::string> bundle_ids(const Instance& instance,
                                           const Allocation& allocation,
                                           int agent) {
  std::vector<std::string> ids;
  for (int item : allocation.bundle(agent)) {
    ids.push_back(instance.item_id(item));
  }
  return ids;
}

}  // namespace capfair::testing
