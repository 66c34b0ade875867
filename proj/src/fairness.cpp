#include "capfair/fairness.hpp"

#include <algorithm>

namespace capfair {

bool EnvyGraph::has_edge(int from, int to) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(from, to)) !=
         edges.end();
}

std::vector<int> EnvyGraph::out_neighbors(int from) const {
  std::vector<int> out;
  for (const auto& [s, t] : edges) {
    if (s == from) out.push_back(t);
  }
  return out;
}

std::vector<int> EnvyGraph::sinks() const {
  std::vector<bool> has_out(num_agents, false);
  for (const auto& [s, t] : edges) has_out[s] = true;
  std::vector<int> result;
  for (int a = 0; a < num_agents; ++a) {
    if (!has_out[a]) result.push_back(a);
  }
  return result;
}

bool EnvyGraph::has_cycle() const {
  // Colors: 0 = unvisited, 1 = on stack, 2 = done.
  std::vector<int> color(num_agents, 0);
  std::vector<std::vector<int>> adj(num_agents);
  for (const auto& [s, t] : edges) adj[s].push_back(t);

  for (int root = 0; root < num_agents; ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < adj[node].size()) {
        int child = adj[node][next++];
        if (color[child] == 1) return true;
        if (color[child] == 0) {
          color[child] = 1;
          stack.emplace_back(child, 0);
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

namespace {

// Utility of every agent's view of every bundle: views[i][j] = u_i(A_j).
std::vector<std::vector<Rational>> bundle_views(const Instance& instance,
                                                const Allocation& allocation) {
  const int n = instance.num_agents();
  std::vector<std::vector<Rational>> views(
      n, std::vector<Rational>(n, Rational(0)));
  for (int o = 0; o < allocation.num_items(); ++o) {
    const int holder = allocation.owner(o);
    if (holder == Allocation::kUnassigned) continue;
    for (int i = 0; i < n; ++i) {
      views[i][holder] += instance.utility(i, o);
    }
  }
  return views;
}

}  // namespace

EnvyGraph envy_graph(const Instance& instance, const Allocation& allocation) {
  const int n = instance.num_agents();
  const auto views = bundle_views(instance, allocation);
  EnvyGraph graph{n, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && cmp(views[i][j], views[i][i]) > 0) {
        graph.edges.emplace_back(i, j);
      }
    }
  }
  return graph;
}

EnvyGraph top_trading_graph(const Instance& instance,
                            const Allocation& allocation) {
  const int n = instance.num_agents();
  const auto views = bundle_views(instance, allocation);
  EnvyGraph graph{n, {}};
  for (int i = 0; i < n; ++i) {
    Rational best = views[i][0];
    for (int j = 1; j < n; ++j) {
      if (cmp(views[i][j], best) > 0) best = views[i][j];
    }
    if (cmp(best, views[i][i]) <= 0) continue;  // own bundle already maximal
    for (int k = 0; k < n; ++k) {
      if (k != i && cmp(views[i][k], best) == 0) {
        graph.edges.emplace_back(i, k);
      }
    }
  }
  return graph;
}

std::string to_string(FairnessProperty property) {
  switch (property) {
    case FairnessProperty::EF: return "ef";
    case FairnessProperty::EF1: return "ef1";
    case FairnessProperty::EF11: return "ef11";
    case FairnessProperty::EF11U: return "ef11u";
  }
  return "";
}

std::optional<FairnessProperty> fairness_property_from_string(
    std::string_view name) {
  if (name == "ef") return FairnessProperty::EF;
  if (name == "ef1") return FairnessProperty::EF1;
  if (name == "ef11") return FairnessProperty::EF11;
  if (name == "ef11u") return FairnessProperty::EF11U;
  return std::nullopt;
}

std::vector<std::pair<int, int>> FairnessVerdict::violating_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  for (const PairCertificate& c : certificates) {
    if (!c.satisfied) pairs.emplace_back(c.envious, c.envied);
  }
  return pairs;
}

namespace {

// Searches a certificate for one ordered pair.  The search prefers the
// smallest certificate: no removal, then a single removal from the envious
// agent's bundle, then a single removal from the other bundle, then (for the
// two-removal properties) item pairs in lexicographic order.
PairCertificate check_pair(const Instance& instance,
                           const Allocation& allocation, int i, int j,
                           const Rational& own, const Rational& other,
                           FairnessProperty property) {
  PairCertificate cert;
  cert.envious = i;
  cert.envied = j;

  if (cmp(own, other) >= 0) {  // no envy; certificate needs no removals
    cert.satisfied = true;
    return cert;
  }
  if (property == FairnessProperty::EF) {
    return cert;
  }

  const std::vector<int> own_items = allocation.bundle(i);
  const std::vector<int> other_items = allocation.bundle(j);

  for (int t : own_items) {
    if (cmp(own - instance.utility(i, t), other) >= 0) {
      cert.satisfied = true;
      cert.removed_from_own = t;
      return cert;
    }
  }
  for (int g : other_items) {
    if (cmp(own, other - instance.utility(i, g)) >= 0) {
      cert.satisfied = true;
      cert.removed_from_other = g;
      return cert;
    }
  }
  if (property == FairnessProperty::EF1) {
    return cert;
  }

  const bool same_category_required = property == FairnessProperty::EF11;
  for (int t : own_items) {
    for (int g : other_items) {
      if (same_category_required &&
          instance.item_category(t) != instance.item_category(g)) {
        continue;
      }
      if (cmp(own - instance.utility(i, t),
              other - instance.utility(i, g)) >= 0) {
        cert.satisfied = true;
        cert.removed_from_own = t;
        cert.removed_from_other = g;
        return cert;
      }
    }
  }
  return cert;
}

}  // namespace

FairnessVerdict check(const Instance& instance, const Allocation& allocation,
                      FairnessProperty property) {
  const int n = instance.num_agents();
  const auto views = bundle_views(instance, allocation);

  FairnessVerdict verdict;
  verdict.property = property;
  verdict.holds = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      PairCertificate cert = check_pair(instance, allocation, i, j,
                                        views[i][i], views[i][j], property);
      verdict.holds = verdict.holds && cert.satisfied;
      verdict.certificates.push_back(std::move(cert));
    }
  }
  return verdict;
}

bool is_pareto_improvement(const Instance& instance, const Allocation& from,
                           const Allocation& to) {
  bool strict = false;
  for (int a = 0; a < instance.num_agents(); ++a) {
    const int c = cmp(bundle_utility(instance, a, to),
                      bundle_utility(instance, a, from));
    if (c < 0) return false;
    if (c > 0) strict = true;
  }
  return strict;
}

}  // namespace capfair
