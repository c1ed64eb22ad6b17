#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mse::graph {

using Adjacency = std::vector<std::vector<int>>;

/// Kahn topological order; nullopt when the digraph has a cycle.
inline std::optional<std::vector<int>> topological_order(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> indegree(n, 0);
  for (const auto& out : adj)
    for (int v : out) ++indegree[v];

  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) stack.push_back(v);

  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int v : adj[u])
      if (--indegree[v] == 0) stack.push_back(v);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

/// Extracts one directed cycle v0 -> v1 -> ... -> vk -> v0 as {v0,...,vk}.
/// Precondition: the graph has a cycle.
inline std::vector<int> find_cycle(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  enum { White, Gray, Black };
  std::vector<int> color(n, White), parent(n, -1);
  int cycle_head = -1, cycle_tail = -1;

  // Iterative DFS that remembers the gray->gray edge closing a cycle.
  for (int root = 0; root < n && cycle_head < 0; ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    color[root] = Gray;
    while (!stack.empty() && cycle_head < 0) {
      auto& [u, next] = stack.back();
      if (next < adj[u].size()) {
        int v = adj[u][next++];
        if (color[v] == White) {
          color[v] = Gray;
          parent[v] = u;
          stack.emplace_back(v, 0);
        } else if (color[v] == Gray) {
          cycle_head = v;
          cycle_tail = u;
        }
      } else {
        color[u] = Black;
        stack.pop_back();
      }
    }
  }

  std::vector<int> cycle;
  if (cycle_head < 0) return cycle;
  for (int v = cycle_tail; v != cycle_head; v = parent[v]) cycle.push_back(v);
  cycle.push_back(cycle_head);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

/// reach[u][v] != 0 iff v is reachable from u along a non-empty path.
inline std::vector<std::vector<std::uint8_t>> reachability(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<std::uint8_t>> reach(n, std::vector<std::uint8_t>(n, 0));
  std::vector<int> stack;
  for (int u = 0; u < n; ++u) {
    auto& row = reach[u];
    stack.assign(adj[u].begin(), adj[u].end());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (row[v]) continue;
      row[v] = 1;
      for (int w : adj[v])
        if (!row[w]) stack.push_back(w);
    }
  }
  return reach;
}

}  // namespace mse::graph
