#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace termfuse::detail {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Strongly connected components (iterative Tarjan). Components come out in
// reverse topological order; members of each component are sorted.
inline std::vector<std::vector<std::size_t>> strongly_connected(const Adjacency& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> calls;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    calls.emplace_back(root, 0);
    while (!calls.empty()) {
      const std::size_t u = calls.back().first;
      const std::size_t i = calls.back().second;
      if (i < adj[u].size()) {
        ++calls.back().second;
        const std::size_t w = adj[u][i];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[u] = std::min(low[u], index[w]);
        }
        continue;
      }
      if (low[u] == index[u]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != u);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      calls.pop_back();
      if (!calls.empty()) {
        const std::size_t parent = calls.back().first;
        low[parent] = std::min(low[parent], low[u]);
      }
    }
  }
  return components;
}

inline bool is_cyclic(const Adjacency& adj, const std::vector<std::size_t>& component) {
  if (component.size() > 1) return true;
  const auto v = component.front();
  return std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
}

}  // namespace termfuse::detail
