#include "symdyn/graph.hpp"

#include <algorithm>
#include <utility>

namespace symdyn {

SccDecomposition strongly_connected_components(const Adjacency& successors) {
  const std::size_t n = successors.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  SccDecomposition result;
  result.component_of.assign(n, 0);

  // Iterative Tarjan: frames hold (node, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < successors[v].size()) {
        const std::size_t w = successors[v][pos++];
        if (index[w] == unvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        std::sort(component.begin(), component.end());
        for (std::size_t node : component) result.component_of[node] = result.components.size();
        result.components.push_back(std::move(component));
      }
    }
  }
  return result;
}

bool component_has_cycle(const Adjacency& successors, const std::vector<std::size_t>& component) {
  if (component.size() > 1) return true;
  if (component.empty()) return false;
  const std::size_t v = component.front();
  return std::find(successors[v].begin(), successors[v].end(), v) != successors[v].end();
}

std::vector<bool> essential_mask(const Adjacency& successors) {
  const std::size_t n = successors.size();
  const Adjacency predecessors = reverse_adjacency(successors);
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> out_degree(n), in_degree(n);
  for (std::size_t v = 0; v < n; ++v) {
    out_degree[v] = successors[v].size();
    in_degree[v] = predecessors[v].size();
  }
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (out_degree[v] == 0 || in_degree[v] == 0) {
      alive[v] = false;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t w : successors[v]) {
      if (alive[w] && --in_degree[w] == 0) {
        alive[w] = false;
        queue.push_back(w);
      }
    }
    for (std::size_t u : predecessors[v]) {
      if (alive[u] && --out_degree[u] == 0) {
        alive[u] = false;
        queue.push_back(u);
      }
    }
  }
  return alive;
}

Adjacency reverse_adjacency(const Adjacency& successors) {
  Adjacency predecessors(successors.size());
  for (std::size_t v = 0; v < successors.size(); ++v) {
    for (std::size_t w : successors[v]) predecessors[w].push_back(v);
  }
  return predecessors;
}

}  // namespace symdyn
