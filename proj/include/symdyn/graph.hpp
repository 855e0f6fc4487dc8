#pragma once

#include <cstddef>
#include <vector>

namespace symdyn {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct SccDecomposition {
  /// Components in reverse topological order of the condensation (sinks first);
  /// nodes inside each component are sorted ascending.
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> component_of;
};

SccDecomposition strongly_connected_components(const Adjacency& successors);

/// True iff the component carries a cycle: more than one node, or a self-loop.
bool component_has_cycle(const Adjacency& successors, const std::vector<std::size_t>& component);

/// Mask of nodes lying on some bi-infinite path: the fixed point of repeatedly
/// deleting nodes with no surviving successor or no surviving predecessor.
std::vector<bool> essential_mask(const Adjacency& successors);

Adjacency reverse_adjacency(const Adjacency& successors);

}  // namespace symdyn
