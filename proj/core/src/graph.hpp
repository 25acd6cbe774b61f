#pragma once

// Small explicit-graph helpers shared by the automata and oracle code.

#include <cstdint>
#include <functional>
#include <vector>

namespace hyperltl::detail {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

/// Strongly connected components (iterative Tarjan). comp[v] is the component id,
/// components are numbered in reverse topological order. Only vertices reachable
/// from `roots` are visited; others get comp = -1.
struct Sccs {
    std::vector<int> comp;
    std::vector<bool> nontrivial; // per component: contains a cycle
    int count = 0;
};

Sccs tarjan(const Adjacency& adj, const std::vector<std::uint32_t>& roots);

/// Vertices reachable from roots.
std::vector<bool> reachable(const Adjacency& adj, const std::vector<std::uint32_t>& roots);

/// Vertices that can reach some vertex in `targets`.
std::vector<bool> backward_reachable(const Adjacency& adj, const std::vector<bool>& targets);

} // namespace hyperltl::detail
