#include "graph.hpp"

#include <algorithm>

namespace hyperltl::detail {

Sccs tarjan(const Adjacency& adj, const std::vector<std::uint32_t>& roots)
{
    const std::size_t n = adj.size();
    Sccs out;
    out.comp.assign(n, -1);
    std::vector<int> index(n, -1);
    std::vector<int> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    int counter = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::uint32_t root : roots) {
        if (index[root] != -1)
            continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            Frame& fr = call.back();
            const std::uint32_t v = fr.v;
            if (fr.next < adj[v].size()) {
                const std::uint32_t w = adj[v][fr.next++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                const int id = out.count++;
                bool cyclic = false;
                std::size_t size = 0;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.comp[w] = id;
                    ++size;
                } while (w != v);
                if (size > 1) {
                    cyclic = true;
                } else {
                    cyclic = std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
                }
                out.nontrivial.push_back(cyclic);
            }
            call.pop_back();
            if (!call.empty()) {
                const std::uint32_t parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return out;
}

std::vector<bool> reachable(const Adjacency& adj, const std::vector<std::uint32_t>& roots)
{
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::uint32_t> todo;
    for (auto r : roots)
        if (!seen[r]) {
            seen[r] = true;
            todo.push_back(r);
        }
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
    }
    return seen;
}

std::vector<bool> backward_reachable(const Adjacency& adj, const std::vector<bool>& targets)
{
    Adjacency rev(adj.size());
    for (std::uint32_t v = 0; v < adj.size(); ++v)
        for (auto w : adj[v])
            rev[w].push_back(v);
    std::vector<std::uint32_t> roots;
    for (std::uint32_t v = 0; v < targets.size(); ++v)
        if (targets[v])
            roots.push_back(v);
    return reachable(rev, roots);
}

} // namespace hyperltl::detail
