#include "p2g/depgraph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "p2g/errors.hpp"

namespace p2g {

namespace {

int node_or_throw(const DependencyGraph& graph, const std::string& name) {
    auto it = graph.node_ids.find(name);
    if (it == graph.node_ids.end())
        throw Error(Errc::unknown_node, "package '" + name + "' is not in the graph");
    return it->second;
}

}  // namespace

std::size_t DependencyGraph::edge_count() const {
    std::size_t degree_sum = 0;
    for (const auto& neighbors : adjacency) degree_sum += neighbors.size();
    return degree_sum / 2;
}

DependencyGraph build_graph(const Snapshot& snapshot) {
    DependencyGraph graph;
    graph.nodes.reserve(snapshot.packages.size());
    for (const auto& pkg : snapshot.packages) graph.nodes.push_back(pkg.name);
    std::sort(graph.nodes.begin(), graph.nodes.end());
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
        graph.node_ids.emplace(graph.nodes[i], static_cast<int>(i));
    graph.adjacency.assign(graph.nodes.size(), {});

    // capability -> provider node ids
    std::unordered_map<std::string, std::vector<int>> providers;
    for (const auto& pkg : snapshot.packages) {
        int id = graph.node_ids.at(pkg.name);
        for (const auto& cap : pkg.provides) providers[cap].push_back(id);
    }

    std::vector<std::set<int>> neighbor_sets(graph.nodes.size());
    std::set<std::pair<std::string, std::string>> unresolved;
    for (const auto& pkg : snapshot.packages) {
        int a = graph.node_ids.at(pkg.name);
        for (const auto& cap : pkg.requires_) {
            bool found = false;
            if (auto it = providers.find(cap); it != providers.end()) {
                found = true;
                for (int b : it->second)
                    if (b != a) {
                        neighbor_sets[a].insert(b);
                        neighbor_sets[b].insert(a);
                    }
            }
            // RPM requires often name the package itself
            if (auto it = graph.node_ids.find(cap); it != graph.node_ids.end()) {
                found = true;
                if (it->second != a) {
                    neighbor_sets[a].insert(it->second);
                    neighbor_sets[it->second].insert(a);
                }
            }
            if (!found) unresolved.emplace(pkg.name, cap);
        }
    }
    for (std::size_t i = 0; i < neighbor_sets.size(); ++i)
        graph.adjacency[i].assign(neighbor_sets[i].begin(), neighbor_sets[i].end());
    graph.unresolved.assign(unresolved.begin(), unresolved.end());
    return graph;
}

std::optional<int> shortest_hops(const DependencyGraph& graph, const std::string& a,
                                 const std::string& b) {
    int src = node_or_throw(graph, a);
    int dst = node_or_throw(graph, b);
    if (src == dst) return 0;
    std::vector<int> distance(graph.nodes.size(), -1);
    distance[src] = 0;
    std::deque<int> queue{src};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : graph.adjacency[u]) {
            if (distance[v] != -1) continue;
            distance[v] = distance[u] + 1;
            if (v == dst) return distance[v];
            queue.push_back(v);
        }
    }
    return std::nullopt;
}

double dependency_degree(const DependencyGraph& graph, const std::string& a,
                         const std::string& b) {
    if (a == b) throw Error(Errc::same_package, "dependency degree of '" + a + "' with itself");
    auto hops = shortest_hops(graph, a, b);
    if (!hops) return 0.0;
    return 1.0 / static_cast<double>(*hops);
}

}  // namespace p2g
