#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "p2g/types.hpp"

namespace p2g {

/// Undirected package-level adjacency. Nodes are the snapshot's package
/// universe; an edge A--B exists when A requires a capability that B
/// provides (or B's name equals the capability), in either direction.
/// Immutable after build; concurrent queries are safe.
struct DependencyGraph {
    std::vector<std::string> nodes;  // sorted package names
    std::unordered_map<std::string, int> node_ids;
    std::vector<std::vector<int>> adjacency;  // sorted neighbor ids, symmetric, no self-loops
    std::vector<std::pair<std::string, std::string>> unresolved;  // (package, capability)

    bool has_node(const std::string& name) const { return node_ids.count(name) != 0; }
    std::size_t edge_count() const;
};

DependencyGraph build_graph(const Snapshot& snapshot);

/// Shortest undirected path length in hops; std::nullopt when disconnected;
/// 0 iff a == b. Throws Error(unknown_node).
std::optional<int> shortest_hops(const DependencyGraph& graph, const std::string& a,
                                 const std::string& b);

/// 1 / shortest_hops, with 0 for disconnected pairs (the 1/inf convention).
/// Throws Error(unknown_node) and Error(same_package) when a == b.
double dependency_degree(const DependencyGraph& graph, const std::string& a,
                         const std::string& b);

}  // namespace p2g
