#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "crs/common.hpp"

namespace crs {

struct AdjEntry {
    VertexId to;
    Dist w;
};

// Undirected, connected, positive integer weights. Adjacency lists are
// sorted by neighbor id; the port number of a neighbor is its index in the
// sorted list. Immutable after construction.
class WeightedGraph {
  public:
    static WeightedGraph from_edges(int n, std::vector<std::tuple<VertexId, VertexId, Dist>> edges);
    static WeightedGraph load(std::istream& in);
    static WeightedGraph load_file(const std::string& path);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    const std::vector<AdjEntry>& neighbors(VertexId u) const { return adj_[u]; }
    const std::vector<std::tuple<VertexId, VertexId, Dist>>& edges() const { return edges_; }

    // Port p at u is the p-th entry of u's sorted adjacency list.
    VertexId neighbor_at(VertexId u, int port) const { return adj_[u][port].to; }
    int port_of(VertexId u, VertexId v) const;      // -1 if not adjacent
    Dist edge_weight(VertexId u, VertexId v) const; // kInf if not adjacent
    bool adjacent(VertexId u, VertexId v) const { return port_of(u, v) >= 0; }

    int hop_diameter() const;  // computed once, cached

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;

  private:
    WeightedGraph() = default;
    int n_ = 0;
    std::vector<std::tuple<VertexId, VertexId, Dist>> edges_;  // u < v
    std::vector<std::vector<AdjEntry>> adj_;
    mutable int hop_diameter_ = -1;
};

enum class GraphModel { ErdosRenyi, RandomGeometric, GridRandomWeights };

struct GenParams {
    double p = 0.1;        // erdos-renyi edge probability
    double radius = 0.3;   // random-geometric connection radius
    int rows = 0;          // grid dimensions; 0 means derive from n
    int cols = 0;
    Dist max_weight = 100; // weights uniform in [1, max_weight]
    int retries = 50;      // connectivity retry bound
};

WeightedGraph generate_graph(GraphModel model, int n, const GenParams& params, uint64_t seed);

// A spanning tree of g (used by tree-routing tests): parent[v] per vertex,
// parent[root] = -1. Built by randomized Prim order, deterministic per seed.
std::vector<VertexId> random_spanning_tree(const WeightedGraph& g, VertexId root, uint64_t seed);

bool is_connected(int n, const std::vector<std::tuple<VertexId, VertexId, Dist>>& edges);

}  // namespace crs
