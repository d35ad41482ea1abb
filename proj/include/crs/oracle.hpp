#pragma once

#include <vector>

#include "crs/graph.hpp"

namespace crs {

// Exact all-pairs ground truth. Ties among equal-weight shortest paths are
// broken by the lexicographically smallest predecessor id, so hop counts and
// parent chains are deterministic.
struct OracleTables {
    int n = 0;
    std::vector<std::vector<Dist>> dist;      // dist[s][v]
    std::vector<std::vector<int>> hops;       // hops along the tie-broken path
    std::vector<std::vector<VertexId>> parent;  // parent[s][v], -1 at s

    Dist d(VertexId u, VertexId v) const { return dist[u][v]; }
    int h(VertexId u, VertexId v) const { return hops[u][v]; }

    // d_G(v, A) over a vertex set, with the attaining vertex (smallest id on
    // ties); {kInf, -1} for an empty set.
    std::pair<Dist, VertexId> dist_to_set(VertexId v, const std::vector<VertexId>& set) const;

    static OracleTables build(const WeightedGraph& g);

    std::string to_json() const;
};

// Exact hop-bounded multi-source distances d_G^{(B)}(s, v) with per-source
// parent pointers (the first hop toward s of the canonical optimal walk:
// minimum weight, then minimum hops, then smallest predecessor id).
struct HopBoundedResult {
    std::vector<VertexId> sources;
    long long B = 0;
    std::vector<std::vector<Dist>> d;           // d[si][v]
    std::vector<std::vector<VertexId>> parent;  // parent[si][v], -1 at source/unreached
};

HopBoundedResult hop_bounded_dist(const WeightedGraph& g, const std::vector<VertexId>& sources,
                                  long long B);

}  // namespace crs
