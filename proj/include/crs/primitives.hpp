#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crs/graph.hpp"
#include "crs/ledger.hpp"
#include "crs/rational.hpp"

namespace crs {

// Multi-source hop-bounded approximate distances with parent pointers.
// Contract: d^{(B)}_G(u,v) <= d_uv <= (1+eps) d^{(B)}_G(u,v); values are
// symmetric between sources; d_uv >= w(u,p) + d_pv for the reported parent.
struct SourceDetectionResult {
    std::vector<VertexId> sources;
    std::unordered_map<VertexId, int> source_index;
    long long B = 0;
    Rational eps;
    std::vector<std::vector<Dist>> d;           // d[si][u]
    std::vector<std::vector<VertexId>> parent;  // parent[si][u] (neighbor of u), -1 at source

    Dist dist(VertexId u, VertexId source) const { return d[source_index.at(source)][u]; }
    VertexId parent_toward(VertexId u, VertexId source) const {
        return parent[source_index.at(source)][u];
    }
};

using SourceDetectionFn = std::function<SourceDetectionResult(
    const WeightedGraph&, const std::vector<VertexId>&, long long B, const Rational& eps,
    RoundLedger&)>;

// Reference implementation: exact hop-bounded distances (eps_actual = 0,
// which satisfies any (1+eps) contract). Ledger charged per the contract
// formula (|sources| + B + D) / eps.
SourceDetectionResult source_detection_reference(const WeightedGraph& g,
                                                 const std::vector<VertexId>& sources, long long B,
                                                 const Rational& eps, RoundLedger& ledger);

// Plugin used by the substitutability tests: exact computation on a copy of
// the graph whose edge weights are independently inflated by a seeded factor
// in [1, 1+eps]. Every path inflates by at most (1+eps), so the contract and
// the parent inequality hold, and values stay symmetric.
SourceDetectionFn make_noisy_source_detection(uint64_t noise_seed);

// Virtual graph on a vertex subset; weights dominate true distances.
// Vertices are addressed by local index into verts.
struct VirtualGraph {
    std::vector<VertexId> verts;
    std::unordered_map<VertexId, int> index;
    std::vector<std::vector<std::pair<int, Dist>>> adj;  // (local idx, weight), sorted by idx

    int size() const { return static_cast<int>(verts.size()); }
    // exact Dijkstra inside the virtual graph, smallest-id tie-break parents
    void dijkstra(int src, std::vector<Dist>& dist, std::vector<int>& parent) const;
};

// G' from the source-detection values: edge (u,v) for u,v in V' iff
// d_uv < infinity, weight w'(u,v) = d_uv.
VirtualGraph build_virtual_graph(const SourceDetectionResult& sd);

struct HopsetEdge {
    int x = 0, y = 0;             // local indices in the host virtual graph
    Dist b = 0;                   // edge weight = realized path weight
    std::vector<int> path;        // vertices of the realizing path in the host, x..y
    std::vector<Dist> prefix;     // prefix[i] = d_P(x, path[i])
};

struct PathReportingHopset {
    std::vector<HopsetEdge> edges;
    long long beta = 1;   // declared hop bound
    Rational eps_actual;  // 0 for the reference-complete implementation
};

struct HopsetConfig {
    bool reference_complete = true;
    double beta_exponent_c = 1.0;  // exponent constant for the declared-beta ledger formula
};

// Ledger-only: the contract's beta, min{(log n)^{c k}, 2^{c sqrt(log n)}}.
long long declared_beta_formula(int n, int k, double c);

// Reference-complete path-reporting hopset: one edge per finite-distance
// pair, realized by the exact shortest path in the host graph.
PathReportingHopset build_hopset(const VirtualGraph& host, const Rational& eps, int n, int k,
                                 const HopsetConfig& cfg, RoundLedger& ledger);

// G'' = host + hopset edges; on weight conflict the hopset weight wins.
VirtualGraph augment(const VirtualGraph& host, const PathReportingHopset& hopset);

struct ApproxSptResult {
    std::vector<Dist> dhat;      // per graph vertex
    std::vector<VertexId> zhat;  // root-set vertex with d_G(v, zhat(v)) <= dhat(v); -1 if none
};

// (1+eps)-approximate SPT rooted at A: sample X w.p. 1/sqrt(n), build G'' on
// A u X, run beta Bellman-Ford iterations rooted at A, extend to V via
// dhat(u) = min_v { d_uv + dhat(v) }. Requires |A| <= 2 sqrt(n) ln n.
ApproxSptResult approx_spt(const WeightedGraph& g, const std::vector<VertexId>& A,
                           const Rational& eps, int k, uint64_t seed,
                           const SourceDetectionFn& sd_fn, const HopsetConfig& hopset_cfg,
                           RoundLedger& ledger, long long beta_override = -1);

std::string hopset_to_json(const VirtualGraph& host, const PathReportingHopset& h);

}  // namespace crs
