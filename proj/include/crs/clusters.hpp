#pragma once

#include <map>
#include <string>
#include <vector>

#include "crs/hierarchy.hpp"
#include "crs/primitives.hpp"

namespace crs {

// Per-vertex pivot estimates toward each level set. Levels up to
// ceil(k/2) are exact; higher levels carry a (1+eps) estimate.
struct PivotTable {
    int k = 0;
    std::vector<std::vector<Dist>> dhat;      // dhat[i][v], i = 0..k-1
    std::vector<std::vector<VertexId>> zhat;  // zhat[i][v], -1 when the level is empty
    std::vector<bool> exact;                  // per level
    std::vector<bool> empty_level;            // reported, not fatal

    // dhat toward A_i with i >= k (or an empty level) is infinite
    Dist dhat_at(int i, VertexId v) const {
        if (i >= k) return kInf;
        return dhat[i][v];
    }
    VertexId zhat_at(int i, VertexId v) const {
        if (i >= k) return -1;
        return zhat[i][v];
    }
};

PivotTable compute_pivots(const WeightedGraph& g, const LevelHierarchy& h, const Rational& eps,
                          uint64_t seed, const SourceDetectionFn& sd_fn,
                          const HopsetConfig& hopset_cfg, RoundLedger& ledger,
                          long long beta_override = -1);

struct ClusterMember {
    Dist b = 0;           // distance estimate to the root
    VertexId parent = -1; // neighbor of the member in the graph, -1 at the root
    int port = -1;        // port toward parent
};

// Rooted approximate-cluster tree: members with estimates b_v and parent
// pointers along real graph edges.
struct ClusterTree {
    VertexId root = -1;
    int level = 0;
    std::map<VertexId, ClusterMember> members;

    bool contains(VertexId v) const { return members.count(v) != 0; }
    Dist b_of(VertexId v) const {
        auto it = members.find(v);
        return it == members.end() ? kInf : it->second.b;
    }
};

struct SmallTreeResult {
    std::vector<ClusterTree> trees;
    // parent-chain hop counts must stay within the per-level iteration
    // budget; anything beyond is a construction bug, not clamped
    long long budget_violations = 0;
    long long max_chain_hops = 0;
};

// Exact clusters for levels i < ceil(k/2), excluding the middle level when
// k is odd. Members carry exact b_v(u) = d_G(u,v).
SmallTreeResult build_small_trees(const WeightedGraph& g, const LevelHierarchy& h,
                                  const PivotTable& pivots, RoundLedger& ledger);

// Middle level i = (k-1)/2 for odd k, built from one multi-source
// hop-bounded computation over S = A_i \ A_{i+1}.
std::vector<ClusterTree> build_middle_trees(const WeightedGraph& g, const LevelHierarchy& h,
                                            const PivotTable& pivots, const Rational& eps,
                                            const SourceDetectionFn& sd_fn, RoundLedger& ledger);

// Shared preprocessing for the high levels: distances among V' = A_{ceil(k/2)},
// the virtual graph on V', and its path-reporting hopset.
struct LargePreprocess {
    std::vector<VertexId> vprime;
    long long B = 0;
    SourceDetectionResult sd;   // run with eps/2
    VirtualGraph gp;
    PathReportingHopset hopset; // built with eps/3
    VirtualGraph gpp;
    long long beta = 1;
};

LargePreprocess preprocess_large(const WeightedGraph& g, const LevelHierarchy& h,
                                 const Rational& eps, const SourceDetectionFn& sd_fn,
                                 const HopsetConfig& hopset_cfg, RoundLedger& ledger,
                                 long long beta_override = -1);

// Levels i >= ceil(k/2): virtual trees on V' (phase 1), hopset-path repair
// of virtual parents (phase 1.5), then extension to all of V (phase 2).
std::vector<ClusterTree> build_large_trees(const WeightedGraph& g, const LevelHierarchy& h,
                                           const PivotTable& pivots, const LargePreprocess& pre,
                                           const Rational& eps, RoundLedger& ledger);

struct OverlapCensus {
    long long max_count = 0;
    std::map<long long, long long> histogram;  // membership count -> #vertices
};

OverlapCensus overlap_census(const std::vector<ClusterTree>& trees, int n);

std::string cluster_tree_to_json(const ClusterTree& t);

}  // namespace crs
