#pragma once

#include <map>
#include <string>
#include <vector>

#include "crs/graph.hpp"
#include "crs/ledger.hpp"

namespace crs {

// A rooted tree whose edges are graph edges; parent[root] = -1.
struct TreeSubgraph {
    VertexId root = -1;
    std::map<VertexId, VertexId> parent;
};

// Label for routing inside one subtree T_w: the DFS entry time plus the
// (vertex, port) list of non-heavy edges on the w-to-v path.
struct LocalLabel {
    int a = 0;
    std::vector<std::pair<VertexId, int>> edges;

    long long words() const { return 1 + 2 * static_cast<long long>(edges.size()); }
};

// One non-heavy edge (v_i, w_i) of the virtual-tree path, with the local
// label of the portal x_i (parent of w_i in T) and the port x_i -> w_i.
struct GlobalEntry {
    VertexId vi = -1;
    VertexId wi = -1;
    LocalLabel portal_label;
    int portal_port = -1;

    long long words() const { return 3 + portal_label.words(); }
};

struct TreeTable {
    VertexId self = -1;
    VertexId tree_parent = -1;  // parent in T, -1 at the tree root
    int parent_port = -1;
    VertexId heavy = -1;  // heavy child within the subtree, -1 at leaves
    int heavy_port = -1;
    int a = 0, b = 0;        // subtree DFS interval [a, b)
    VertexId sub_root = -1;  // w with self in T_w

    // replicated from the subtree root: virtual-tree interval of w, its
    // heavy virtual child and the portal leading to it
    int ga = 0, gb = 0;
    VertexId heavy_tchild = -1;
    LocalLabel portal_label;
    int portal_port = -1;

    long long words() const { return 11 + portal_label.words(); }
};

struct TreeLabel {
    VertexId self = -1;
    LocalLabel local;                  // within T_{w(self)}
    int ga = 0;                        // virtual-tree entry time of w(self)
    std::vector<GlobalEntry> global;   // non-heavy virtual edges, root to w(self)

    long long words() const {
        long long w = 2 + local.words();
        for (const auto& e : global) w += e.words();
        return w;
    }
};

struct TreeRoutingBundle {
    VertexId root = -1;
    long long B = 0;  // subtree depth bound ceil(4n/gamma * ln n)
    long long max_subtree_depth = 0;
    bool depth_ok = true;
    std::map<VertexId, TreeTable> tables;
    std::map<VertexId, TreeLabel> labels;
    long long max_table_words = 0;
    long long max_label_words = 0;

    // broadcast structure of each subtree, used by the strict-mode
    // staggered simulation
    std::vector<BroadcastTree> subtree_broadcasts;
};

// Two-level scheme: sample portals U with probability gamma/n, split T into
// subtrees at U(T) = (U cap V(T)) u {root}, interval-route inside subtrees
// and TZ-route on the virtual tree of portals.
TreeRoutingBundle build_tree_routing(const WeightedGraph& g, const TreeSubgraph& t, double gamma,
                                     uint64_t seed, RoundLedger& ledger);

struct TreeStep {
    bool arrived = false;
    int port = -1;
};

// Stateless next-hop decision from the current vertex's table and the
// destination label only.
TreeStep tree_route_step(const TreeTable& table, const TreeLabel& label);

// Full route between two tree vertices; returns the vertex sequence.
std::vector<VertexId> tree_route(const WeightedGraph& g, const TreeRoutingBundle& b, VertexId u,
                                 VertexId v);

struct ParallelBuildResult {
    std::vector<TreeRoutingBundle> bundles;
    long long s = 1;  // measured max trees per vertex
    double gamma = 0;
    StaggerResult stagger;  // strict mode only; zeros otherwise
};

uint64_t derive_tree_seed(uint64_t seed, size_t tree_index);

// All trees at once with per-tree derived seeds; outputs are bit-identical
// to sequential single-tree builds. In strict mode the staggered broadcast
// is simulated and congestion violations reported.
ParallelBuildResult build_all_trees_parallel(const WeightedGraph& g,
                                             const std::vector<TreeSubgraph>& trees, int alpha,
                                             uint64_t seed, bool strict, RoundLedger& ledger);

std::string tree_bundle_to_json(const TreeRoutingBundle& b);

}  // namespace crs
