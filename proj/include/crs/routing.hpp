#pragma once

#include <map>
#include <string>
#include <vector>

#include "crs/clusters.hpp"
#include "crs/tree_routing.hpp"

namespace crs {

struct NodeLabelEntry {
    VertexId root = -1;  // approximate i-pivot of the vertex, -1 if the level is empty
    bool missing = true; // the vertex is not a member of that pivot's tree
    TreeLabel tlabel;    // valid only when !missing

    long long words() const { return 2 + (missing ? 0 : tlabel.words()); }
};

// Label of v: one entry per level 0..k-1, toward the tree of each pivot.
struct NodeLabel {
    VertexId v = -1;
    std::vector<NodeLabelEntry> entries;

    long long words() const {
        long long w = 0;
        for (const auto& e : entries) w += e.words();
        return w;
    }
};

// Distance-estimation sketch: (root, b) per containing tree plus the pivot
// rows.
struct Sketch {
    VertexId v = -1;
    std::map<VertexId, Dist> tree_pairs;
    std::vector<std::pair<VertexId, Dist>> pivot_pairs;  // (zhat_i, dhat_i)

    long long entries() const {
        return static_cast<long long>(tree_pairs.size() + pivot_pairs.size());
    }
};

struct RoutingArtifacts {
    int k = 1;
    Rational eps;
    bool trick = false;
    LevelHierarchy hierarchy;
    PivotTable pivots;
    std::vector<ClusterTree> trees;
    std::vector<TreeRoutingBundle> bundles;  // aligned with trees
    std::map<VertexId, size_t> root_index;   // tree root -> index
    std::vector<std::vector<size_t>> trees_of;  // per vertex, tree indices
    std::vector<NodeLabel> labels;
    std::vector<Sketch> sketches;

    long long max_table_words = 0;  // per-vertex: tree tables + pivot rows, no trick store
    long long max_label_words = 0;
    long long max_sketch_entries = 0;
    long long max_trick_words = 0;  // additional stored labels at level-0 roots
    double mean_table_words = 0;
    double mean_label_words = 0;

    const ClusterTree& tree_of_root(VertexId root) const { return trees[root_index.at(root)]; }
    const TreeRoutingBundle& bundle_of_root(VertexId root) const {
        return bundles[root_index.at(root)];
    }
};

// Per-vertex tables, labels and sketches from the cluster trees and their
// tree-routing bundles.
RoutingArtifacts assemble(const WeightedGraph& g, const LevelHierarchy& h, const PivotTable& pivots,
                          std::vector<ClusterTree> trees, std::vector<TreeRoutingBundle> bundles,
                          const Rational& eps, bool trick);

// First level whose pivot tree contains both endpoints; u's membership from
// its table, v's from the label's missing markers.
std::pair<VertexId, int> find_tree(const RoutingArtifacts& a, VertexId u, const NodeLabel& label_v);

struct RouteResult {
    std::vector<VertexId> path;  // empty when u == v, else starts at u, ends at v
    Dist cost = 0;
    VertexId tree_root = -1;
    int level = -1;
    bool used_trick = false;
};

RouteResult route(const WeightedGraph& g, const RoutingArtifacts& a, VertexId u, VertexId v);

// (1+5e)[1 + (4+26e)(k-1+1/(4k^2))] with e = 1/(48k^4), as an exact rational
Rational stretch_bound(int k);

// derived estimate envelope: (2k-1)(1+10e)^{k+2}
Rational sketch_envelope(int k);

struct SketchDistResult {
    Dist estimate = 0;
    int iterations = 0;
};

SketchDistResult sketch_dist(const Sketch& su, const Sketch& sv, int k);

std::string node_label_to_json(const NodeLabel& l);
std::string sketch_to_json(const Sketch& s);

}  // namespace crs
