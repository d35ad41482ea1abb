#include "crs/routing.hpp"

#include <algorithm>
#include <sstream>

namespace crs {

RoutingArtifacts assemble(const WeightedGraph& g, const LevelHierarchy& h, const PivotTable& pivots,
                          std::vector<ClusterTree> trees, std::vector<TreeRoutingBundle> bundles,
                          const Rational& eps, bool trick) {
    if (trees.size() != bundles.size())
        throw GraphError("assemble: trees and bundles must align");
    int n = g.n();
    RoutingArtifacts a;
    a.k = h.k;
    a.eps = eps;
    a.trick = trick;
    a.hierarchy = h;
    a.pivots = pivots;
    a.trees = std::move(trees);
    a.bundles = std::move(bundles);
    for (size_t i = 0; i < a.trees.size(); ++i) {
        if (a.trees[i].root != a.bundles[i].root)
            throw GraphError("assemble: bundle root mismatch");
        a.root_index[a.trees[i].root] = i;
    }

    a.trees_of.assign(n, {});
    for (size_t i = 0; i < a.trees.size(); ++i)
        for (const auto& [v, m] : a.trees[i].members) a.trees_of[v].push_back(i);

    a.labels.resize(n);
    a.sketches.resize(n);
    long long sum_table = 0, sum_label = 0;
    for (VertexId v = 0; v < n; ++v) {
        NodeLabel& l = a.labels[v];
        l.v = v;
        l.entries.resize(a.k);
        for (int i = 0; i < a.k; ++i) {
            auto& e = l.entries[i];
            e.root = pivots.zhat_at(i, v);
            e.missing = true;
            if (e.root >= 0) {
                auto it = a.root_index.find(e.root);
                if (it != a.root_index.end() && a.trees[it->second].contains(v)) {
                    e.missing = false;
                    e.tlabel = a.bundles[it->second].labels.at(v);
                }
            }
        }
        a.max_label_words = std::max(a.max_label_words, l.words());
        sum_label += l.words();

        long long tw = 2LL * a.k;  // pivot rows
        for (size_t ti : a.trees_of[v]) tw += a.bundles[ti].tables.at(v).words();
        a.max_table_words = std::max(a.max_table_words, tw);
        sum_table += tw;

        Sketch& s = a.sketches[v];
        s.v = v;
        for (size_t ti : a.trees_of[v]) s.tree_pairs[a.trees[ti].root] = a.trees[ti].b_of(v);
        for (int i = 0; i < a.k; ++i)
            s.pivot_pairs.push_back({pivots.zhat_at(i, v), pivots.dhat_at(i, v)});
        a.max_sketch_entries = std::max(a.max_sketch_entries, s.entries());
    }
    a.mean_table_words = static_cast<double>(sum_table) / n;
    a.mean_label_words = static_cast<double>(sum_label) / n;

    if (trick) {
        for (VertexId u = 0; u < n; ++u) {
            if (h.level[u] != 0) continue;
            auto it = a.root_index.find(u);
            if (it == a.root_index.end()) continue;
            long long words = 0;
            for (const auto& [v, m] : a.trees[it->second].members) words += a.labels[v].words();
            a.max_trick_words = std::max(a.max_trick_words, words);
        }
    }
    return a;
}

std::pair<VertexId, int> find_tree(const RoutingArtifacts& a, VertexId u,
                                   const NodeLabel& label_v) {
    for (int i = 0; i < a.k; ++i) {
        const auto& e = label_v.entries[i];
        if (e.missing) continue;  // v itself is not in this pivot's tree
        auto it = a.root_index.find(e.root);
        if (it == a.root_index.end()) continue;
        if (a.trees[it->second].contains(u)) return {e.root, i};
    }
    throw NoCommonTree("no pivot tree contains both endpoints");
}

namespace {

RouteResult route_in_tree(const WeightedGraph& g, const RoutingArtifacts& a, size_t tree_idx,
                          VertexId u, VertexId v) {
    RouteResult r;
    r.tree_root = a.trees[tree_idx].root;
    r.level = a.trees[tree_idx].level;
    r.path = tree_route(g, a.bundles[tree_idx], u, v);
    for (size_t i = 0; i + 1 < r.path.size(); ++i)
        r.cost += g.edge_weight(r.path[i], r.path[i + 1]);
    return r;
}

}  // namespace

RouteResult route(const WeightedGraph& g, const RoutingArtifacts& a, VertexId u, VertexId v) {
    if (u == v) {
        RouteResult r;
        return r;
    }
    if (a.trick && a.hierarchy.level[u] == 0) {
        auto it = a.root_index.find(u);
        if (it != a.root_index.end() && a.trees[it->second].contains(v)) {
            auto r = route_in_tree(g, a, it->second, u, v);
            r.used_trick = true;
            return r;
        }
    }
    auto [w, i] = find_tree(a, u, a.labels[v]);
    auto r = route_in_tree(g, a, a.root_index.at(w), u, v);
    r.level = i;
    return r;
}

Rational stretch_bound(int k) {
    Rational e = eps_for_k(k);
    Rational kk(1, 4LL * k * k);
    return (Rational(1) + 5 * e) *
           (Rational(1) + (Rational(4) + 26 * e) * (Rational(k - 1) + kk));
}

Rational sketch_envelope(int k) {
    Rational e = eps_for_k(k);
    return Rational(2 * k - 1) * rat_pow(Rational(1) + 10 * e, k + 2);
}

SketchDistResult sketch_dist(const Sketch& su, const Sketch& sv, int k) {
    const Sketch* a = &su;
    const Sketch* b = &sv;
    VertexId w = a->v;
    int i = 0;
    while (true) {
        auto it = b->tree_pairs.find(w);
        if (w >= 0 && it != b->tree_pairs.end()) {
            Dist dhat = a->pivot_pairs[i].second;
            return {sat_add(dhat, it->second), i};
        }
        ++i;
        if (i >= k) throw NoTerminationByK("sketch distance did not settle within k levels");
        std::swap(a, b);
        w = a->pivot_pairs[i].first;
    }
}

std::string node_label_to_json(const NodeLabel& l) {
    std::ostringstream os;
    os << "{\"v\":" << l.v << ",\"entries\":[";
    for (size_t i = 0; i < l.entries.size(); ++i) {
        if (i) os << ',';
        const auto& e = l.entries[i];
        os << "{\"root\":" << e.root << ",\"missing\":" << (e.missing ? "true" : "false")
           << ",\"words\":" << e.words() << '}';
    }
    os << "]}";
    return os.str();
}

std::string sketch_to_json(const Sketch& s) {
    std::ostringstream os;
    os << "{\"v\":" << s.v << ",\"trees\":[";
    bool first = true;
    for (const auto& [u, b] : s.tree_pairs) {
        if (!first) os << ',';
        first = false;
        os << '[' << u << ',' << b << ']';
    }
    os << "],\"pivots\":[";
    for (size_t i = 0; i < s.pivot_pairs.size(); ++i) {
        if (i) os << ',';
        os << '[' << s.pivot_pairs[i].first << ',';
        if (is_inf(s.pivot_pairs[i].second)) os << "\"inf\"";
        else os << s.pivot_pairs[i].second;
        os << ']';
    }
    os << "]}";
    return os.str();
}

}  // namespace crs
