#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "crs/tree_routing.hpp"

using namespace crs;

namespace {

WeightedGraph er(int n, double p, uint64_t seed) {
    GenParams gp;
    gp.p = p;
    return generate_graph(GraphModel::ErdosRenyi, n, gp, seed);
}

TreeSubgraph from_parent_vector(VertexId root, const std::vector<VertexId>& parent) {
    TreeSubgraph t;
    t.root = root;
    for (VertexId v = 0; v < static_cast<VertexId>(parent.size()); ++v) t.parent[v] = parent[v];
    return t;
}

// ground truth: the unique tree path via parent chains and the meet point
std::vector<VertexId> tree_path(const TreeSubgraph& t, VertexId u, VertexId v) {
    auto chain = [&t](VertexId x) {
        std::vector<VertexId> c{x};
        while (t.parent.at(c.back()) != -1) c.push_back(t.parent.at(c.back()));
        return c;
    };
    auto cu = chain(u), cv = chain(v);
    std::map<VertexId, size_t> pos;
    for (size_t i = 0; i < cv.size(); ++i) pos[cv[i]] = i;
    std::vector<VertexId> path;
    size_t meet = 0;
    for (VertexId x : cu) {
        path.push_back(x);
        if (pos.count(x)) {
            meet = pos[x];
            break;
        }
    }
    for (size_t i = meet; i-- > 0;) path.push_back(cv[i]);
    return path;
}

void check_all_pairs(const WeightedGraph& g, const TreeSubgraph& t, const TreeRoutingBundle& b) {
    std::vector<VertexId> verts;
    for (const auto& [v, p] : t.parent) {
        (void)p;
        verts.push_back(v);
    }
    for (VertexId u : verts)
        for (VertexId v : verts) {
            if (u == v) continue;
            auto got = tree_route(g, b, u, v);
            auto want = tree_path(t, u, v);
            REQUIRE(got == want);
        }
}

}  // namespace

TEST_CASE("single-edge tree routes over its one port") {
    auto g = WeightedGraph::from_edges(2, {{0, 1, 5}});
    TreeSubgraph t = from_parent_vector(0, {-1, 0});
    RoundLedger l;
    auto b = build_tree_routing(g, t, std::sqrt(2.0), 1, l);
    auto step = tree_route_step(b.tables.at(0), b.labels.at(1));
    CHECK(!step.arrived);
    CHECK(g.neighbor_at(0, step.port) == 1);
    CHECK(tree_route(g, b, 0, 1) == std::vector<VertexId>{0, 1});
    CHECK(tree_route(g, b, 1, 0) == std::vector<VertexId>{1, 0});
}

TEST_CASE("arrival is detected from the destination's own label") {
    auto g = WeightedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}});
    TreeSubgraph t = from_parent_vector(0, {-1, 0, 1});
    RoundLedger l;
    auto b = build_tree_routing(g, t, 2.0, 1, l);
    for (VertexId v = 0; v < 3; ++v) CHECK(tree_route_step(b.tables.at(v), b.labels.at(v)).arrived);
}

TEST_CASE("100-vertex path routes every ordered pair exactly") {
    std::vector<std::tuple<VertexId, VertexId, Dist>> edges;
    std::vector<VertexId> parent(100, -1);
    for (VertexId v = 1; v < 100; ++v) {
        edges.emplace_back(v - 1, v, (v % 7) + 1);
        parent[v] = v - 1;
    }
    auto g = WeightedGraph::from_edges(100, std::move(edges));
    TreeSubgraph t = from_parent_vector(0, parent);
    RoundLedger l;
    auto b = build_tree_routing(g, t, 10.0, 3, l);
    CHECK(b.depth_ok);
    CHECK(b.max_subtree_depth <= b.B);
    check_all_pairs(g, t, b);
}

TEST_CASE("star heavy child is the smallest-id leaf") {
    std::vector<std::tuple<VertexId, VertexId, Dist>> edges;
    std::vector<VertexId> parent(51, 0);
    parent[0] = -1;
    for (VertexId v = 1; v <= 50; ++v) edges.emplace_back(0, v, 1);
    auto g = WeightedGraph::from_edges(51, std::move(edges));
    TreeSubgraph t = from_parent_vector(0, parent);
    RoundLedger l;
    auto b = build_tree_routing(g, t, std::sqrt(51.0), 2, l);
    // all child subtrees have size 1, so the tie rule picks the smallest-id
    // leaf among the children that share the center's subtree
    VertexId expected = -1;
    for (VertexId v = 1; v <= 50; ++v)
        if (b.tables.at(v).sub_root == b.tables.at(0).sub_root) {
            expected = v;
            break;
        }
    CHECK(b.tables.at(0).heavy == expected);
    check_all_pairs(g, t, b);
}

TEST_CASE("random 200-vertex tree routes every ordered pair exactly") {
    auto g = er(200, 0.06, 17);
    auto parent = random_spanning_tree(g, 5, 17);
    TreeSubgraph t = from_parent_vector(5, parent);
    RoundLedger l;
    auto b = build_tree_routing(g, t, std::sqrt(200.0), 4, l);
    CHECK(b.depth_ok);
    check_all_pairs(g, t, b);
}

TEST_CASE("subtree DFS intervals nest properly") {
    auto g = er(150, 0.07, 8);
    auto parent = random_spanning_tree(g, 0, 8);
    TreeSubgraph t = from_parent_vector(0, parent);
    RoundLedger l;
    auto b = build_tree_routing(g, t, std::sqrt(150.0), 2, l);
    for (const auto& [v, tab] : b.tables) {
        CHECK(tab.a < tab.b);
        if (tab.tree_parent == -1) continue;
        const auto& ptab = b.tables.at(tab.tree_parent);
        if (ptab.sub_root == tab.sub_root) {
            // child interval strictly inside the parent's
            CHECK(ptab.a < tab.a);
            CHECK(tab.b <= ptab.b);
        }
        // virtual-tree intervals nest between portal-separated subtrees
        if (ptab.sub_root != tab.sub_root) {
            CHECK(ptab.ga < tab.ga);
            CHECK(tab.gb <= ptab.gb);
        }
    }
}

TEST_CASE("table and label word counts stay within the log envelopes") {
    auto g = er(256, 0.05, 10);
    auto parent = random_spanning_tree(g, 0, 10);
    TreeSubgraph t = from_parent_vector(0, parent);
    RoundLedger l;
    auto b = build_tree_routing(g, t, std::sqrt(256.0), 6, l);
    double log2n = std::log2(256.0);
    CHECK(b.max_table_words <= static_cast<long long>(8 * log2n));
    CHECK(b.max_label_words <= static_cast<long long>(8 * log2n * log2n));
}

TEST_CASE("parallel build matches the sequential per-tree build bit for bit") {
    auto g = er(120, 0.08, 21);
    std::vector<TreeSubgraph> trees;
    for (uint64_t i = 0; i < 5; ++i) {
        VertexId root = static_cast<VertexId>((i * 17) % g.n());
        trees.push_back(from_parent_vector(root, random_spanning_tree(g, root, 100 + i)));
    }
    RoundLedger lp;
    auto par = build_all_trees_parallel(g, trees, 20, 42, false, lp);
    REQUIRE(par.bundles.size() == trees.size());
    for (size_t i = 0; i < trees.size(); ++i) {
        RoundLedger ls;
        auto seq = build_tree_routing(g, trees[i], par.gamma, derive_tree_seed(42, i), ls);
        CHECK(tree_bundle_to_json(par.bundles[i]) == tree_bundle_to_json(seq));
    }
}

TEST_CASE("parallel build of one tree charges the single-tree formula") {
    auto g = er(90, 0.1, 31);
    std::vector<TreeSubgraph> trees{from_parent_vector(0, random_spanning_tree(g, 0, 7))};
    RoundLedger lp;
    auto par = build_all_trees_parallel(g, trees, 20, 9, false, lp);
    CHECK(par.s == 1);
    RoundLedger ls;
    build_tree_routing(g, trees[0], par.gamma, derive_tree_seed(9, 0), ls);
    CHECK(lp.total_rounds() == ls.total_rounds());
}

TEST_CASE("strict parallel build reports congestion violations") {
    auto g = er(150, 0.07, 51);
    std::vector<TreeSubgraph> trees;
    for (uint64_t i = 0; i < 8; ++i) {
        VertexId root = static_cast<VertexId>((i * 13) % g.n());
        trees.push_back(from_parent_vector(root, random_spanning_tree(g, root, 200 + i)));
    }
    RoundLedger lp;
    lp.strict_mode = true;
    auto par = build_all_trees_parallel(g, trees, 20, 3, true, lp);
    CHECK(par.stagger.violations == 0);
    CHECK(par.stagger.completion_round > 0);
}

TEST_CASE("non-tree inputs are rejected") {
    auto g = WeightedGraph::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
    RoundLedger l;

    TreeSubgraph not_subgraph;  // edge (0, 2) is not a graph edge
    not_subgraph.root = 0;
    not_subgraph.parent = {{0, -1}, {2, 0}};
    CHECK_THROWS_AS(build_tree_routing(g, not_subgraph, 2.0, 1, l), NotASubgraph);

    TreeSubgraph cycle;  // 1 and 2 point at each other, unreachable from root
    cycle.root = 0;
    cycle.parent = {{0, -1}, {1, 2}, {2, 1}};
    CHECK_THROWS_AS(build_tree_routing(g, cycle, 2.0, 1, l), NotATree);

    TreeSubgraph two_roots;
    two_roots.root = 0;
    two_roots.parent = {{0, -1}, {1, -1}};
    CHECK_THROWS_AS(build_tree_routing(g, two_roots, 2.0, 1, l), NotATree);
}
