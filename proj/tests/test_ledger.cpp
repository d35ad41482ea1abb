#include <doctest.h>

#include <random>

#include "crs/graph.hpp"
#include "crs/ledger.hpp"

using namespace crs;

TEST_CASE("broadcast charges M + D") {
    RoundLedger l;
    l.charge_broadcast("empty", 0, 5);
    CHECK(l.total_rounds() == 5);
    l.charge_broadcast("full", 100, 5);
    CHECK(l.stages().back().rounds == 105);
    CHECK(l.total_rounds() == 110);
}

TEST_CASE("sequential broadcast charges add up") {
    RoundLedger l;
    long long m1 = 17, m2 = 33, d = 4;
    l.charge_broadcast("first", m1, d);
    l.charge_broadcast("second", m2, d);
    CHECK(l.total_rounds() == m1 + m2 + 2 * d);
    CHECK(l.total_messages() == m1 + m2);
}

TEST_CASE("bellman-ford charges iterations times congestion") {
    RoundLedger l;
    l.charge_bellman_ford("bf", 10, 1);
    CHECK(l.total_rounds() == 10);
    l.charge_bellman_ford("idle", 0, 5);
    CHECK(l.total_rounds() == 10);
    l.charge_bellman_ford("wide", 7, 3);
    CHECK(l.total_rounds() == 31);
}

TEST_CASE("totals decompose by stage") {
    RoundLedger l;
    l.charge("a", "x", 3, 1);
    l.charge("b", "y", 9, 2);
    l.charge("c", "z", 0, 0);
    long long sum = 0, msgs = 0;
    for (const auto& s : l.stages()) {
        sum += s.rounds;
        msgs += s.messages;
    }
    CHECK(sum == l.total_rounds());
    CHECK(msgs == l.total_messages());
    CHECK(l.stages().size() == 3);
}

TEST_CASE("single staggered tree completes by alpha * (start + depth)") {
    BroadcastTree t;
    t.root = 0;
    t.edges = {{0, 1}, {1, 2}, {2, 3}};
    t.child_depth = {1, 2, 3};
    auto r = simulate_staggered_broadcast({t}, {1}, 20);
    CHECK(r.completion_round == 20 * (1 + 3));
    CHECK(r.violations == 0);
}

TEST_CASE("disjoint staggered trees complete at the max of their completions") {
    BroadcastTree a;
    a.root = 0;
    a.edges = {{0, 1}, {1, 2}};
    a.child_depth = {1, 2};
    BroadcastTree b;
    b.root = 10;
    b.edges = {{10, 11}};
    b.child_depth = {1};
    auto ra = simulate_staggered_broadcast({a}, {3}, 20);
    auto rb = simulate_staggered_broadcast({b}, {7}, 20);
    auto both = simulate_staggered_broadcast({a, b}, {3, 7}, 20);
    CHECK(both.completion_round == std::max(ra.completion_round, rb.completion_round));
    CHECK(both.violations == 0);
}

TEST_CASE("overlapping random subtrees stay under the congestion limit") {
    GenParams p;
    p.p = 0.05;
    auto g = generate_graph(GraphModel::ErdosRenyi, 200, p, 4);
    auto parent = random_spanning_tree(g, 0, 4);
    std::vector<int> depth(g.n(), 0);
    for (VertexId v = 0; v < g.n(); ++v) {
        VertexId x = v;
        while (parent[x] >= 0) {
            ++depth[v];
            x = parent[x];
        }
    }
    std::vector<std::vector<VertexId>> children(g.n());
    for (VertexId v = 0; v < g.n(); ++v)
        if (parent[v] >= 0) children[parent[v]].push_back(v);

    // grow 50 downward subtrees, refusing vertices already in 10 trees so
    // the per-vertex membership stays at most s = 10 by construction
    std::mt19937_64 rng(99);
    std::vector<int> membership(g.n(), 0);
    std::vector<BroadcastTree> forest;
    std::vector<long long> starts;
    std::uniform_int_distribution<VertexId> pick(0, g.n() - 1);
    std::uniform_int_distribution<long long> st(1, 120);
    while (forest.size() < 50) {
        VertexId root = pick(rng);
        if (membership[root] >= 10) continue;
        BroadcastTree t;
        t.root = root;
        ++membership[root];
        std::vector<std::pair<VertexId, int>> frontier{{root, 0}};
        int size = 1;
        while (!frontier.empty() && size < 12) {
            auto [u, du] = frontier.back();
            frontier.pop_back();
            for (VertexId c : children[u]) {
                if (membership[c] >= 10 || size >= 12) continue;
                ++membership[c];
                ++size;
                t.edges.emplace_back(u, c);
                t.child_depth.push_back(du + 1);
                frontier.emplace_back(c, du + 1);
            }
        }
        forest.push_back(std::move(t));
        starts.push_back(st(rng));
    }
    int s = 0;
    for (int c : membership) s = std::max(s, c);
    CHECK(s <= 10);
    auto r = simulate_staggered_broadcast(forest, starts, 20);
    CHECK(r.violations == 0);
    CHECK(r.completion_round > 0);
}

TEST_CASE("a deliberately contended edge is reported, not thrown") {
    // 25 single-edge trees all demanding edge (0,1) in the same stage
    std::vector<BroadcastTree> forest(25);
    std::vector<long long> starts(25, 1);
    for (auto& t : forest) {
        t.root = 0;
        t.edges = {{0, 1}};
        t.child_depth = {1};
    }
    auto r = simulate_staggered_broadcast(forest, starts, 20);
    CHECK(r.violations == 1);
}
