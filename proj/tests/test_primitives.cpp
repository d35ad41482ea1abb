#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "crs/oracle.hpp"
#include "crs/primitives.hpp"

using namespace crs;

namespace {

WeightedGraph er(int n, double p, uint64_t seed) {
    GenParams gp;
    gp.p = p;
    return generate_graph(GraphModel::ErdosRenyi, n, gp, seed);
}

}  // namespace

TEST_CASE("source detection is exact on a path") {
    auto g = WeightedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}});
    RoundLedger l;
    auto r = source_detection_reference(g, {0, 2}, 2, Rational(1, 48), l);
    CHECK(r.dist(1, 0) == 1);
    CHECK(r.dist(2, 0) == 2);
    CHECK(r.dist(0, 2) == 2);
    CHECK(r.dist(0, 0) == 0);
    CHECK(l.total_rounds() > 0);
}

TEST_CASE("source detection values are symmetric between sources") {
    auto g = er(40, 0.15, 6);
    RoundLedger l;
    std::vector<VertexId> sources = {0, 3, 9, 22, 31};
    auto r = source_detection_reference(g, sources, 5, Rational(1, 48), l);
    for (VertexId a : sources)
        for (VertexId b : sources) CHECK(r.dist(a, b) == r.dist(b, a));
}

TEST_CASE("source detection equals the hop-bounded oracle") {
    auto g = er(60, 0.1, 12);
    RoundLedger l;
    std::vector<VertexId> sources = {0, 5, 11, 17, 23, 31, 44, 58};
    auto r = source_detection_reference(g, sources, 5, Rational(1, 48), l);
    auto hb = hop_bounded_dist(g, sources, 5);
    for (size_t si = 0; si < sources.size(); ++si)
        for (VertexId v = 0; v < g.n(); ++v) CHECK(r.d[si][v] == hb.d[si][v]);
}

TEST_CASE("source detection parent steps account for their edges") {
    auto g = er(50, 0.12, 7);
    RoundLedger l;
    std::vector<VertexId> sources = {2, 19, 37};
    auto r = source_detection_reference(g, sources, 6, Rational(1, 48), l);
    for (VertexId s : sources) {
        for (VertexId v = 0; v < g.n(); ++v) {
            if (v == s || is_inf(r.dist(v, s))) continue;
            VertexId p = r.parent_toward(v, s);
            REQUIRE(p >= 0);
            Dist w = g.edge_weight(v, p);
            REQUIRE(!is_inf(w));
            CHECK(r.dist(v, s) >= sat_add(w, r.dist(p, s)));
            // chains terminate at the source
            VertexId x = v;
            int guard = g.n();
            while (x != s) {
                x = r.parent_toward(x, s);
                REQUIRE(x >= 0);
                REQUIRE(guard-- > 0);
            }
        }
    }
}

TEST_CASE("source detection rejects degenerate inputs") {
    auto g = WeightedGraph::from_edges(2, {{0, 1, 1}});
    RoundLedger l;
    CHECK_THROWS_AS(source_detection_reference(g, {}, 2, Rational(1, 48), l), GraphError);
    CHECK_THROWS_AS(source_detection_reference(g, {0}, 0, Rational(1, 48), l), GraphError);
}

TEST_CASE("full-budget virtual graph is the complete distance graph") {
    auto g = er(30, 0.15, 3);
    auto t = OracleTables::build(g);
    RoundLedger l;
    std::vector<VertexId> all(g.n());
    for (VertexId v = 0; v < g.n(); ++v) all[v] = v;
    auto sd = source_detection_reference(g, all, g.n() - 1, Rational(1, 48), l);
    auto gp = build_virtual_graph(sd);
    REQUIRE(gp.size() == g.n());
    for (int i = 0; i < gp.size(); ++i) CHECK(gp.adj[i].size() == size_t(g.n() - 1));
    std::vector<Dist> dist;
    std::vector<int> par;
    for (int i = 0; i < gp.size(); ++i) {
        gp.dijkstra(i, dist, par);
        for (int j = 0; j < gp.size(); ++j) CHECK(dist[j] == t.d(gp.verts[i], gp.verts[j]));
    }
}

TEST_CASE("virtual graph omits pairs beyond the hop budget") {
    auto g = WeightedGraph::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
    RoundLedger l;
    auto sd = source_detection_reference(g, {0, 3}, 2, Rational(1, 48), l);
    auto gp = build_virtual_graph(sd);
    REQUIRE(gp.size() == 2);
    CHECK(gp.adj[0].empty());
    CHECK(gp.adj[1].empty());
    std::vector<Dist> dist;
    std::vector<int> par;
    gp.dijkstra(0, dist, par);
    CHECK(is_inf(dist[1]));
}

TEST_CASE("virtual distances dominate true distances") {
    auto g = er(100, 0.08, 9);
    auto t = OracleTables::build(g);
    RoundLedger l;
    std::vector<VertexId> vp;
    for (VertexId v = 0; v < g.n(); v += 7) vp.push_back(v);
    auto sd = source_detection_reference(g, vp, 4, Rational(1, 48), l);
    auto gp = build_virtual_graph(sd);
    std::vector<Dist> dist;
    std::vector<int> par;
    for (int i = 0; i < gp.size(); ++i) {
        gp.dijkstra(i, dist, par);
        for (int j = 0; j < gp.size(); ++j)
            if (!is_inf(dist[j])) CHECK(dist[j] >= t.d(gp.verts[i], gp.verts[j]));
    }
}

TEST_CASE("hopset of a single edge is that edge") {
    VirtualGraph host;
    host.verts = {4, 9};
    host.index = {{4, 0}, {9, 1}};
    host.adj = {{{1, 7}}, {{0, 7}}};
    RoundLedger l;
    HopsetConfig cfg;
    auto h = build_hopset(host, Rational(1, 48), 2, 2, cfg, l);
    REQUIRE(h.edges.size() == 1);
    CHECK(h.edges[0].b == 7);
    CHECK(h.edges[0].path == std::vector<int>{0, 1});
    CHECK(h.edges[0].prefix == std::vector<Dist>{0, 7});
    CHECK(h.beta == 1);
}

TEST_CASE("hopset prefix sums end at the edge weight") {
    auto g = er(40, 0.12, 8);
    RoundLedger l;
    std::vector<VertexId> vp;
    for (VertexId v = 0; v < g.n(); v += 3) vp.push_back(v);
    auto sd = source_detection_reference(g, vp, 5, Rational(1, 48), l);
    auto gp = build_virtual_graph(sd);
    HopsetConfig cfg;
    auto h = build_hopset(gp, Rational(1, 48), g.n(), 3, cfg, l);
    CHECK(!h.edges.empty());
    for (const auto& e : h.edges) {
        REQUIRE(!e.path.empty());
        CHECK(e.path.front() == e.x);
        CHECK(e.path.back() == e.y);
        CHECK(e.prefix.front() == 0);
        CHECK(e.prefix.back() == e.b);
        // prefixes follow the host edges exactly
        for (size_t i = 0; i + 1 < e.path.size(); ++i) {
            Dist w = kInf;
            for (const auto& [to, wt] : gp.adj[e.path[i]])
                if (to == e.path[i + 1]) w = wt;
            REQUIRE(!is_inf(w));
            CHECK(e.prefix[i + 1] == e.prefix[i] + w);
        }
    }
}

TEST_CASE("one hop through the hopset is exact on a virtual cycle") {
    VirtualGraph host;
    host.verts = {0, 1, 2, 3, 4, 5};
    for (int i = 0; i < 6; ++i) host.index[i] = i;
    host.adj.assign(6, {});
    for (int i = 0; i < 6; ++i) {
        int j = (i + 1) % 6;
        Dist w = i + 1;
        host.adj[i].push_back({j, w});
        host.adj[j].push_back({i, w});
    }
    for (auto& a : host.adj) std::sort(a.begin(), a.end());
    RoundLedger l;
    HopsetConfig cfg;
    auto h = build_hopset(host, Rational(1, 48), 6, 2, cfg, l);
    std::vector<Dist> dist;
    std::vector<int> par;
    for (int u = 0; u < 6; ++u) {
        host.dijkstra(u, dist, par);
        for (int v = 0; v < 6; ++v) {
            if (u == v) continue;
            Dist one_hop = kInf;
            for (const auto& e : h.edges)
                if ((e.x == u && e.y == v) || (e.x == v && e.y == u)) one_hop = e.b;
            for (const auto& [to, w] : host.adj[u])
                if (to == v) one_hop = std::min(one_hop, w);
            CHECK(one_hop == dist[v]);
        }
    }
}

TEST_CASE("augmenting with an empty hopset changes nothing") {
    auto g = er(30, 0.15, 2);
    RoundLedger l;
    std::vector<VertexId> vp = {0, 4, 9, 13, 25};
    auto sd = source_detection_reference(g, vp, 4, Rational(1, 48), l);
    auto gp = build_virtual_graph(sd);
    PathReportingHopset empty;
    auto gpp = augment(gp, empty);
    CHECK(gpp.verts == gp.verts);
    CHECK(gpp.adj == gp.adj);
}

TEST_CASE("augmented graph reaches every pair in one hop at exact weight") {
    auto g = er(50, 0.1, 14);
    auto t = OracleTables::build(g);
    RoundLedger l;
    std::vector<VertexId> vp;
    for (VertexId v = 0; v < g.n(); v += 4) vp.push_back(v);
    auto sd = source_detection_reference(g, vp, g.n() - 1, Rational(1, 48), l);
    auto gp = build_virtual_graph(sd);
    HopsetConfig cfg;
    auto h = build_hopset(gp, Rational(1, 48), g.n(), 2, cfg, l);
    auto gpp = augment(gp, h);
    // with a full hop budget the virtual weights are exact, so one-hop
    // augmented distances match the oracle between V' vertices
    for (int i = 0; i < gpp.size(); ++i) {
        for (int j = 0; j < gpp.size(); ++j) {
            if (i == j) continue;
            Dist one = kInf;
            for (const auto& [to, w] : gpp.adj[i])
                if (to == j) one = w;
            CHECK(one == t.d(gpp.verts[i], gpp.verts[j]));
        }
    }
}

TEST_CASE("approximate SPT from a single root") {
    auto g = er(60, 0.1, 5);
    auto t = OracleTables::build(g);
    RoundLedger l;
    Rational eps(1, 48);
    auto r = approx_spt(g, {17}, eps, 2, 3, source_detection_reference, HopsetConfig{}, l);
    for (VertexId v = 0; v < g.n(); ++v) {
        CHECK(r.dhat[v] >= t.d(v, 17));
        CHECK(le_mul(r.dhat[v], Rational(1) + eps, t.d(v, 17)));
        CHECK(r.zhat[v] == 17);
    }
    CHECK(r.dhat[17] == 0);
}

TEST_CASE("approximate SPT respects the root-set contract") {
    auto g = er(100, 0.08, 21);
    auto t = OracleTables::build(g);
    RoundLedger l;
    Rational eps(1, 48);
    std::vector<VertexId> A = {3, 11, 24, 30, 42, 55, 61, 68, 77, 83, 90, 99};
    auto r = approx_spt(g, A, eps, 3, 5, source_detection_reference, HopsetConfig{}, l);
    for (VertexId v = 0; v < g.n(); ++v) {
        auto [dA, who] = t.dist_to_set(v, A);
        (void)who;
        CHECK(r.dhat[v] >= dA);
        CHECK(le_mul(r.dhat[v], Rational(1) + eps, dA));
        REQUIRE(r.zhat[v] >= 0);
        CHECK(std::find(A.begin(), A.end(), r.zhat[v]) != A.end());
        CHECK(t.d(v, r.zhat[v]) <= r.dhat[v]);
    }
    for (VertexId a : A) {
        CHECK(r.dhat[a] == 0);
        CHECK(r.zhat[a] == a);
    }
}

TEST_CASE("approximate SPT rejects oversized root sets") {
    auto g = er(100, 0.08, 21);
    RoundLedger l;
    std::vector<VertexId> A(95);
    for (int i = 0; i < 95; ++i) A[i] = i;
    CHECK_THROWS_AS(
        approx_spt(g, A, Rational(1, 48), 2, 1, source_detection_reference, HopsetConfig{}, l),
        RootSetTooLarge);
}

TEST_CASE("noisy source detection plugin keeps the contract") {
    auto g = er(60, 0.1, 33);
    RoundLedger l;
    Rational eps(1, 96);
    auto fn = make_noisy_source_detection(77);
    std::vector<VertexId> sources = {0, 9, 20, 41, 59};
    long long B = 6;
    auto r = fn(g, sources, B, eps, l);
    auto hb = hop_bounded_dist(g, sources, B);
    for (size_t si = 0; si < sources.size(); ++si)
        for (VertexId v = 0; v < g.n(); ++v) {
            if (is_inf(hb.d[si][v])) {
                CHECK(is_inf(r.d[si][v]));
                continue;
            }
            CHECK(r.d[si][v] >= hb.d[si][v]);
            CHECK(le_mul(r.d[si][v], Rational(1) + eps, hb.d[si][v]));
        }
    for (VertexId a : sources)
        for (VertexId b : sources) CHECK(r.dist(a, b) == r.dist(b, a));
    // parent inequality against the original weights
    for (VertexId s : sources)
        for (VertexId v = 0; v < g.n(); ++v) {
            if (v == s || is_inf(r.dist(v, s))) continue;
            VertexId p = r.parent_toward(v, s);
            REQUIRE(p >= 0);
            CHECK(r.dist(v, s) >= sat_add(g.edge_weight(v, p), r.dist(p, s)));
        }
}

TEST_CASE("declared beta formula is positive and monotone in the constant") {
    CHECK(declared_beta_formula(100, 2, 1.0) >= 1);
    CHECK(declared_beta_formula(1000, 3, 2.0) >= declared_beta_formula(1000, 3, 1.0));
}
