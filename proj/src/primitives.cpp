#include "crs/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>

#include "crs/oracle.hpp"

namespace crs {

namespace {

SourceDetectionResult from_hop_bounded(const WeightedGraph& g, HopBoundedResult hb,
                                       const Rational& eps) {
    SourceDetectionResult r;
    r.sources = std::move(hb.sources);
    r.B = hb.B;
    r.eps = eps;
    r.d = std::move(hb.d);
    r.parent = std::move(hb.parent);
    for (size_t i = 0; i < r.sources.size(); ++i) r.source_index[r.sources[i]] = static_cast<int>(i);
    (void)g;
    return r;
}

void charge_source_detection(RoundLedger& ledger, const WeightedGraph& g, size_t n_sources,
                             long long B, const Rational& eps) {
    long long D = g.hop_diameter();
    Rational inv = Rational(1) / eps;
    long long rounds = ceil_ll(to_double(Rational(static_cast<long long>(n_sources) + B + D) * inv));
    std::ostringstream f;
    f << "(|V'| + B + D) / eps = (" << n_sources << " + " << B << " + " << D << ") * "
      << rat_str(inv);
    ledger.charge("source-detection", f.str(), rounds, rounds);
}

}  // namespace

SourceDetectionResult source_detection_reference(const WeightedGraph& g,
                                                 const std::vector<VertexId>& sources, long long B,
                                                 const Rational& eps, RoundLedger& ledger) {
    if (sources.empty()) throw GraphError("source_detection: empty source set");
    if (B < 1) throw GraphError("source_detection: B must be >= 1");
    charge_source_detection(ledger, g, sources.size(), B, eps);
    return from_hop_bounded(g, hop_bounded_dist(g, sources, B), eps);
}

SourceDetectionFn make_noisy_source_detection(uint64_t noise_seed) {
    return [noise_seed](const WeightedGraph& g, const std::vector<VertexId>& sources, long long B,
                        const Rational& eps, RoundLedger& ledger) -> SourceDetectionResult {
        if (sources.empty()) throw GraphError("source_detection: empty source set");
        if (B < 1) throw GraphError("source_detection: B must be >= 1");
        // inflate each edge weight to floor(w * (1 + u * eps)), u in [0,1]
        std::mt19937_64 rng(noise_seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double e = to_double(eps);
        auto edges = g.edges();
        for (auto& [a, b, w] : edges) {
            (void)a;
            (void)b;
            double factor = 1.0 + u01(rng) * e;
            Dist inflated = static_cast<Dist>(std::floor(static_cast<double>(w) * factor));
            w = std::max(w, std::min(inflated, sat_add(w, static_cast<Dist>(
                                                              std::floor(static_cast<double>(w) * e)))));
        }
        WeightedGraph noisy = WeightedGraph::from_edges(g.n(), std::move(edges));
        charge_source_detection(ledger, g, sources.size(), B, eps);
        auto hb = hop_bounded_dist(noisy, sources, B);
        // parents are neighbor indices in the noisy graph, which has the same
        // adjacency structure as g
        return from_hop_bounded(g, std::move(hb), eps);
    };
}

void VirtualGraph::dijkstra(int src, std::vector<Dist>& dist, std::vector<int>& parent) const {
    int m = size();
    dist.assign(m, kInf);
    parent.assign(m, -1);
    using QEntry = std::pair<Dist, int>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    std::vector<char> done(m, 0);
    std::vector<int> order;
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        order.push_back(u);
        for (const auto& [v, w] : adj[u]) {
            if (sat_add(dist[u], w) < dist[v]) {
                dist[v] = dist[u] + w;
                pq.push({dist[v], v});
            }
        }
    }
    for (int v : order) {
        if (v == src) continue;
        for (const auto& [p, w] : adj[v]) {
            if (!is_inf(dist[p]) && sat_add(dist[p], w) == dist[v]) {
                parent[v] = p;
                break;
            }
        }
    }
}

VirtualGraph build_virtual_graph(const SourceDetectionResult& sd) {
    VirtualGraph vg;
    vg.verts = sd.sources;
    std::sort(vg.verts.begin(), vg.verts.end());
    for (size_t i = 0; i < vg.verts.size(); ++i) vg.index[vg.verts[i]] = static_cast<int>(i);
    int m = vg.size();
    vg.adj.assign(m, {});
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            Dist w = sd.dist(vg.verts[j], vg.verts[i]);
            if (!is_inf(w)) {
                vg.adj[i].push_back({j, w});
                vg.adj[j].push_back({i, w});
            }
        }
    }
    return vg;
}

long long declared_beta_formula(int n, int k, double c) {
    double ln2n = std::log2(std::max(n, 2));
    double a = std::pow(ln2n, c * k);
    double b = std::pow(2.0, c * std::sqrt(ln2n));
    double v = std::min(a, b);
    return std::max<long long>(1, ceil_ll(v));
}

PathReportingHopset build_hopset(const VirtualGraph& host, const Rational& eps, int n, int k,
                                 const HopsetConfig& cfg, RoundLedger& ledger) {
    if (!cfg.reference_complete)
        throw GraphError("only the reference-complete hopset implementation is available");
    PathReportingHopset h;
    h.beta = 1;
    h.eps_actual = Rational(0);

    int m = host.size();
    std::vector<Dist> dist;
    std::vector<int> parent;
    for (int x = 0; x < m; ++x) {
        host.dijkstra(x, dist, parent);
        for (int y = x + 1; y < m; ++y) {
            if (is_inf(dist[y])) continue;
            HopsetEdge e;
            e.x = x;
            e.y = y;
            e.b = dist[y];
            // reconstruct the path x..y and its prefix sums
            std::vector<int> rev;
            for (int v = y; v != -1; v = parent[v]) rev.push_back(v);
            std::reverse(rev.begin(), rev.end());
            e.path = std::move(rev);
            e.prefix.resize(e.path.size());
            e.prefix[0] = 0;
            for (size_t i = 1; i < e.path.size(); ++i)
                e.prefix[i] = dist[e.path[i]];
            h.edges.push_back(std::move(e));
        }
    }

    long long beta_decl = declared_beta_formula(n, k, cfg.beta_exponent_c);
    double rho = std::max(1.0 / k, std::log2(std::log2(std::max(n, 4))) /
                                       std::sqrt(std::log2(std::max(n, 2))));
    long long rounds =
        ceil_ll(std::pow(static_cast<double>(std::max(m, 1)), 1.0 + rho)) * beta_decl * beta_decl;
    std::ostringstream f;
    f << "(m^(1+rho) + D) * beta^2, m=" << m << ", rho=" << rho << ", declared beta=" << beta_decl;
    ledger.charge("hopset-construction", f.str(), rounds, rounds);
    return h;
}

VirtualGraph augment(const VirtualGraph& host, const PathReportingHopset& hopset) {
    VirtualGraph g = host;
    auto set_edge = [&g](int a, int b, Dist w) {
        auto& row = g.adj[a];
        auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const std::pair<int, Dist>& e, int x) { return e.first < x; });
        if (it != row.end() && it->first == b) it->second = w;  // hopset weight wins
        else row.insert(it, {b, w});
    };
    for (const auto& e : hopset.edges) {
        set_edge(e.x, e.y, e.b);
        set_edge(e.y, e.x, e.b);
    }
    return g;
}

ApproxSptResult approx_spt(const WeightedGraph& g, const std::vector<VertexId>& A,
                           const Rational& eps, int k, uint64_t seed,
                           const SourceDetectionFn& sd_fn, const HopsetConfig& hopset_cfg,
                           RoundLedger& ledger, long long beta_override) {
    int n = g.n();
    double cap = 2.0 * std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(std::max(n, 2)));
    if (static_cast<double>(A.size()) > cap)
        throw RootSetTooLarge("approx_spt: |A| exceeds 2 sqrt(n) ln n");

    ApproxSptResult r;
    r.dhat.assign(n, kInf);
    r.zhat.assign(n, -1);
    if (A.empty()) return r;

    // V' = A u X, X sampled with probability 1/sqrt(n)
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    double q = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<char> in_vp(n, 0);
    for (VertexId a : A) in_vp[a] = 1;
    for (VertexId v = 0; v < n; ++v)
        if (!in_vp[v] && coin(rng) < q) in_vp[v] = 1;
    std::vector<VertexId> vp;
    for (VertexId v = 0; v < n; ++v)
        if (in_vp[v]) vp.push_back(v);

    long long B = budget(n, 0.5);
    auto sd = sd_fn(g, vp, B, eps / 2, ledger);
    VirtualGraph gp = build_virtual_graph(sd);
    auto hopset = build_hopset(gp, eps / 3, n, k, hopset_cfg, ledger);
    VirtualGraph gpp = augment(gp, hopset);

    long long beta = beta_override > 0 ? beta_override : hopset.beta;

    // Bellman-Ford on G'' rooted at A
    int m = gpp.size();
    std::vector<Dist> dv(m, kInf);
    std::vector<VertexId> zv(m, -1);
    for (VertexId a : A) {
        dv[gpp.index.at(a)] = 0;
        zv[gpp.index.at(a)] = a;
    }
    for (long long it = 0; it < beta; ++it) {
        auto prev = dv;
        auto prevz = zv;
        bool changed = false;
        for (int u = 0; u < m; ++u) {
            for (const auto& [v, w] : gpp.adj[u]) {
                Dist cand = sat_add(prev[v], w);
                if (cand < dv[u] || (cand == dv[u] && !is_inf(cand) && prevz[v] >= 0 &&
                                     (zv[u] < 0 || prevz[v] < zv[u]))) {
                    dv[u] = cand;
                    zv[u] = prevz[v];
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    ledger.charge_broadcast("approx-spt-bellman-ford", static_cast<long long>(m) * beta,
                            g.hop_diameter());

    // extend to all of V: dhat(u) = min_v { d_uv + dhat(v) }
    for (VertexId u = 0; u < n; ++u) {
        Dist best = kInf;
        VertexId bz = -1;
        for (int vi = 0; vi < m; ++vi) {
            Dist cand = sat_add(sd.d[ sd.source_index.at(gpp.verts[vi]) ][u], dv[vi]);
            if (cand < best || (cand == best && !is_inf(cand) && zv[vi] >= 0 && (bz < 0 || zv[vi] < bz))) {
                best = cand;
                bz = zv[vi];
            }
        }
        r.dhat[u] = best;
        r.zhat[u] = bz;
    }
    return r;
}

std::string hopset_to_json(const VirtualGraph& host, const PathReportingHopset& h) {
    std::ostringstream os;
    os << "{\"beta\":" << h.beta << ",\"edges\":[";
    for (size_t i = 0; i < h.edges.size(); ++i) {
        const auto& e = h.edges[i];
        if (i) os << ',';
        os << "{\"x\":" << host.verts[e.x] << ",\"y\":" << host.verts[e.y] << ",\"b\":" << e.b
           << ",\"path\":[";
        for (size_t j = 0; j < e.path.size(); ++j) {
            if (j) os << ',';
            os << host.verts[e.path[j]];
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

}  // namespace crs
