#include "crs/clusters.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace crs {

namespace {

// multi-source Dijkstra; nearest[v] is the closest root, smallest id on ties
void multi_source_dijkstra(const WeightedGraph& g, const std::vector<VertexId>& roots,
                           std::vector<Dist>& dist, std::vector<VertexId>& nearest) {
    int n = g.n();
    dist.assign(n, kInf);
    nearest.assign(n, -1);
    using QEntry = std::pair<Dist, VertexId>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> pq;
    for (VertexId r : roots) {
        dist[r] = 0;
        pq.push({0, r});
    }
    std::vector<char> done(n, 0);
    std::vector<VertexId> order;
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        order.push_back(u);
        for (const auto& [v, w] : g.neighbors(u)) {
            if (sat_add(dist[u], w) < dist[v]) {
                dist[v] = dist[u] + w;
                pq.push({dist[v], v});
            }
        }
    }
    std::vector<char> is_root(n, 0);
    for (VertexId r : roots) is_root[r] = 1;
    for (VertexId v : order) {
        if (is_root[v]) {
            nearest[v] = v;
            continue;
        }
        VertexId best = -1;
        for (const auto& [p, w] : g.neighbors(v)) {
            if (!is_inf(dist[p]) && sat_add(dist[p], w) == dist[v] && nearest[p] >= 0)
                if (best < 0 || nearest[p] < best) best = nearest[p];
        }
        nearest[v] = best;
    }
}

// parents and chain hop counts for an exact tree: members processed in
// (b, id) order, parent = member neighbor on a shortest path, ties by
// fewer hops then smaller id
long long finalize_exact_parents(const WeightedGraph& g, ClusterTree& t) {
    std::vector<std::pair<Dist, VertexId>> order;
    for (const auto& [v, m] : t.members) order.push_back({m.b, v});
    std::sort(order.begin(), order.end());
    std::map<VertexId, long long> hops;
    long long max_hops = 0;
    for (const auto& [b, v] : order) {
        if (v == t.root) {
            hops[v] = 0;
            continue;
        }
        VertexId best = -1;
        long long best_h = 0;
        for (const auto& [p, w] : g.neighbors(v)) {
            auto it = t.members.find(p);
            if (it == t.members.end()) continue;
            if (sat_add(it->second.b, w) != b) continue;
            auto hit = hops.find(p);
            if (hit == hops.end()) continue;
            if (best < 0 || hit->second < best_h || (hit->second == best_h && p < best)) {
                best = p;
                best_h = hit->second;
            }
        }
        if (best < 0) throw GraphError("cluster tree member has no in-tree predecessor");
        auto& m = t.members.at(v);
        m.parent = best;
        m.port = g.port_of(v, best);
        hops[v] = best_h + 1;
        max_hops = std::max(max_hops, best_h + 1);
    }
    return max_hops;
}

}  // namespace

PivotTable compute_pivots(const WeightedGraph& g, const LevelHierarchy& h, const Rational& eps,
                          uint64_t seed, const SourceDetectionFn& sd_fn,
                          const HopsetConfig& hopset_cfg, RoundLedger& ledger,
                          long long beta_override) {
    int n = g.n();
    int k = h.k;
    int mid = (k + 1) / 2;  // ceil(k/2)
    PivotTable pt;
    pt.k = k;
    pt.dhat.assign(k, std::vector<Dist>(n, kInf));
    pt.zhat.assign(k, std::vector<VertexId>(n, -1));
    pt.exact.assign(k, false);
    pt.empty_level.assign(k, false);

    for (VertexId v = 0; v < n; ++v) {
        pt.dhat[0][v] = 0;
        pt.zhat[0][v] = v;
    }
    pt.exact[0] = true;

    for (int i = 1; i <= k - 1; ++i) {
        const auto& ai = h.sets[i];
        if (ai.empty()) {
            pt.empty_level[i] = true;
            pt.exact[i] = i <= mid;
            continue;
        }
        if (i <= mid) {
            std::vector<Dist> dist;
            std::vector<VertexId> nearest;
            multi_source_dijkstra(g, ai, dist, nearest);
            pt.dhat[i] = std::move(dist);
            pt.zhat[i] = std::move(nearest);
            pt.exact[i] = true;
            long long iters = budget(n, static_cast<double>(i) / k);
            ledger.charge_bellman_ford("pivots-level-" + std::to_string(i), iters, 1);
        } else {
            auto r = approx_spt(g, ai, eps, k, seed + 0x9e3779b97f4a7c15ULL * i, sd_fn, hopset_cfg,
                                ledger, beta_override);
            pt.dhat[i] = std::move(r.dhat);
            pt.zhat[i] = std::move(r.zhat);
            pt.exact[i] = false;
        }
    }
    return pt;
}

SmallTreeResult build_small_trees(const WeightedGraph& g, const LevelHierarchy& h,
                                  const PivotTable& pivots, RoundLedger& ledger) {
    int n = g.n();
    int k = h.k;
    int mid = (k + 1) / 2;
    SmallTreeResult res;

    for (int i = 0; i < mid; ++i) {
        // the middle-level method takes over for odd k >= 3
        if (k % 2 == 1 && k >= 3 && i == (k - 1) / 2) continue;
        auto roots = h.roots_at(i);
        if (roots.empty()) continue;
        long long level_budget = budget(n, static_cast<double>(i + 1) / k);
        std::vector<long long> membership(n, 0);

        for (VertexId u : roots) {
            ClusterTree t;
            t.root = u;
            t.level = i;

            // Dijkstra restricted to vertices passing the join threshold;
            // every vertex of a shortest path to a member passes it too,
            // so restriction preserves exact distances inside the cluster
            std::vector<Dist> dist(n, kInf);
            std::vector<char> done(n, 0);
            using QEntry = std::pair<Dist, VertexId>;
            std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> pq;
            dist[u] = 0;
            pq.push({0, u});
            while (!pq.empty()) {
                auto [du, v] = pq.top();
                pq.pop();
                if (done[v]) continue;
                done[v] = 1;
                if (du >= pivots.dhat_at(i + 1, v)) continue;  // outside the cluster
                t.members[v] = ClusterMember{du, -1, -1};
                for (const auto& [w, wt] : g.neighbors(v)) {
                    if (sat_add(du, wt) < dist[w]) {
                        dist[w] = du + wt;
                        pq.push({dist[w], w});
                    }
                }
            }

            long long max_hops = finalize_exact_parents(g, t);
            res.max_chain_hops = std::max(res.max_chain_hops, max_hops);
            if (max_hops > level_budget) ++res.budget_violations;
            for (const auto& [v, m] : t.members) ++membership[v];
            res.trees.push_back(std::move(t));
        }

        long long congestion = 1;
        for (VertexId v = 0; v < n; ++v) congestion = std::max(congestion, membership[v]);
        ledger.charge_bellman_ford("small-trees-level-" + std::to_string(i), level_budget,
                                   congestion);
    }
    return res;
}

std::vector<ClusterTree> build_middle_trees(const WeightedGraph& g, const LevelHierarchy& h,
                                            const PivotTable& pivots, const Rational& eps,
                                            const SourceDetectionFn& sd_fn, RoundLedger& ledger) {
    int k = h.k;
    if (k % 2 == 0) throw WrongParity("middle level exists only for odd k");
    int i = (k - 1) / 2;
    auto roots = h.roots_at(i);
    std::vector<ClusterTree> trees;
    if (roots.empty()) return trees;

    long long B = budget(g.n(), static_cast<double>(i + 1) / k);
    auto sd = sd_fn(g, roots, B, eps, ledger);

    for (VertexId u : roots) {
        ClusterTree t;
        t.root = u;
        t.level = i;
        for (VertexId v = 0; v < g.n(); ++v) {
            Dist b = sd.dist(v, u);
            if (v == u) {
                t.members[v] = ClusterMember{0, -1, -1};
                continue;
            }
            if (is_inf(b) || b >= pivots.dhat_at(i + 1, v)) continue;
            VertexId p = sd.parent_toward(v, u);
            t.members[v] = ClusterMember{b, p, g.port_of(v, p)};
        }
        trees.push_back(std::move(t));
    }
    return trees;
}

LargePreprocess preprocess_large(const WeightedGraph& g, const LevelHierarchy& h,
                                 const Rational& eps, const SourceDetectionFn& sd_fn,
                                 const HopsetConfig& hopset_cfg, RoundLedger& ledger,
                                 long long beta_override) {
    int k = h.k;
    int mid = (k + 1) / 2;
    LargePreprocess pre;
    if (mid >= static_cast<int>(h.sets.size())) return pre;
    pre.vprime = h.sets[mid];
    if (pre.vprime.empty()) return pre;

    double e = k % 2 == 0 ? 0.5 : 0.5 + 1.0 / (2 * k);
    pre.B = budget(g.n(), e);
    pre.sd = sd_fn(g, pre.vprime, pre.B, eps / 2, ledger);
    pre.gp = build_virtual_graph(pre.sd);
    pre.hopset = build_hopset(pre.gp, eps / 3, g.n(), k, hopset_cfg, ledger);
    pre.gpp = augment(pre.gp, pre.hopset);
    pre.beta = beta_override > 0 ? beta_override : pre.hopset.beta;
    return pre;
}

std::vector<ClusterTree> build_large_trees(const WeightedGraph& g, const LevelHierarchy& h,
                                           const PivotTable& pivots, const LargePreprocess& pre,
                                           const Rational& eps, RoundLedger& ledger) {
    int n = g.n();
    int k = h.k;
    int mid = (k + 1) / 2;
    std::vector<ClusterTree> trees;
    if (pre.vprime.empty()) return trees;

    int m = pre.gpp.size();
    Rational pow3 = rat_pow(Rational(1) + eps, 3);
    Rational pow1 = Rational(1) + eps;

    // parent links over hopset pairs route through the realizing path
    std::map<std::pair<int, int>, int> hopset_edge_of;
    for (size_t e = 0; e < pre.hopset.edges.size(); ++e) {
        const auto& he = pre.hopset.edges[e];
        hopset_edge_of[{std::min(he.x, he.y), std::max(he.x, he.y)}] = static_cast<int>(e);
    }

    for (int i = mid; i <= k - 1; ++i) {
        auto roots = h.roots_at(i);
        if (roots.empty()) continue;
        long long msgs_p1 = 0, msgs_p15 = 0, msgs_p2 = 0;

        for (VertexId u : roots) {
            int uidx = pre.gpp.index.at(u);
            std::vector<Dist> b(m, kInf);
            std::vector<int> vparent(m, -1);
            std::vector<char> joined(m, 0);
            b[uidx] = 0;
            joined[uidx] = 1;

            // phase 1: beta rounds of depth-bounded relaxation on G''
            for (long long it = 0; it < pre.beta; ++it) {
                auto prev = b;
                auto prevj = joined;
                bool changed = false;
                for (int v = 0; v < m; ++v) {
                    if (!prevj[v]) continue;
                    for (const auto& [w, wt] : pre.gpp.adj[v]) {
                        Dist cand = sat_add(prev[v], wt);
                        if (cand >= b[w]) continue;
                        if (!lt_div(cand, pivots.dhat_at(i + 1, pre.gpp.verts[w]), pow3)) continue;
                        b[w] = cand;
                        vparent[w] = v;
                        joined[w] = 1;
                        changed = true;
                        ++msgs_p1;
                    }
                }
                if (!changed) break;
            }

            // phase 1.5: virtual-parent links over hopset edges pull the
            // realizing path's vertices into the tree
            auto links = vparent;
            for (int y = 0; y < m; ++y) {
                int x = links[y];
                if (!joined[y] || x < 0) continue;
                auto it = hopset_edge_of.find({std::min(x, y), std::max(x, y)});
                if (it == hopset_edge_of.end()) continue;
                const auto& he = pre.hopset.edges[it->second];
                bool fwd = he.x == x;  // parent end is the stored x end
                size_t len = he.path.size();
                for (size_t j = 0; j < len; ++j) {
                    int v = he.path[j];
                    if (v == x) continue;
                    Dist dp = fwd ? he.prefix[j] : he.b - he.prefix[j];
                    Dist cand = sat_add(b[x], dp);
                    if (joined[v] && b[v] < cand) continue;
                    int toward = fwd ? (j > 0 ? he.path[j - 1] : x) : he.path[j + 1];
                    b[v] = cand;
                    joined[v] = 1;
                    vparent[v] = toward;
                    ++msgs_p15;
                }
            }

            ClusterTree t;
            t.root = u;
            t.level = i;
            long long virt_members = 0;
            for (int v = 0; v < m; ++v) {
                if (!joined[v]) continue;
                ++virt_members;
                VertexId gv = pre.gpp.verts[v];
                if (v == uidx) {
                    t.members[gv] = ClusterMember{0, -1, -1};
                    continue;
                }
                // real parent toward the virtual parent, per the
                // source-detection parent pointers
                VertexId vp = pre.gpp.verts[vparent[v]];
                VertexId p = pre.sd.parent_toward(gv, vp);
                t.members[gv] = ClusterMember{b[v], p, g.port_of(gv, p)};
            }
            msgs_p2 += virt_members;

            // phase 2: extend to all of V via the broadcast b values
            std::vector<int> virt;
            for (int v = 0; v < m; ++v)
                if (joined[v]) virt.push_back(v);  // increasing vertex order
            for (VertexId y = 0; y < n; ++y) {
                if (t.contains(y)) continue;
                Dist best = kInf;
                int bestv = -1;
                for (int v : virt) {
                    Dist cand = sat_add(pre.sd.dist(y, pre.gpp.verts[v]), b[v]);
                    if (cand < best) {
                        best = cand;
                        bestv = v;
                    }
                }
                if (bestv < 0) continue;
                if (!lt_div(best, pivots.dhat_at(i + 1, y), pow1)) continue;
                VertexId p = pre.sd.parent_toward(y, pre.gpp.verts[bestv]);
                t.members[y] = ClusterMember{best, p, g.port_of(y, p)};
            }
            trees.push_back(std::move(t));
        }

        long long D = g.hop_diameter();
        ledger.charge_broadcast("large-trees-phase1-level-" + std::to_string(i), msgs_p1, D);
        ledger.charge_broadcast("large-trees-phase1.5-level-" + std::to_string(i), msgs_p15, D);
        ledger.charge_broadcast("large-trees-phase2-level-" + std::to_string(i), msgs_p2, D);
    }
    return trees;
}

OverlapCensus overlap_census(const std::vector<ClusterTree>& trees, int n) {
    std::vector<long long> count(n, 0);
    for (const auto& t : trees)
        for (const auto& [v, m] : t.members) ++count[v];
    OverlapCensus c;
    for (VertexId v = 0; v < n; ++v) {
        c.max_count = std::max(c.max_count, count[v]);
        ++c.histogram[count[v]];
    }
    return c;
}

std::string cluster_tree_to_json(const ClusterTree& t) {
    std::ostringstream os;
    os << "{\"root\":" << t.root << ",\"level\":" << t.level << ",\"members\":[";
    bool first = true;
    for (const auto& [v, m] : t.members) {
        if (!first) os << ',';
        first = false;
        os << "{\"v\":" << v << ",\"b\":" << m.b << ",\"parent\":" << m.parent
           << ",\"port\":" << m.port << '}';
    }
    os << "]}";
    return os.str();
}

}  // namespace crs
