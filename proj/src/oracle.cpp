#include "crs/oracle.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace crs {

OracleTables OracleTables::build(const WeightedGraph& g) {
    int n = g.n();
    OracleTables t;
    t.n = n;
    t.dist.assign(n, std::vector<Dist>(n, kInf));
    t.hops.assign(n, std::vector<int>(n, 0));
    t.parent.assign(n, std::vector<VertexId>(n, -1));

    using QEntry = std::pair<Dist, VertexId>;
    for (VertexId s = 0; s < n; ++s) {
        auto& dist = t.dist[s];
        std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> pq;
        dist[s] = 0;
        pq.push({0, s});
        std::vector<VertexId> order;
        order.reserve(n);
        std::vector<char> done(n, 0);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (done[u]) continue;
            done[u] = 1;
            order.push_back(u);
            for (const auto& e : g.neighbors(u)) {
                if (dist[u] + e.w < dist[e.to]) {
                    dist[e.to] = dist[u] + e.w;
                    pq.push({dist[e.to], e.to});
                }
            }
        }
        // finalize parents: smallest-id optimal predecessor
        for (VertexId v : order) {
            if (v == s) continue;
            VertexId best = -1;
            for (const auto& e : g.neighbors(v)) {
                if (!is_inf(dist[e.to]) && dist[e.to] + e.w == dist[v]) {
                    best = e.to;  // adjacency is sorted, first hit is smallest id
                    break;
                }
            }
            t.parent[s][v] = best;
            t.hops[s][v] = t.hops[s][best] + 1;  // order is by increasing dist, parent already done
        }
    }
    return t;
}

std::pair<Dist, VertexId> OracleTables::dist_to_set(VertexId v, const std::vector<VertexId>& set) const {
    Dist best = kInf;
    VertexId who = -1;
    for (VertexId a : set) {
        if (dist[v][a] < best || (dist[v][a] == best && who >= 0 && a < who)) {
            best = dist[v][a];
            who = a;
        }
    }
    return {best, who};
}

std::string OracleTables::to_json() const {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"dist\":[";
    for (int u = 0; u < n; ++u) {
        if (u) os << ',';
        os << '[';
        for (int v = 0; v < n; ++v) {
            if (v) os << ',';
            if (is_inf(dist[u][v])) os << "null";
            else os << dist[u][v];
        }
        os << ']';
    }
    os << "],\"hops\":[";
    for (int u = 0; u < n; ++u) {
        if (u) os << ',';
        os << '[';
        for (int v = 0; v < n; ++v) {
            if (v) os << ',';
            os << hops[u][v];
        }
        os << ']';
    }
    os << "]}";
    return os.str();
}

HopBoundedResult hop_bounded_dist(const WeightedGraph& g, const std::vector<VertexId>& sources,
                                  long long B) {
    int n = g.n();
    HopBoundedResult r;
    r.sources = sources;
    r.B = B;
    r.d.assign(sources.size(), std::vector<Dist>(n, kInf));
    r.parent.assign(sources.size(), std::vector<VertexId>(n, -1));

    long long iters = std::min<long long>(B, n - 1);
    for (size_t si = 0; si < sources.size(); ++si) {
        auto& d = r.d[si];
        auto& par = r.parent[si];
        d[sources[si]] = 0;
        std::vector<Dist> next(n);
        for (long long t = 0; t < iters; ++t) {
            next = d;
            bool changed = false;
            for (VertexId v = 0; v < n; ++v) {
                for (const auto& e : g.neighbors(v)) {
                    Dist cand = sat_add(d[e.to], e.w);
                    if (cand < next[v]) {  // adjacency sorted: ties keep smallest id
                        next[v] = cand;
                        par[v] = e.to;
                        changed = true;
                    }
                }
            }
            d.swap(next);
            if (!changed) break;
        }
    }
    return r;
}

}  // namespace crs
