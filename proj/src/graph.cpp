#include "crs/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace crs {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

}  // namespace

bool is_connected(int n, const std::vector<std::tuple<VertexId, VertexId, Dist>>& edges) {
    if (n == 0) return false;
    UnionFind uf(n);
    int comps = n;
    for (const auto& [u, v, w] : edges) {
        (void)w;
        if (uf.unite(u, v)) --comps;
    }
    return comps == 1;
}

WeightedGraph WeightedGraph::from_edges(int n, std::vector<std::tuple<VertexId, VertexId, Dist>> edges) {
    if (n <= 0) throw GraphError("empty graph");
    for (auto& [u, v, w] : edges) {
        if (u == v) throw GraphError("self-loop");
        if (u < 0 || v < 0 || u >= n || v >= n) throw GraphError("vertex id out of range");
        if (w < 1) throw GraphError("non-positive weight");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i) {
        if (std::get<0>(edges[i]) == std::get<0>(edges[i - 1]) &&
            std::get<1>(edges[i]) == std::get<1>(edges[i - 1]))
            throw GraphError("parallel edge");
    }
    if (!is_connected(n, edges)) throw ConnectivityFailure("graph is not connected");

    WeightedGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adj_.assign(n, {});
    for (const auto& [u, v, w] : g.edges_) {
        g.adj_[u].push_back({v, w});
        g.adj_[v].push_back({u, w});
    }
    for (auto& a : g.adj_)
        std::sort(a.begin(), a.end(), [](const AdjEntry& x, const AdjEntry& y) { return x.to < y.to; });
    return g;
}

int WeightedGraph::port_of(VertexId u, VertexId v) const {
    const auto& a = adj_[u];
    auto it = std::lower_bound(a.begin(), a.end(), v,
                               [](const AdjEntry& e, VertexId x) { return e.to < x; });
    if (it == a.end() || it->to != v) return -1;
    return static_cast<int>(it - a.begin());
}

Dist WeightedGraph::edge_weight(VertexId u, VertexId v) const {
    int p = port_of(u, v);
    return p < 0 ? kInf : adj_[u][p].w;
}

int WeightedGraph::hop_diameter() const {
    if (hop_diameter_ >= 0) return hop_diameter_;
    int diam = 0;
    std::vector<int> depth(n_);
    std::deque<VertexId> q;
    for (VertexId s = 0; s < n_; ++s) {
        std::fill(depth.begin(), depth.end(), -1);
        depth[s] = 0;
        q.clear();
        q.push_back(s);
        while (!q.empty()) {
            VertexId u = q.front();
            q.pop_front();
            diam = std::max(diam, depth[u]);
            for (const auto& e : adj_[u]) {
                if (depth[e.to] < 0) {
                    depth[e.to] = depth[u] + 1;
                    q.push_back(e.to);
                }
            }
        }
    }
    hop_diameter_ = diam;
    return diam;
}

void WeightedGraph::save(std::ostream& out) const {
    out << n_ << ' ' << edges_.size() << '\n';
    for (const auto& [u, v, w] : edges_) out << u << ' ' << v << ' ' << w << '\n';
}

void WeightedGraph::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot open " + path);
    save(out);
}

WeightedGraph WeightedGraph::load(std::istream& in) {
    int n, m;
    if (!(in >> n >> m)) throw GraphError("bad edge-list header");
    std::vector<std::tuple<VertexId, VertexId, Dist>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        VertexId u, v;
        Dist w;
        if (!(in >> u >> v >> w)) throw GraphError("bad edge line");
        edges.emplace_back(u, v, w);
    }
    return from_edges(n, std::move(edges));
}

WeightedGraph WeightedGraph::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path);
    return load(in);
}

namespace {

std::vector<std::tuple<VertexId, VertexId, Dist>> gen_once(GraphModel model, int n,
                                                           const GenParams& params,
                                                           std::mt19937_64& rng) {
    std::uniform_int_distribution<Dist> wdist(1, std::max<Dist>(1, params.max_weight));
    std::vector<std::tuple<VertexId, VertexId, Dist>> edges;
    switch (model) {
        case GraphModel::ErdosRenyi: {
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = u + 1; v < n; ++v)
                    if (coin(rng) < params.p) edges.emplace_back(u, v, wdist(rng));
            break;
        }
        case GraphModel::RandomGeometric: {
            std::uniform_real_distribution<double> coord(0.0, 1.0);
            std::vector<std::pair<double, double>> pts(n);
            for (auto& p : pts) p = {coord(rng), coord(rng)};
            double r2 = params.radius * params.radius;
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = u + 1; v < n; ++v) {
                    double dx = pts[u].first - pts[v].first;
                    double dy = pts[u].second - pts[v].second;
                    if (dx * dx + dy * dy <= r2) edges.emplace_back(u, v, wdist(rng));
                }
            break;
        }
        case GraphModel::GridRandomWeights: {
            int rows = params.rows, cols = params.cols;
            if (rows == 0 || cols == 0) {
                rows = static_cast<int>(std::round(std::sqrt(static_cast<double>(n))));
                if (rows < 1) rows = 1;
                cols = n / rows;
            }
            if (rows * cols != n) throw GraphError("grid dims do not match n");
            auto id = [&](int r, int c) { return r * cols + c; };
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) {
                    if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1), wdist(rng));
                    if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c), wdist(rng));
                }
            break;
        }
    }
    return edges;
}

}  // namespace

WeightedGraph generate_graph(GraphModel model, int n, const GenParams& params, uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < params.retries; ++attempt) {
        auto edges = gen_once(model, n, params, rng);
        if (is_connected(n, edges)) return WeightedGraph::from_edges(n, std::move(edges));
    }
    throw ConnectivityFailure("could not generate a connected instance after retries");
}

std::vector<VertexId> random_spanning_tree(const WeightedGraph& g, VertexId root, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n = g.n();
    std::vector<VertexId> parent(n, -2);
    parent[root] = -1;
    // randomized Prim: grow from root, picking a uniformly random frontier edge
    std::vector<std::pair<VertexId, VertexId>> frontier;  // (tree vertex, outside neighbor)
    for (const auto& e : g.neighbors(root)) frontier.emplace_back(root, e.to);
    int joined = 1;
    while (joined < n) {
        std::uniform_int_distribution<size_t> pick(0, frontier.size() - 1);
        size_t i = pick(rng);
        auto [u, v] = frontier[i];
        frontier[i] = frontier.back();
        frontier.pop_back();
        if (parent[v] != -2) continue;
        parent[v] = u;
        ++joined;
        for (const auto& e : g.neighbors(v))
            if (parent[e.to] == -2) frontier.emplace_back(v, e.to);
    }
    return parent;
}

}  // namespace crs
