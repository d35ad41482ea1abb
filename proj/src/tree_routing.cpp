#include "crs/tree_routing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace crs {

namespace {

struct TreeScaffold {
    std::vector<VertexId> preorder;                    // root first
    std::map<VertexId, std::vector<VertexId>> children;  // sorted by id
};

TreeScaffold validate_tree(const WeightedGraph& g, const TreeSubgraph& t) {
    auto rit = t.parent.find(t.root);
    if (rit == t.parent.end() || rit->second != -1)
        throw NotATree("root missing or root has a parent");
    TreeScaffold sc;
    for (const auto& [v, p] : t.parent) {
        if (v == t.root) continue;
        if (p < 0 || !t.parent.count(p)) throw NotATree("parent of a member is not a member");
        if (g.port_of(v, p) < 0) throw NotASubgraph("tree edge is not a graph edge");
        sc.children[p].push_back(v);
    }
    // children come out sorted since t.parent iterates in id order
    std::vector<VertexId> stack{t.root};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        sc.preorder.push_back(x);
        auto it = sc.children.find(x);
        if (it == sc.children.end()) continue;
        for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) stack.push_back(*c);
    }
    if (sc.preorder.size() != t.parent.size()) throw NotATree("tree is not connected to its root");
    return sc;
}

int log2_ceil_words(int n) {
    int l = 1;
    while ((1LL << l) < n) ++l;
    return std::max(1, l);
}

}  // namespace

uint64_t derive_tree_seed(uint64_t seed, size_t tree_index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tree_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TreeRoutingBundle build_tree_routing(const WeightedGraph& g, const TreeSubgraph& t, double gamma,
                                     uint64_t seed, RoundLedger& ledger) {
    int n = g.n();
    auto sc = validate_tree(g, t);

    TreeRoutingBundle out;
    out.root = t.root;
    out.B = ceil_ll(4.0 * n / std::max(gamma, 1.0) * std::log(std::max(n, 2)));

    // portals: U sampled with probability gamma/n over all of V, plus the root
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    double q = std::min(1.0, gamma / n);
    std::vector<char> in_u(n, 0);
    for (VertexId v = 0; v < n; ++v)
        if (coin(rng) < q) in_u[v] = 1;

    std::map<VertexId, char> portal;  // U(T)
    for (const auto& [v, p] : t.parent) portal[v] = in_u[v];
    portal[t.root] = 1;

    // subtree root w(v): nearest ancestor in U(T), self included
    std::map<VertexId, VertexId> sub_root;
    for (VertexId v : sc.preorder)
        sub_root[v] = portal[v] ? v : sub_root[t.parent.at(v)];

    // subtree sizes and depths (within T_{w(v)})
    std::map<VertexId, long long> size;
    std::map<VertexId, long long> depth;
    for (auto it = sc.preorder.rbegin(); it != sc.preorder.rend(); ++it) size[*it] = 1;
    for (auto it = sc.preorder.rbegin(); it != sc.preorder.rend(); ++it) {
        VertexId v = *it;
        if (v != t.root && !portal[v]) size[t.parent.at(v)] += size[v];
    }
    for (VertexId v : sc.preorder) {
        depth[v] = portal[v] ? 0 : depth[t.parent.at(v)] + 1;
        out.max_subtree_depth = std::max(out.max_subtree_depth, depth[v]);
    }
    out.depth_ok = out.max_subtree_depth <= out.B;

    // heavy child within the subtree: largest subtree, smallest id on ties
    std::map<VertexId, VertexId> heavy;
    for (VertexId v : sc.preorder) {
        VertexId h = -1;
        auto it = sc.children.find(v);
        if (it != sc.children.end())
            for (VertexId c : it->second) {
                if (portal[c]) continue;
                if (h < 0 || size[c] > size[h]) h = c;
            }
        heavy[v] = h;
    }

    // per-subtree preorder DFS: interval [a, a+size), children in id order
    std::map<VertexId, int> a, b;
    {
        std::map<VertexId, int> counter;
        for (VertexId v : sc.preorder) {
            int& c = counter[sub_root[v]];
            a[v] = c;
            b[v] = c + static_cast<int>(size[v]);
            ++c;
        }
    }

    // local labels down each subtree
    std::map<VertexId, LocalLabel> local;
    for (VertexId v : sc.preorder) {
        LocalLabel l;
        if (!portal[v]) {
            VertexId p = t.parent.at(v);
            l = local[p];
            if (heavy[p] != v) l.edges.push_back({p, g.port_of(p, v)});
        }
        l.a = a[v];
        local[v] = std::move(l);
    }

    // virtual tree T' on the portals
    std::map<VertexId, VertexId> tparent;
    std::map<VertexId, std::vector<VertexId>> tchildren;
    std::vector<VertexId> tpre;
    for (const auto& [w, isp] : portal) {
        if (!isp) continue;
        if (w == t.root) tparent[w] = -1;
        else {
            VertexId pw = sub_root.at(t.parent.at(w));
            tparent[w] = pw;
            tchildren[pw].push_back(w);
        }
    }
    {
        std::vector<VertexId> stack{t.root};
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            tpre.push_back(x);
            auto it = tchildren.find(x);
            if (it == tchildren.end()) continue;
            for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) stack.push_back(*c);
        }
    }
    std::map<VertexId, long long> tsize;
    for (auto it = tpre.rbegin(); it != tpre.rend(); ++it) {
        tsize[*it] += 1;
        if (tparent[*it] >= 0) tsize[tparent[*it]] += tsize[*it];
    }
    std::map<VertexId, VertexId> theavy;
    for (VertexId w : tpre) {
        VertexId h = -1;
        auto it = tchildren.find(w);
        if (it != tchildren.end())
            for (VertexId c : it->second)
                if (h < 0 || tsize[c] > tsize[h]) h = c;
        theavy[w] = h;
    }
    std::map<VertexId, int> ga, gb;
    {
        int c = 0;
        for (VertexId w : tpre) {
            ga[w] = c;
            gb[w] = c + static_cast<int>(tsize[w]);
            ++c;
        }
    }

    // portal info: y' = T-parent of the heavy virtual child, living in T_w
    std::map<VertexId, std::pair<LocalLabel, int>> portal_info;
    for (VertexId w : tpre) {
        VertexId hc = theavy[w];
        if (hc < 0) continue;
        VertexId y = t.parent.at(hc);
        portal_info[w] = {local[y], g.port_of(y, hc)};
    }

    for (VertexId v : sc.preorder) {
        TreeTable tab;
        tab.self = v;
        tab.tree_parent = t.parent.at(v);
        tab.parent_port = tab.tree_parent >= 0 ? g.port_of(v, tab.tree_parent) : -1;
        tab.heavy = heavy[v];
        tab.heavy_port = tab.heavy >= 0 ? g.port_of(v, tab.heavy) : -1;
        tab.a = a[v];
        tab.b = b[v];
        tab.sub_root = sub_root[v];
        VertexId w = tab.sub_root;
        tab.ga = ga[w];
        tab.gb = gb[w];
        tab.heavy_tchild = theavy[w];
        if (tab.heavy_tchild >= 0) {
            tab.portal_label = portal_info[w].first;
            tab.portal_port = portal_info[w].second;
        }
        out.max_table_words = std::max(out.max_table_words, tab.words());
        out.tables[v] = std::move(tab);

        TreeLabel lab;
        lab.self = v;
        lab.local = local[v];
        lab.ga = ga[w];
        // non-heavy virtual edges on the T' path from the root down to w
        std::vector<VertexId> chain;
        for (VertexId x = w; x >= 0; x = tparent[x]) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            VertexId vi = chain[i], wi = chain[i + 1];
            if (theavy[vi] == wi) continue;
            GlobalEntry e;
            e.vi = vi;
            e.wi = wi;
            VertexId xi = t.parent.at(wi);
            e.portal_label = local[xi];
            e.portal_port = g.port_of(xi, wi);
            lab.global.push_back(std::move(e));
        }
        out.max_label_words = std::max(out.max_label_words, lab.words());
        out.labels[v] = std::move(lab);
    }

    // broadcast trees of the forest, for strict-mode staggering
    std::map<VertexId, size_t> bt_index;
    for (VertexId w : tpre) {
        bt_index[w] = out.subtree_broadcasts.size();
        out.subtree_broadcasts.push_back(BroadcastTree{w, {}, {}});
    }
    for (VertexId v : sc.preorder) {
        if (portal[v]) continue;
        auto& bt = out.subtree_broadcasts[bt_index[sub_root[v]]];
        bt.edges.push_back({t.parent.at(v), v});
        bt.child_depth.push_back(static_cast<int>(depth[v]));
    }

    int L = log2_ceil_words(n);
    long long rounds = out.B * L + ceil_ll(gamma * L * L) + g.hop_diameter();
    std::ostringstream f;
    f << "B*log n + gamma*log^2 n + D = " << out.B << "*" << L << " + ceil(" << gamma << "*" << L
      << "^2) + " << g.hop_diameter();
    ledger.charge("tree-routing", f.str(), rounds, ceil_ll(gamma * L * L));
    return out;
}

namespace {

// interval routing toward a target local label inside the same subtree
TreeStep local_step(const TreeTable& t, const LocalLabel& target) {
    if (target.a == t.a) return {true, -1};
    if (!(t.a < target.a && target.a < t.b)) {
        if (t.parent_port < 0) throw MalformedLabel("local target outside the rooted subtree");
        return {false, t.parent_port};
    }
    for (const auto& [v, port] : target.edges)
        if (v == t.self) return {false, port};
    if (t.heavy_port < 0) throw MalformedLabel("descent required at a leaf");
    return {false, t.heavy_port};
}

}  // namespace

TreeStep tree_route_step(const TreeTable& t, const TreeLabel& l) {
    if (l.ga == t.ga) return local_step(t, l.local);  // destination shares our subtree

    if (!(t.ga < l.ga && l.ga < t.gb)) {
        // climb toward the parent portal's subtree
        if (t.parent_port < 0) throw MalformedLabel("destination outside the tree");
        return {false, t.parent_port};
    }

    // destination lies under a virtual child of our subtree root
    for (const auto& e : l.global) {
        if (e.vi != t.sub_root) continue;
        if (t.a == e.portal_label.a) return {false, e.portal_port};
        auto s = local_step(t, e.portal_label);
        if (s.arrived) throw MalformedLabel("portal label collided with current vertex");
        return s;
    }
    // no explicit entry: descend via the heavy virtual child's portal
    if (t.heavy_tchild < 0) throw MalformedLabel("no virtual child to descend to");
    if (t.a == t.portal_label.a) return {false, t.portal_port};
    auto s = local_step(t, t.portal_label);
    if (s.arrived) throw MalformedLabel("portal label collided with current vertex");
    return s;
}

std::vector<VertexId> tree_route(const WeightedGraph& g, const TreeRoutingBundle& b, VertexId u,
                                 VertexId v) {
    std::vector<VertexId> path{u};
    if (u == v) return path;
    const TreeLabel& label = b.labels.at(v);
    VertexId cur = u;
    long long guard = 2LL * static_cast<long long>(b.tables.size()) + 4;
    while (guard-- > 0) {
        auto s = tree_route_step(b.tables.at(cur), label);
        if (s.arrived) {
            if (cur != v) throw MalformedLabel("arrived at the wrong vertex");
            return path;
        }
        cur = g.neighbor_at(cur, s.port);
        path.push_back(cur);
    }
    throw GraphError("tree routing did not terminate");
}

ParallelBuildResult build_all_trees_parallel(const WeightedGraph& g,
                                             const std::vector<TreeSubgraph>& trees, int alpha,
                                             uint64_t seed, bool strict, RoundLedger& ledger) {
    int n = g.n();
    ParallelBuildResult res;
    std::vector<long long> count(n, 0);
    for (const auto& t : trees)
        for (const auto& [v, p] : t.parent) ++count[v];
    for (VertexId v = 0; v < n; ++v) res.s = std::max(res.s, count[v]);
    res.gamma = std::max(1.0, std::sqrt(static_cast<double>(n) / res.s));

    RoundLedger scratch;
    for (size_t i = 0; i < trees.size(); ++i)
        res.bundles.push_back(
            build_tree_routing(g, trees[i], res.gamma, derive_tree_seed(seed, i), scratch));

    long long B = ceil_ll(4.0 * n / res.gamma * std::log(std::max(n, 2)));
    int L = log2_ceil_words(n);
    long long D = g.hop_diameter();
    long long rounds = B * L + ceil_ll(res.gamma * res.s * L * L) + D;
    std::ostringstream f;
    f << "B*log n + gamma*s*log^2 n + D = " << B << "*" << L << " + ceil(" << res.gamma << "*"
      << res.s << "*" << L << "^2) + " << D;
    ledger.charge("tree-routing-parallel", f.str(), rounds, ceil_ll(res.gamma * res.s * L * L));

    if (strict) {
        std::vector<BroadcastTree> forest;
        for (const auto& bdl : res.bundles)
            for (const auto& bt : bdl.subtree_broadcasts) forest.push_back(bt);
        long long st_max = std::max<long long>(
            1, ceil_ll(4.0 * std::log(std::max(n, 2)) *
                       std::sqrt(static_cast<double>(n) * res.s)));
        std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
        std::uniform_int_distribution<long long> st(1, st_max);
        std::vector<long long> starts;
        starts.reserve(forest.size());
        for (size_t i = 0; i < forest.size(); ++i) starts.push_back(st(rng));
        res.stagger = simulate_staggered_broadcast(forest, starts, alpha);
        std::ostringstream sf;
        sf << "alpha*(st_max + B) = " << alpha << "*(" << st_max << " + " << B << ")";
        ledger.charge("tree-routing-staggered-broadcast", sf.str(), alpha * (st_max + B),
                      static_cast<long long>(forest.size()));
    }
    return res;
}

std::string tree_bundle_to_json(const TreeRoutingBundle& b) {
    std::ostringstream os;
    os << "{\"root\":" << b.root << ",\"B\":" << b.B << ",\"max_depth\":" << b.max_subtree_depth
       << ",\"max_table_words\":" << b.max_table_words
       << ",\"max_label_words\":" << b.max_label_words << ",\"vertices\":[";
    bool first = true;
    for (const auto& [v, tab] : b.tables) {
        if (!first) os << ',';
        first = false;
        const auto& lab = b.labels.at(v);
        os << "{\"v\":" << v << ",\"a\":" << tab.a << ",\"b\":" << tab.b << ",\"w\":" << tab.sub_root
           << ",\"ga\":" << tab.ga << ",\"gb\":" << tab.gb << ",\"label_words\":" << lab.words()
           << '}';
    }
    os << "]}";
    return os.str();
}

}  // namespace crs
