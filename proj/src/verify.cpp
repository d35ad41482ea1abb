#include "crs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace crs {

namespace {

std::string count_detail(long long violations, long long checked) {
    std::ostringstream os;
    os << violations << " violations over " << checked << " checks";
    return os.str();
}

void record_stretch(StretchStats& s, double stretch) {
    s.max_stretch = std::max(s.max_stretch, stretch);
    s.mean_stretch += stretch;  // finalized later
    ++s.pairs;
    int bucket = static_cast<int>(std::floor((stretch - 1.0) * 4.0));
    bucket = std::clamp(bucket, 0, 39);
    if (static_cast<int>(s.histogram.size()) < 40) s.histogram.resize(40, 0);
    ++s.histogram[bucket];
}

void finalize_stretch(StretchStats& s) {
    if (s.pairs > 0) s.mean_stretch /= static_cast<double>(s.pairs);
}

bool is_exact_level(int i, int k) {
    int mid = (k + 1) / 2;
    if (i >= mid) return false;
    if (k % 2 == 1 && k >= 3 && i == (k - 1) / 2) return false;
    return true;
}

}  // namespace

std::vector<VertexId> cluster_tree_path(const ClusterTree& t, VertexId u, VertexId v) {
    auto chain = [&t](VertexId x) {
        std::vector<VertexId> c{x};
        size_t guard = t.members.size() + 1;
        while (c.back() != t.root && guard-- > 0) c.push_back(t.members.at(c.back()).parent);
        if (c.back() != t.root) throw NotATree("parent chain does not reach the root");
        return c;
    };
    auto cu = chain(u);
    auto cv = chain(v);
    std::map<VertexId, size_t> pos;
    for (size_t i = 0; i < cv.size(); ++i) pos[cv[i]] = i;
    std::vector<VertexId> path;
    size_t meet = 0;
    for (VertexId x : cu) {
        path.push_back(x);
        auto it = pos.find(x);
        if (it != pos.end()) {
            meet = it->second;
            break;
        }
    }
    for (size_t i = meet; i-- > 0;) path.push_back(cv[i]);
    return path;
}

VerifyOutput verify(const WeightedGraph& g, const SchemeArtifacts& art, VerifyLevel level,
                    uint64_t sample_seed, const OracleTables* oracle_in) {
    VerifyOutput out;
    if (level == VerifyLevel::None) return out;

    int n = g.n();
    int k = art.routing.k;
    const Rational& eps = art.routing.eps;
    Rational pow4 = rat_pow(Rational(1) + eps, 4);
    Rational one6 = Rational(1) + 6 * eps;

    OracleTables local;
    if (!oracle_in) local = OracleTables::build(g);
    const OracleTables& oracle = oracle_in ? *oracle_in : local;

    const auto& h = art.routing.hierarchy;
    const auto& pivots = art.routing.pivots;

    // distance to each level set, shared by several checks
    std::vector<std::vector<Dist>> dset(k + 1, std::vector<Dist>(n, kInf));
    for (int i = 1; i <= k; ++i)
        for (VertexId v = 0; v < n; ++v) dset[i][v] = oracle.dist_to_set(v, h.sets[i]).first;

    // pivot contracts
    {
        long long bad = 0, checked = 0;
        for (int i = 0; i < k; ++i) {
            bool exact = i <= (k + 1) / 2;
            for (VertexId v = 0; v < n; ++v) {
                ++checked;
                Dist truth = i == 0 ? 0 : dset[i][v];
                Dist dh = pivots.dhat_at(i, v);
                VertexId zh = pivots.zhat_at(i, v);
                if (h.sets[i].empty() && i > 0) {
                    if (!is_inf(dh) || zh != -1) ++bad;
                    continue;
                }
                if (zh < 0 || h.level[zh] < i) {
                    ++bad;
                    continue;
                }
                Dist dz = v == zh ? 0 : oracle.d(v, zh);
                if (exact) {
                    if (dh != truth || dz != dh) ++bad;
                } else {
                    if (dh < truth || !le_mul(dh, Rational(1) + eps, truth) || dz > dh) ++bad;
                }
            }
        }
        out.checks.push_back({"pivot-contracts", bad == 0, count_detail(bad, checked)});
    }

    // per-tree invariants
    long long sandwich_bad = 0, sandwich_checked = 0;
    long long est_bad = 0, est_checked = 0;
    long long treedist_bad = 0, treedist_checked = 0;
    long long closure_bad = 0, closure_checked = 0;
    long long exact_bad = 0, exact_checked = 0;
    for (const auto& t : art.routing.trees) {
        VertexId u = t.root;
        int i = t.level;
        const auto& thresh = i + 1 <= k ? dset[i + 1] : dset[k];

        for (VertexId v = 0; v < n; ++v) {
            ++sandwich_checked;
            bool member = t.contains(v);
            bool in_c = oracle.d(u, v) < thresh[v];  // strict; inf threshold admits all
            bool in_c6 = lt_div(oracle.d(u, v), thresh[v], one6);
            if (member && !in_c) ++sandwich_bad;
            if (in_c6 && !member) ++sandwich_bad;
            if (is_exact_level(i, k)) {
                ++exact_checked;
                if (member != in_c) ++exact_bad;
                else if (member && t.b_of(v) != oracle.d(u, v)) ++exact_bad;
            }
        }

        // parent closure and tree distances, memoized along the chains
        std::map<VertexId, Dist> dtree;
        dtree[u] = 0;
        for (const auto& [v, m] : t.members) {
            if (v == u) continue;
            ++closure_checked;
            if (!t.contains(m.parent)) {
                ++closure_bad;
                continue;
            }
            Dist w = g.edge_weight(v, m.parent);
            if (is_inf(w) || m.b < sat_add(w, t.members.at(m.parent).b)) ++closure_bad;
        }
        for (const auto& [v0, m0] : t.members) {
            ++est_checked;
            Dist d = oracle.d(u, v0);
            if (m0.b < d || !le_mul(m0.b, pow4, d)) ++est_bad;

            ++treedist_checked;
            std::vector<VertexId> stack;
            VertexId x = v0;
            size_t guard = t.members.size() + 1;
            bool ok = true;
            while (!dtree.count(x)) {
                if (guard-- == 0 || !t.contains(x)) {
                    ok = false;
                    break;
                }
                stack.push_back(x);
                x = t.members.at(x).parent;
                if (x < 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                ++treedist_bad;
                continue;
            }
            Dist acc = dtree.at(x);
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                acc = sat_add(acc, g.edge_weight(*it, t.members.at(*it).parent));
                dtree[*it] = acc;
            }
            Dist dt = dtree.at(v0);
            if (dt < d || !le_mul(dt, pow4, d)) ++treedist_bad;
        }
    }
    out.checks.push_back(
        {"cluster-sandwich", sandwich_bad == 0, count_detail(sandwich_bad, sandwich_checked)});
    out.checks.push_back({"estimate-bounds", est_bad == 0, count_detail(est_bad, est_checked)});
    out.checks.push_back(
        {"tree-distance-bound", treedist_bad == 0, count_detail(treedist_bad, treedist_checked)});
    out.checks.push_back(
        {"parent-closure", closure_bad == 0, count_detail(closure_bad, closure_checked)});
    out.checks.push_back(
        {"small-trees-exact", exact_bad == 0, count_detail(exact_bad, exact_checked)});

    // tree-routing exactness on a capped per-tree pair sample
    {
        long long bad = 0, checked = 0;
        std::mt19937_64 rng(sample_seed ^ 0x1f2e3d4cULL);
        for (size_t ti = 0; ti < art.routing.trees.size(); ++ti) {
            const auto& t = art.routing.trees[ti];
            std::vector<VertexId> verts;
            for (const auto& [v, m] : t.members) verts.push_back(v);
            if (verts.size() < 2) continue;
            long long cap = level == VerifyLevel::Exhaustive ? 500 : 50;
            std::uniform_int_distribution<size_t> pick(0, verts.size() - 1);
            for (long long p = 0; p < cap; ++p) {
                VertexId a = verts[pick(rng)];
                VertexId b = verts[pick(rng)];
                if (a == b) continue;
                ++checked;
                auto expected = cluster_tree_path(t, a, b);
                auto got = tree_route(g, art.routing.bundles[ti], a, b);
                if (got != expected) ++bad;
            }
        }
        out.checks.push_back(
            {"tree-routing-exactness", bad == 0, count_detail(bad, checked)});
    }

    // routed stretch and sketch stretch over the pair set
    {
        std::vector<std::pair<VertexId, VertexId>> pairs;
        if (level == VerifyLevel::Exhaustive) {
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = 0; v < n; ++v)
                    if (u != v) pairs.push_back({u, v});
        } else {
            long long want = std::max<long long>(200, 1LL * n * n / 100);
            std::mt19937_64 rng(sample_seed);
            std::uniform_int_distribution<VertexId> pick(0, n - 1);
            while (static_cast<long long>(pairs.size()) < want) {
                VertexId u = pick(rng), v = pick(rng);
                if (u != v) pairs.push_back({u, v});
            }
        }

        Rational bound = k >= 2 ? stretch_bound(k) : Rational(1);
        Rational env = sketch_envelope(k);
        long long route_bad = 0, coher_bad = 0, sketch_bad = 0;
        for (auto [u, v] : pairs) {
            Dist d = oracle.d(u, v);
            auto r = route(g, art.routing, u, v);
            bool ok = r.cost >= d && le_mul(r.cost, bound, d) && !r.path.empty() &&
                      r.path.front() == u && r.path.back() == v;
            for (size_t i = 0; ok && i + 1 < r.path.size(); ++i)
                if (is_inf(g.edge_weight(r.path[i], r.path[i + 1]))) ok = false;
            if (!ok) ++route_bad;
            else record_stretch(out.routing, static_cast<double>(r.cost) / d);
            if (!r.used_trick) {
                const auto& t = art.routing.tree_of_root(r.tree_root);
                if (!t.contains(u) || !t.contains(v)) ++coher_bad;
            }

            auto sd = sketch_dist(art.routing.sketches[u], art.routing.sketches[v], k);
            bool sok = sd.estimate >= d && le_mul(sd.estimate, env, d) && sd.iterations < k;
            if (!sok) ++sketch_bad;
            else record_stretch(out.sketches, static_cast<double>(sd.estimate) / d);
        }
        out.checks.push_back({"routing-stretch", route_bad == 0,
                              count_detail(route_bad, static_cast<long long>(pairs.size()))});
        out.checks.push_back({"find-tree-coherence", coher_bad == 0,
                              count_detail(coher_bad, static_cast<long long>(pairs.size()))});
        out.checks.push_back({"sketch-stretch", sketch_bad == 0,
                              count_detail(sketch_bad, static_cast<long long>(pairs.size()))});
    }

    finalize_stretch(out.routing);
    finalize_stretch(out.sketches);
    return out;
}

}  // namespace crs
