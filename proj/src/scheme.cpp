#include "crs/scheme.hpp"

#include <algorithm>

namespace crs {

TreeSubgraph tree_from_cluster(const ClusterTree& t) {
    TreeSubgraph s;
    s.root = t.root;
    for (const auto& [v, m] : t.members) s.parent[v] = m.parent;
    return s;
}

SchemeArtifacts build_scheme(const WeightedGraph& g, const BuildOptions& opt) {
    if (opt.k < 1) throw GraphError("k must be >= 1");
    int n = g.n();
    int k = opt.k;
    Rational eps = opt.eps_override ? *opt.eps_override : eps_for_k(k);
    SourceDetectionFn sd = opt.sd ? opt.sd : SourceDetectionFn(source_detection_reference);

    SchemeArtifacts art;
    art.ledger.strict_mode = opt.strict;
    art.ledger.alpha = opt.alpha;

    auto h = sample_hierarchy(n, k, opt.seed);
    art.size_bounds_ok = h.all_size_bounds_ok();

    auto pivots = compute_pivots(g, h, eps, opt.seed ^ 0x5bf03635ULL, sd, opt.hopset, art.ledger,
                                 opt.beta_override);

    auto small = build_small_trees(g, h, pivots, art.ledger);
    art.small_budget_violations = small.budget_violations;
    std::vector<ClusterTree> trees = std::move(small.trees);

    if (k % 2 == 1 && k >= 3) {
        auto middle = build_middle_trees(g, h, pivots, eps, sd, art.ledger);
        for (auto& t : middle) trees.push_back(std::move(t));
    }

    auto pre = preprocess_large(g, h, eps, sd, opt.hopset, art.ledger, opt.beta_override);
    auto large = build_large_trees(g, h, pivots, pre, eps, art.ledger);
    for (auto& t : large) trees.push_back(std::move(t));

    std::sort(trees.begin(), trees.end(),
              [](const ClusterTree& a, const ClusterTree& b) { return a.root < b.root; });

    art.census = overlap_census(trees, n);

    std::vector<TreeSubgraph> subs;
    subs.reserve(trees.size());
    for (const auto& t : trees) subs.push_back(tree_from_cluster(t));
    auto par = build_all_trees_parallel(g, subs, opt.alpha, opt.seed ^ 0x9d2c5680ULL, opt.strict,
                                        art.ledger);
    art.s = par.s;
    art.gamma = par.gamma;
    art.stagger = par.stagger;
    for (const auto& b : par.bundles)
        if (!b.depth_ok) art.tree_depth_ok = false;

    art.routing = assemble(g, h, pivots, std::move(trees), std::move(par.bundles), eps, opt.trick);
    return art;
}

}  // namespace crs
