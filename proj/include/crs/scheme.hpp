#pragma once

#include <optional>

#include "crs/routing.hpp"

namespace crs {

struct BuildOptions {
    int k = 2;
    uint64_t seed = 0;
    std::optional<Rational> eps_override;  // default 1/(48 k^4)
    bool trick = true;
    bool strict = false;
    int alpha = 20;
    long long beta_override = -1;
    HopsetConfig hopset;
    SourceDetectionFn sd;  // defaults to the exact reference implementation
};

struct SchemeArtifacts {
    RoutingArtifacts routing;
    RoundLedger ledger;
    OverlapCensus census;
    long long small_budget_violations = 0;
    StaggerResult stagger;
    long long s = 1;        // measured max trees per vertex
    double gamma = 0;
    bool tree_depth_ok = true;   // every subtree within its depth bound
    bool size_bounds_ok = true;  // sampled level-set sizes within bound
};

TreeSubgraph tree_from_cluster(const ClusterTree& t);

SchemeArtifacts build_scheme(const WeightedGraph& g, const BuildOptions& opt);

}  // namespace crs
