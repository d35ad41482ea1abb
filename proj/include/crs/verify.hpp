#pragma once

#include <string>
#include <vector>

#include "crs/oracle.hpp"
#include "crs/scheme.hpp"

namespace crs {

enum class VerifyLevel { None, Sampled, Exhaustive };

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct StretchStats {
    double max_stretch = 0;
    double mean_stretch = 0;
    long long pairs = 0;
    // bucket j counts stretches in [1 + j/4, 1 + (j+1)/4)
    std::vector<long long> histogram;
};

struct VerifyOutput {
    std::vector<CheckResult> checks;
    StretchStats routing;
    StretchStats sketches;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Named invariant checks against the exact oracle. Sampled level draws a
// seeded 1% of ordered pairs; exhaustive covers them all.
VerifyOutput verify(const WeightedGraph& g, const SchemeArtifacts& art, VerifyLevel level,
                    uint64_t sample_seed = 1, const OracleTables* oracle = nullptr);

// the unique u-v path in a cluster tree, via the parent chains
std::vector<VertexId> cluster_tree_path(const ClusterTree& t, VertexId u, VertexId v);

}  // namespace crs
