#pragma once

#include <cstdint>
#include <vector>

#include "crs/common.hpp"

namespace crs {

// Nested sampled sets A_0 = V >= A_1 >= ... >= A_k = {}. Each vertex of
// A_{i-1} enters A_i independently with probability n^{-1/k}.
struct LevelHierarchy {
    int n = 0;
    int k = 0;
    std::vector<std::vector<VertexId>> sets;  // sets[i], i = 0..k (sets[k] empty)
    std::vector<int> level;                   // max i with v in A_i

    bool in_set(int i, VertexId v) const { return i <= level[v]; }

    // vertices with level exactly i (the roots of level-i clusters)
    std::vector<VertexId> roots_at(int i) const;

    // reported (never fatal): |A_i| <= 4 n^{1-i/k} ln n per level
    std::vector<bool> size_bound_ok;
    bool all_size_bounds_ok() const;
};

LevelHierarchy sample_hierarchy(int n, int k, uint64_t seed);

}  // namespace crs
