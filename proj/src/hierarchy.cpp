#include "crs/hierarchy.hpp"

#include <cmath>
#include <random>

namespace crs {

LevelHierarchy sample_hierarchy(int n, int k, uint64_t seed) {
    if (k < 1) throw GraphError("k must be >= 1");
    LevelHierarchy h;
    h.n = n;
    h.k = k;
    h.level.assign(n, 0);
    h.sets.resize(k + 1);
    for (VertexId v = 0; v < n; ++v) h.sets[0].push_back(v);

    std::mt19937_64 rng(seed);
    double q = std::pow(static_cast<double>(n), -1.0 / k);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 1; i < k; ++i) {
        for (VertexId v : h.sets[i - 1]) {
            if (coin(rng) < q) {
                h.sets[i].push_back(v);
                h.level[v] = i;
            }
        }
    }
    // sets[k] stays empty by definition

    h.size_bound_ok.assign(k + 1, true);
    for (int i = 0; i <= k; ++i) {
        double bound = 4.0 * std::pow(static_cast<double>(n), 1.0 - static_cast<double>(i) / k) *
                       std::log(static_cast<double>(std::max(n, 2)));
        h.size_bound_ok[i] = static_cast<double>(h.sets[i].size()) <= bound;
    }
    return h;
}

bool LevelHierarchy::all_size_bounds_ok() const {
    for (bool ok : size_bound_ok)
        if (!ok) return false;
    return true;
}

std::vector<VertexId> LevelHierarchy::roots_at(int i) const {
    std::vector<VertexId> r;
    for (VertexId v : sets[i])
        if (level[v] == i) r.push_back(v);
    return r;
}

}  // namespace crs
