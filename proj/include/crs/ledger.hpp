#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crs/common.hpp"

namespace crs {

struct LedgerStage {
    std::string name;
    std::string formula;  // the symbolic charge, e.g. "M + D = 100 + 5"
    long long rounds = 0;
    long long messages = 0;
};

// CONGEST round accounting. Every asymptotic charge is recorded with
// constant factor 1 and the exact formula value; totals are reproducible
// per seed and decompose by stage.
class RoundLedger {
  public:
    bool strict_mode = false;
    int alpha = 20;  // staggered-broadcast stage length

    void charge(std::string name, std::string formula, long long rounds, long long messages);

    // broadcast of M words over the BFS tree: M + D rounds
    void charge_broadcast(const std::string& name, long long M, long long D);

    // iterations x per-iteration congestion rounds
    void charge_bellman_ford(const std::string& name, long long iterations, long long congestion);

    const std::vector<LedgerStage>& stages() const { return stages_; }
    long long total_rounds() const;
    long long total_messages() const;

    std::string to_json() const;
    std::string csv_row(const std::string& run_id) const;

  private:
    std::vector<LedgerStage> stages_;
};

// One tree of a staggered broadcast: parent-pointer representation over
// graph vertices. Edge at child depth j is demanded during stage st + j - 1.
struct BroadcastTree {
    VertexId root = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;  // (parent, child), parent closer to root
    std::vector<int> child_depth;                      // depth of child below root (>= 1)
};

struct StaggerResult {
    long long completion_round = 0;
    long long violations = 0;  // (edge, stage) pairs demanded by more than alpha trees
};

StaggerResult simulate_staggered_broadcast(const std::vector<BroadcastTree>& forest,
                                           const std::vector<long long>& start_times, int alpha);

}  // namespace crs
