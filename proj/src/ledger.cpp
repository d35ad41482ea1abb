#include "crs/ledger.hpp"

#include <algorithm>
#include <sstream>

namespace crs {

void RoundLedger::charge(std::string name, std::string formula, long long rounds, long long messages) {
    stages_.push_back({std::move(name), std::move(formula), rounds, messages});
}

void RoundLedger::charge_broadcast(const std::string& name, long long M, long long D) {
    std::ostringstream f;
    f << "M + D = " << M << " + " << D;
    charge(name, f.str(), M + D, M);
}

void RoundLedger::charge_bellman_ford(const std::string& name, long long iterations, long long congestion) {
    std::ostringstream f;
    f << "iters * congestion = " << iterations << " * " << congestion;
    charge(name, f.str(), iterations * congestion, iterations * congestion);
}

long long RoundLedger::total_rounds() const {
    long long t = 0;
    for (const auto& s : stages_) t += s.rounds;
    return t;
}

long long RoundLedger::total_messages() const {
    long long t = 0;
    for (const auto& s : stages_) t += s.messages;
    return t;
}

std::string RoundLedger::to_json() const {
    std::ostringstream os;
    os << "{\"strict\":" << (strict_mode ? "true" : "false") << ",\"alpha\":" << alpha
       << ",\"total_rounds\":" << total_rounds() << ",\"stages\":[";
    for (size_t i = 0; i < stages_.size(); ++i) {
        const auto& s = stages_[i];
        if (i) os << ',';
        os << "{\"name\":\"" << s.name << "\",\"formula\":\"" << s.formula
           << "\",\"rounds\":" << s.rounds << ",\"messages\":" << s.messages << '}';
    }
    os << "]}";
    return os.str();
}

std::string RoundLedger::csv_row(const std::string& run_id) const {
    std::ostringstream os;
    os << run_id << ',' << stages_.size() << ',' << total_rounds() << ',' << total_messages();
    return os.str();
}

StaggerResult simulate_staggered_broadcast(const std::vector<BroadcastTree>& forest,
                                           const std::vector<long long>& start_times, int alpha) {
    StaggerResult r;
    // usage[(edge, stage)] -> set of trees, tracked as counts of distinct trees
    std::map<std::pair<std::pair<VertexId, VertexId>, long long>, long long> usage;
    for (size_t t = 0; t < forest.size(); ++t) {
        const auto& tree = forest[t];
        long long st = start_times[t];
        long long depth = 0;
        for (size_t i = 0; i < tree.edges.size(); ++i) {
            auto [p, c] = tree.edges[i];
            if (p > c) std::swap(p, c);
            long long stage = st + tree.child_depth[i] - 1;
            ++usage[{{p, c}, stage}];
            depth = std::max<long long>(depth, tree.child_depth[i]);
        }
        r.completion_round = std::max(r.completion_round, (long long)alpha * (st + depth));
    }
    for (const auto& [key, trees] : usage)
        if (trees > alpha) ++r.violations;
    return r;
}

}  // namespace crs
