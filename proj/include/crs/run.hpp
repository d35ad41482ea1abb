#pragma once

#include <string>

#include "crs/verify.hpp"

namespace crs {

struct RunConfig {
    // graph source: a file path, or a generator spec
    std::string graph_file;
    GraphModel model = GraphModel::ErdosRenyi;
    int n = 100;
    GenParams gen;

    int k = 2;
    uint64_t seed = 0;
    std::optional<Rational> eps;  // default 1/(48 k^4)
    bool trick = true;
    bool strict = false;
    VerifyLevel verify_level = VerifyLevel::Sampled;
    int exhaustive_cap = 1000;  // largest n accepted for exhaustive verification
    std::string out_dir;        // empty: no files written
    std::string run_id = "run";
};

struct RunReport {
    bool all_pass = true;
    std::string json;
    std::string text;
    std::string csv;
};

RunReport run(const RunConfig& cfg);

}  // namespace crs
