#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "crs/run.hpp"

namespace {

// flags can also come from the environment (CRS_K, CRS_SEED, ...)
std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compact routing scheme construction, routing and verification"};

    crs::RunConfig cfg;
    std::string gen = env_or("CRS_GEN", "erdos-renyi");
    std::string verify_lvl = env_or("CRS_VERIFY", "sampled");
    std::string eps_str = env_or("CRS_EPS", "");
    cfg.graph_file = env_or("CRS_GRAPH", "");
    cfg.k = std::stoi(env_or("CRS_K", "2"));
    cfg.seed = std::stoull(env_or("CRS_SEED", "0"));
    cfg.n = std::stoi(env_or("CRS_N", "100"));
    cfg.trick = env_or("CRS_TRICK", "1") != "0";
    cfg.strict = env_or("CRS_STRICT", "0") != "0";
    cfg.out_dir = env_or("CRS_OUT", "");

    app.add_option("--graph", cfg.graph_file, "edge-list file (first line 'n m', then 'u v w')");
    app.add_option("--gen", gen,
                   "generator: erdos-renyi | random-geometric | grid-with-random-weights");
    app.add_option("-n,--n", cfg.n, "vertex count for generated graphs");
    app.add_option("-k,--k", cfg.k, "number of levels (k >= 1)");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--eps", eps_str, "epsilon override as a rational, e.g. 1/768");
    app.add_option("--p", cfg.gen.p, "erdos-renyi edge probability");
    app.add_option("--radius", cfg.gen.radius, "random-geometric radius");
    app.add_option("--max-weight", cfg.gen.max_weight, "max edge weight");
    app.add_flag("--trick,!--no-trick", cfg.trick, "store member labels at level-0 roots");
    app.add_flag("--strict", cfg.strict, "strict congestion simulation for tree broadcasts");
    app.add_option("--verify", verify_lvl, "verification level: none | sampled | exhaustive");
    app.add_option("--verify-cap", cfg.exhaustive_cap, "max n for exhaustive verification");
    app.add_option("--out", cfg.out_dir, "output directory for report files");
    app.add_option("--run-id", cfg.run_id, "report file prefix");
    CLI11_PARSE(app, argc, argv);

    try {
        if (gen == "erdos-renyi") cfg.model = crs::GraphModel::ErdosRenyi;
        else if (gen == "random-geometric") cfg.model = crs::GraphModel::RandomGeometric;
        else if (gen == "grid-with-random-weights") cfg.model = crs::GraphModel::GridRandomWeights;
        else throw crs::GraphError("unknown generator: " + gen);

        if (verify_lvl == "none") cfg.verify_level = crs::VerifyLevel::None;
        else if (verify_lvl == "sampled") cfg.verify_level = crs::VerifyLevel::Sampled;
        else if (verify_lvl == "exhaustive") cfg.verify_level = crs::VerifyLevel::Exhaustive;
        else throw crs::GraphError("unknown verification level: " + verify_lvl);

        if (!eps_str.empty()) {
            auto slash = eps_str.find('/');
            if (slash == std::string::npos) cfg.eps = crs::Rational(std::stoll(eps_str));
            else
                cfg.eps = crs::Rational(std::stoll(eps_str.substr(0, slash)),
                                        std::stoll(eps_str.substr(slash + 1)));
        }

        auto rep = crs::run(cfg);
        std::cout << rep.text;
        return rep.all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
