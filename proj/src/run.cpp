#include "crs/run.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace crs {

namespace {

const char* model_name(GraphModel m) {
    switch (m) {
        case GraphModel::ErdosRenyi: return "erdos-renyi";
        case GraphModel::RandomGeometric: return "random-geometric";
        case GraphModel::GridRandomWeights: return "grid-with-random-weights";
    }
    return "?";
}

const char* level_name(VerifyLevel l) {
    switch (l) {
        case VerifyLevel::None: return "none";
        case VerifyLevel::Sampled: return "sampled";
        case VerifyLevel::Exhaustive: return "exhaustive";
    }
    return "?";
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << x;
    return os.str();
}

}  // namespace

RunReport run(const RunConfig& cfg) {
    WeightedGraph g = cfg.graph_file.empty()
                          ? generate_graph(cfg.model, cfg.n, cfg.gen, cfg.seed)
                          : WeightedGraph::load_file(cfg.graph_file);
    if (cfg.verify_level == VerifyLevel::Exhaustive && g.n() > cfg.exhaustive_cap)
        throw GraphError("exhaustive verification rejected for n > cap");

    BuildOptions opt;
    opt.k = cfg.k;
    opt.seed = cfg.seed;
    opt.eps_override = cfg.eps;
    opt.trick = cfg.trick;
    opt.strict = cfg.strict;
    auto art = build_scheme(g, opt);
    auto ver = verify(g, art, cfg.verify_level, cfg.seed + 1);

    RunReport rep;
    rep.all_pass = ver.all_pass();

    std::ostringstream js;
    js << "{\"config\":{";
    js << "\"graph\":\"" << (cfg.graph_file.empty() ? model_name(cfg.model) : cfg.graph_file)
       << "\",\"n\":" << g.n() << ",\"m\":" << g.m() << ",\"k\":" << cfg.k
       << ",\"seed\":" << cfg.seed << ",\"eps\":\""
       << rat_str(cfg.eps ? *cfg.eps : eps_for_k(cfg.k)) << "\",\"trick\":"
       << (cfg.trick ? "true" : "false") << ",\"strict\":" << (cfg.strict ? "true" : "false")
       << ",\"verify\":\"" << level_name(cfg.verify_level) << "\"},";
    js << "\"ledger\":" << art.ledger.to_json() << ',';
    js << "\"overlap\":{\"max\":" << art.census.max_count << ",\"histogram\":[";
    {
        bool first = true;
        for (const auto& [c, cnt] : art.census.histogram) {
            if (!first) js << ',';
            first = false;
            js << '[' << c << ',' << cnt << ']';
        }
    }
    js << "]},";
    js << "\"sizes\":{\"max_table_words\":" << art.routing.max_table_words
       << ",\"mean_table_words\":" << fmt(art.routing.mean_table_words)
       << ",\"max_label_words\":" << art.routing.max_label_words
       << ",\"mean_label_words\":" << fmt(art.routing.mean_label_words)
       << ",\"max_sketch_entries\":" << art.routing.max_sketch_entries
       << ",\"max_trick_words\":" << art.routing.max_trick_words << "},";
    js << "\"stretch\":{\"routing\":{\"max\":" << fmt(ver.routing.max_stretch)
       << ",\"mean\":" << fmt(ver.routing.mean_stretch) << ",\"pairs\":" << ver.routing.pairs
       << "},\"sketch\":{\"max\":" << fmt(ver.sketches.max_stretch)
       << ",\"mean\":" << fmt(ver.sketches.mean_stretch) << ",\"pairs\":" << ver.sketches.pairs
       << "},\"bound\":\"" << (cfg.k >= 2 ? rat_str(stretch_bound(cfg.k)) : std::string("1"))
       << "\"},";
    js << "\"strict_sim\":{\"violations\":" << art.stagger.violations
       << ",\"completion_round\":" << art.stagger.completion_round << ",\"s\":" << art.s << "},";
    js << "\"checks\":[";
    for (size_t i = 0; i < ver.checks.size(); ++i) {
        if (i) js << ',';
        js << "{\"name\":\"" << ver.checks[i].name << "\",\"pass\":"
           << (ver.checks[i].pass ? "true" : "false") << ",\"detail\":\"" << ver.checks[i].detail
           << "\"}";
    }
    js << "],\"all_pass\":" << (rep.all_pass ? "true" : "false") << '}';
    rep.json = js.str();

    std::ostringstream tx;
    tx << "graph " << (cfg.graph_file.empty() ? model_name(cfg.model) : cfg.graph_file) << " n="
       << g.n() << " m=" << g.m() << " k=" << cfg.k << " seed=" << cfg.seed << "\n";
    tx << "rounds charged: " << art.ledger.total_rounds() << " over "
       << art.ledger.stages().size() << " stages\n";
    tx << "overlap max: " << art.census.max_count << "\n";
    tx << "table words max/mean: " << art.routing.max_table_words << "/"
       << fmt(art.routing.mean_table_words) << ", label words max/mean: "
       << art.routing.max_label_words << "/" << fmt(art.routing.mean_label_words) << "\n";
    tx << "routing stretch max/mean: " << fmt(ver.routing.max_stretch) << "/"
       << fmt(ver.routing.mean_stretch) << " over " << ver.routing.pairs << " pairs\n";
    tx << "sketch stretch max/mean: " << fmt(ver.sketches.max_stretch) << "/"
       << fmt(ver.sketches.mean_stretch) << "\n";
    for (const auto& c : ver.checks)
        tx << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    tx << (rep.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    rep.text = tx.str();

    std::ostringstream cs;
    cs << cfg.run_id << ',' << g.n() << ',' << g.m() << ',' << cfg.k << ',' << cfg.seed << ','
       << art.ledger.total_rounds() << ',' << art.census.max_count << ','
       << art.routing.max_table_words << ',' << art.routing.max_label_words << ','
       << fmt(ver.routing.max_stretch) << ',' << fmt(ver.sketches.max_stretch) << ','
       << (rep.all_pass ? 1 : 0);
    rep.csv = cs.str();

    if (!cfg.out_dir.empty()) {
        std::ofstream(cfg.out_dir + "/" + cfg.run_id + ".json") << rep.json << '\n';
        std::ofstream(cfg.out_dir + "/" + cfg.run_id + ".txt") << rep.text;
        std::ofstream(cfg.out_dir + "/" + cfg.run_id + ".csv") << rep.csv << '\n';
    }
    return rep;
}

}  // namespace crs
