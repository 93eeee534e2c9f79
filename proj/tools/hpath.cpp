#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hpath/bench.hpp"
#include "hpath/errors.hpp"
#include "hpath/lattice.hpp"
#include "hpath/metrics.hpp"
#include "hpath/pathio.hpp"
#include "hpath/search.hpp"
#include "hpath/significance.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNoPath = 2;
constexpr int kExitTimedOut = 3;
constexpr int kExitUsage = 64;

hpath::SparseBipartiteDataset load_dataset(const std::string& path, bool weighted) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    return hpath::SparseBipartiteDataset::load_triples(in, weighted);
}

hpath::TruncatedDataset load_truncated_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open truncated dataset file: " + path);
    return hpath::load_truncated(in);
}

hpath::ConceptLattice load_lattice_file(const std::string& path,
                                        const hpath::SparseBipartiteDataset& d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lattice file: " + path);
    return hpath::load_lattice(in, d);
}

void write_payload(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << payload;
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

hpath::GeneratorKind parse_generator(const std::string& s) {
    if (s == "covertree") return hpath::GeneratorKind::covertree;
    if (s == "nna") return hpath::GeneratorKind::nna;
    if (s == "kcnn") return hpath::GeneratorKind::kcnn;
    throw std::invalid_argument("unknown generator '" + s + "'");
}

hpath::HeuristicMode parse_heuristic(const std::string& s) {
    if (s == "normal") return hpath::HeuristicMode::normal;
    if (s == "mixed") return hpath::HeuristicMode::mixed;
    if (s == "zero") return hpath::HeuristicMode::zero;
    throw std::invalid_argument("unknown heuristic '" + s + "'");
}

int resolve_minsup(int minsup, double minsup_pct, std::size_t object_count) {
    if (minsup_pct > 0.0) {
        double raw = std::ceil(minsup_pct * static_cast<double>(object_count) / 100.0);
        return std::max(1, static_cast<int>(raw));
    }
    return minsup;
}

std::string two_decimals(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct StatsArgs {
    std::string data;
    bool weighted = false;
    bool truncated = false;
    std::string lattice;
};

int run_stats(const StatsArgs& a) {
    std::optional<hpath::TruncatedDataset> trunc;
    std::optional<hpath::SparseBipartiteDataset> plain;
    if (a.truncated) trunc = load_truncated_file(a.data);
    else plain = load_dataset(a.data, a.weighted);
    const hpath::SparseBipartiteDataset& d = trunc ? trunc->base : *plain;

    std::ostringstream out;
    double cells = static_cast<double>(d.object_count()) *
                   static_cast<double>(d.feature_count());
    double sparsity =
        cells > 0.0 ? 100.0 * (1.0 - static_cast<double>(d.relation_count()) / cells)
                    : 0.0;
    out << "objects\t" << d.object_count() << "\n";
    out << "features\t" << d.feature_count() << "\n";
    out << "relations\t" << d.relation_count() << "\n";
    out << "sparsity\t" << two_decimals(sparsity) << "\n";
    out << "weighted\t" << (d.weighted() ? 1 : 0) << "\n";
    if (trunc) {
        out << "truncated_features\t" << trunc->truncated_count << "\n";
        out << "empty_objects\t" << trunc->empty_objects.size() << "\n";
    }
    if (!a.lattice.empty()) {
        hpath::ConceptLattice lat = load_lattice_file(a.lattice, d);
        out << "concepts\t" << lat.size() << "\n";
        out << "minsup\t" << lat.minsup() << "\n";
        out << "leaves\t" << lat.leaf_count() << "\n";
        out << "bottom_below_minsup\t" << (lat.bottom_below_minsup() ? 1 : 0) << "\n";
    }
    std::cout << out.str();
    return 0;
}

struct BuildLatticeArgs {
    std::string data;
    bool weighted = false;
    int minsup = 1;
    double minsup_pct = 0.0;
    std::string out;
};

int run_build_lattice(const BuildLatticeArgs& a) {
    hpath::SparseBipartiteDataset d = load_dataset(a.data, a.weighted);
    int minsup = resolve_minsup(a.minsup, a.minsup_pct, d.object_count());
    hpath::ConceptLattice lat = hpath::build_lattice(d, minsup);
    std::cerr << "mined " << lat.size() << " concepts at minsup " << minsup << " over "
              << d.object_count() << " objects\n";
    std::ostringstream body;
    hpath::save_lattice(lat, d, body);
    write_payload(a.out, body.str());
    return 0;
}

struct TruncateArgs {
    std::string data;
    bool weighted = false;
    std::string lattice;
    std::string out;
};

int run_truncate(const TruncateArgs& a) {
    hpath::SparseBipartiteDataset d = load_dataset(a.data, a.weighted);
    hpath::ConceptLattice lat = load_lattice_file(a.lattice, d);
    auto retained = hpath::lattice_feature_union(lat);
    hpath::TruncatedDataset t = hpath::truncate(d, retained);
    std::cerr << "kept " << retained.size() << " of " << d.feature_count()
              << " features; " << t.empty_objects.size()
              << " objects lost every feature\n";
    std::ostringstream body;
    hpath::save_truncated(t, body);
    write_payload(a.out, body.str());
    return 0;
}

struct FindPathArgs {
    std::string data;
    bool weighted = false;
    bool mixed = false;
    std::string from;
    std::string to;
    std::string lattice;
    std::string truncated;
    std::string generator;
    std::string heuristic = "normal";
    int k = 2;
    int b = 20;
    double theta = 0.95;
    int width = 0;
    double budget = 120.0;
    std::string format = "json";
    bool reopen_closed = false;
};

int run_find_path(const FindPathArgs& a) {
    std::optional<hpath::SparseBipartiteDataset> data;
    std::optional<hpath::TruncatedDataset> trunc;

    if (a.mixed) {
        trunc = load_truncated_file(a.data);
    } else {
        data = load_dataset(a.data, a.weighted);
        if (!a.truncated.empty()) {
            trunc = load_truncated_file(a.truncated);
            if (trunc->base.object_count() != data->object_count())
                throw std::invalid_argument(
                    "truncated view disagrees with the dataset's object universe");
            for (std::size_t i = 0; i < data->object_count(); ++i) {
                auto oi = static_cast<hpath::ObjectIndex>(i);
                if (trunc->base.object_id(oi) != data->object_id(oi))
                    throw std::invalid_argument(
                        "truncated view disagrees with the dataset's object universe");
            }
        }
    }
    const hpath::SparseBipartiteDataset& rows = a.mixed ? trunc->base : *data;

    std::optional<hpath::ConceptLattice> lat;
    if (!a.lattice.empty()) lat = load_lattice_file(a.lattice, rows);

    hpath::SearchConfig cfg;
    cfg.k = a.k;
    cfg.b = a.b;
    cfg.heuristic = parse_heuristic(a.heuristic);
    cfg.op_mode = a.mixed ? hpath::OperationMode::mixed : hpath::OperationMode::normal;
    cfg.time_budget_s = a.budget;
    cfg.reopen_closed = a.reopen_closed;
    cfg.constraint = a.width > 0 ? hpath::EdgeConstraint::width_at_least(a.width)
                                 : hpath::EdgeConstraint::distance_at_most(a.theta);
    if (!a.generator.empty())
        cfg.generator = parse_generator(a.generator);
    else
        cfg.generator = lat ? hpath::GeneratorKind::kcnn : hpath::GeneratorKind::covertree;

    auto from = rows.try_object_index(a.from);
    auto to = rows.try_object_index(a.to);
    if (!from || !to) {
        std::cerr << "unknown object id: " << (!from ? a.from : a.to) << "\n";
        return kExitUsage;
    }

    std::unique_ptr<hpath::CoverTree> tree;
    if (cfg.generator == hpath::GeneratorKind::covertree && !a.mixed) {
        hpath::MetricFn metric;
        const hpath::SparseBipartiteDataset& d = *data;
        if (d.weighted())
            metric = [&d](hpath::ObjectIndex x, hpath::ObjectIndex y) {
                return hpath::weighted_soergel(d, x, y);
            };
        else
            metric = [&d](hpath::ObjectIndex x, hpath::ObjectIndex y) {
                return hpath::soergel(d, x, y);
            };
        tree = std::make_unique<hpath::CoverTree>(d, std::move(metric));
    }

    hpath::SearchContext ctx;
    ctx.data = data ? &*data : nullptr;
    ctx.truncated = trunc ? &*trunc : nullptr;
    ctx.lattice = lat ? &*lat : nullptr;
    ctx.tree = tree.get();

    hpath::SearchOutcome outcome = hpath::find_path(ctx, *from, *to, cfg);
    if (outcome.status == hpath::SearchStatus::no_path) {
        std::cerr << "no path from " << a.from << " to " << a.to
                  << " under the given constraint\n";
        return kExitNoPath;
    }
    if (outcome.status == hpath::SearchStatus::timed_out) {
        std::cerr << "search exceeded the time budget (" << a.budget << "s) after "
                  << outcome.nodes_explored << " expansions\n";
        return kExitTimedOut;
    }

    const hpath::PathResult& r = *outcome.path;
    if (a.format == "dot") {
        std::cout << hpath::path_to_dot(rows, cfg, r);
    } else if (a.format == "tsv") {
        std::cout << hpath::path_to_tsv(rows, r);
    } else {
        std::optional<std::vector<hpath::StepSignificance>> sig;
        if (!a.mixed && !rows.weighted() && r.chain.size() >= 2)
            sig = hpath::chain_significance(rows, r.chain);
        hpath::PathQueryInfo q{a.from, a.to};
        std::cout << hpath::path_to_json(rows, q, cfg, r, sig);
    }
    return kExitFound;
}

struct BenchArgs {
    std::string data;
    bool weighted = false;
    std::string lattice;
    std::vector<std::string> generators;
    std::vector<std::string> heuristics{"normal", "zero"};
    std::vector<int> ks{2};
    std::vector<double> thetas{0.95};
    std::vector<int> widths;
    int pairs = 50;
    std::uint64_t seed = 1;
    int b = 20;
    double budget = 120.0;
    bool no_timing = false;
};

int run_bench_cmd(const BenchArgs& a) {
    hpath::SparseBipartiteDataset d = load_dataset(a.data, a.weighted);
    std::optional<hpath::ConceptLattice> lat;
    if (!a.lattice.empty()) lat = load_lattice_file(a.lattice, d);

    hpath::BenchSweep sweep;
    sweep.generators.clear();
    if (a.generators.empty()) {
        sweep.generators.push_back(hpath::GeneratorKind::covertree);
        if (lat) {
            sweep.generators.push_back(hpath::GeneratorKind::nna);
            sweep.generators.push_back(hpath::GeneratorKind::kcnn);
        }
    } else {
        for (const auto& g : a.generators) sweep.generators.push_back(parse_generator(g));
    }
    sweep.heuristics.clear();
    for (const auto& h : a.heuristics) sweep.heuristics.push_back(parse_heuristic(h));
    sweep.ks = a.ks;
    sweep.thetas = a.thetas;
    sweep.widths = a.widths;
    sweep.pairs = a.pairs;
    sweep.seed = a.seed;
    sweep.b = a.b;
    sweep.time_budget_s = a.budget;

    hpath::BenchReport report = hpath::run_bench(d, lat ? &*lat : nullptr, sweep);
    std::cout << hpath::bench_report_tsv(report, d, !a.no_timing);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"path discovery over similarity networks of sparse bipartite data"};
    app.require_subcommand(1);

    StatsArgs stats;
    auto* stats_cmd = app.add_subcommand("stats", "dataset and index summary");
    stats_cmd->add_option("data", stats.data, "triples file (TSV)")->required();
    stats_cmd->add_flag("--weighted", stats.weighted, "parse a weight column");
    stats_cmd->add_flag("--truncated", stats.truncated, "data file is a truncated view");
    stats_cmd->add_option("--lattice", stats.lattice, "lattice file to summarize");

    BuildLatticeArgs bl;
    auto* bl_cmd = app.add_subcommand("build-lattice", "mine the concept lattice");
    bl_cmd->add_option("data", bl.data, "triples file (TSV)")->required();
    bl_cmd->add_flag("--weighted", bl.weighted, "parse a weight column");
    auto* ms = bl_cmd->add_option("--minsup", bl.minsup, "absolute support floor");
    auto* msp = bl_cmd->add_option("--minsup-pct", bl.minsup_pct,
                                   "support floor as a percentage of objects, "
                                   "rounded up");
    ms->excludes(msp);
    msp->excludes(ms);
    bl_cmd->add_option("-o,--out", bl.out, "output file (default stdout)");

    TruncateArgs tr;
    auto* tr_cmd = app.add_subcommand(
        "truncate", "project the dataset onto the lattice's feature union");
    tr_cmd->add_option("data", tr.data, "triples file (TSV)")->required();
    tr_cmd->add_flag("--weighted", tr.weighted, "parse a weight column");
    tr_cmd->add_option("--lattice", tr.lattice, "lattice file")->required();
    tr_cmd->add_option("-o,--out", tr.out, "output file (default stdout)");

    FindPathArgs fp;
    auto* fp_cmd = app.add_subcommand("find-path", "shortest chain between two objects");
    fp_cmd->add_option("data", fp.data,
                       "triples file, or truncated view with --mixed")
        ->required();
    fp_cmd->add_flag("--weighted", fp.weighted, "parse a weight column");
    fp_cmd->add_flag("--mixed", fp.mixed,
                     "work entirely on a truncated view (reduced-view metric)");
    fp_cmd->add_option("--from", fp.from, "start object id")->required();
    fp_cmd->add_option("--to", fp.to, "goal object id")->required();
    fp_cmd->add_option("--lattice", fp.lattice, "lattice file");
    fp_cmd->add_option("--truncated", fp.truncated,
                       "truncated view file (enables the reduced-view heuristic)");
    fp_cmd->add_option("--generator", fp.generator,
                       "successor source: covertree | nna | kcnn "
                       "(default kcnn with a lattice, covertree without)");
    fp_cmd->add_option("--heuristic", fp.heuristic, "normal | mixed | zero");
    fp_cmd->add_option("--k", fp.k, "group size (2 = plain chain)");
    fp_cmd->add_option("--b", fp.b, "successor breadth per expansion");
    auto* th = fp_cmd->add_option("--theta", fp.theta, "distance ceiling per edge");
    auto* wd = fp_cmd->add_option("--width", fp.width,
                                  "minimum shared features per edge (switches the "
                                  "constraint to width mode)");
    th->excludes(wd);
    wd->excludes(th);
    fp_cmd->add_option("--budget", fp.budget, "time budget in seconds");
    fp_cmd->add_option("--format", fp.format, "json | dot | tsv")
        ->check(CLI::IsMember({"json", "dot", "tsv"}));
    fp_cmd->add_flag("--reopen-closed", fp.reopen_closed,
                     "allow re-expanding settled nodes");

    BenchArgs bn;
    auto* bn_cmd = app.add_subcommand("bench", "paired heuristic/generator sweep");
    bn_cmd->add_option("data", bn.data, "triples file (TSV)")->required();
    bn_cmd->add_flag("--weighted", bn.weighted, "parse a weight column");
    bn_cmd->add_option("--lattice", bn.lattice, "lattice file");
    bn_cmd->add_option("--generators", bn.generators, "generator list")
        ->delimiter(',');
    bn_cmd->add_option("--heuristics", bn.heuristics, "heuristic list")
        ->delimiter(',');
    bn_cmd->add_option("--ks", bn.ks, "group sizes")->delimiter(',');
    bn_cmd->add_option("--thetas", bn.thetas, "distance ceilings")->delimiter(',');
    bn_cmd->add_option("--widths", bn.widths,
                       "width floors (overrides the theta axis)")
        ->delimiter(',');
    bn_cmd->add_option("--pairs", bn.pairs, "query pairs to draw");
    bn_cmd->add_option("--seed", bn.seed, "pair-draw seed");
    bn_cmd->add_option("--b", bn.b, "successor breadth per expansion");
    bn_cmd->add_option("--budget", bn.budget, "per-query time budget in seconds");
    bn_cmd->add_flag("--no-timing", bn.no_timing,
                     "print '-' for timing cells (byte-stable output)");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(stats_cmd)) return run_stats(stats);
        if (app.got_subcommand(bl_cmd)) return run_build_lattice(bl);
        if (app.got_subcommand(tr_cmd)) return run_truncate(tr);
        if (app.got_subcommand(fp_cmd)) return run_find_path(fp);
        if (app.got_subcommand(bn_cmd)) return run_bench_cmd(bn);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const hpath::ParseError& e) {
        std::cerr << "parse error at line " << e.line() << ": " << e.what() << "\n";
        return 1;
    } catch (const hpath::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "lookup error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
