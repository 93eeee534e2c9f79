#include "hpath/bench.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>

#include "hpath/metrics.hpp"

namespace hpath {

namespace {

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const char* generator_name(GeneratorKind g) {
    switch (g) {
        case GeneratorKind::covertree: return "covertree";
        case GeneratorKind::nna: return "nna";
        case GeneratorKind::kcnn: return "kcnn";
    }
    return "?";
}

const char* heuristic_name(HeuristicMode h) {
    switch (h) {
        case HeuristicMode::normal: return "normal";
        case HeuristicMode::mixed: return "mixed";
        case HeuristicMode::zero: return "zero";
    }
    return "?";
}

const char* status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::no_path: return "no_path";
        case SearchStatus::timed_out: return "timed_out";
    }
    return "?";
}

std::string constraint_name(const EdgeConstraint& c) {
    if (c.mode == EdgeConstraint::Mode::width) return "width=" + std::to_string(c.width);
    return "theta=" + fmt(c.theta);
}

} // namespace

BenchReport run_bench(const SparseBipartiteDataset& d, const ConceptLattice* lat,
                      const BenchSweep& sweep) {
    if (sweep.pairs < 1) throw std::invalid_argument("bench needs at least one pair");
    if (sweep.b < 1) throw std::invalid_argument("b must be at least 1");
    if (d.object_count() < 2) throw std::invalid_argument("bench needs two objects");
    if (sweep.generators.empty() || sweep.heuristics.empty() || sweep.ks.empty())
        throw std::invalid_argument("empty sweep axis");
    if (sweep.widths.empty() && sweep.thetas.empty())
        throw std::invalid_argument("no constraint axis");

    bool needs_lattice = false;
    bool needs_tree = false;
    for (GeneratorKind g : sweep.generators) {
        if (g == GeneratorKind::covertree) needs_tree = true;
        else needs_lattice = true;
    }
    if (needs_lattice && !lat)
        throw std::invalid_argument("sweep uses lattice generators but got no lattice");

    std::vector<EdgeConstraint> constraints;
    if (!sweep.widths.empty())
        for (int w : sweep.widths) constraints.push_back(EdgeConstraint::width_at_least(w));
    else
        for (double t : sweep.thetas)
            constraints.push_back(EdgeConstraint::distance_at_most(t));

    BenchReport report;
    for (GeneratorKind g : sweep.generators)
        for (int k : sweep.ks)
            for (const EdgeConstraint& c : constraints)
                for (HeuristicMode h : sweep.heuristics)
                    report.configs.push_back(BenchConfig{g, h, k, c});

    std::mt19937_64 rng(sweep.seed);
    const std::uint64_t n = d.object_count();
    for (int i = 0; i < sweep.pairs; ++i) {
        ObjectIndex s = static_cast<ObjectIndex>(rng() % n);
        ObjectIndex t = static_cast<ObjectIndex>(rng() % n);
        while (t == s) t = static_cast<ObjectIndex>(rng() % n);
        report.pairs.emplace_back(s, t);
    }

    std::unique_ptr<CoverTree> tree;
    if (needs_tree) {
        MetricFn metric;
        if (d.weighted())
            metric = [&d](ObjectIndex a, ObjectIndex b) { return weighted_soergel(d, a, b); };
        else
            metric = [&d](ObjectIndex a, ObjectIndex b) { return soergel(d, a, b); };
        tree = std::make_unique<CoverTree>(d, std::move(metric));
    }

    SearchContext ctx;
    ctx.data = &d;
    ctx.lattice = lat;
    ctx.tree = tree.get();

    for (std::size_t ci = 0; ci < report.configs.size(); ++ci) {
        const BenchConfig& bc = report.configs[ci];
        SearchConfig cfg;
        cfg.constraint = bc.constraint;
        cfg.k = bc.k;
        cfg.b = sweep.b;
        cfg.generator = bc.generator;
        cfg.heuristic = bc.heuristic;
        cfg.time_budget_s = sweep.time_budget_s;
        for (std::size_t pi = 0; pi < report.pairs.size(); ++pi) {
            auto [s, t] = report.pairs[pi];
            SearchOutcome outcome = find_path(ctx, s, t, cfg);
            BenchQueryOutcome q;
            q.config = static_cast<int>(ci);
            q.pair = static_cast<int>(pi);
            q.status = outcome.status;
            q.nodes_explored = outcome.nodes_explored;
            q.nodes_generated = outcome.nodes_generated;
            q.ms = outcome.elapsed_s * 1000.0;
            if (outcome.status == SearchStatus::found) {
                q.path_len = outcome.path->chain.size();
                q.ebf = outcome.path->ebf;
            }
            report.queries.push_back(q);
        }
    }

    // found-query groupings
    std::map<std::pair<int, std::size_t>, std::vector<const BenchQueryOutcome*>> by_len;
    std::map<int, std::vector<const BenchQueryOutcome*>> by_cfg;
    for (const auto& q : report.queries) {
        by_cfg[q.config].push_back(&q);
        if (q.status == SearchStatus::found) by_len[{q.config, q.path_len}].push_back(&q);
    }

    for (const auto& [key, qs] : by_len) {
        BenchLengthRow row;
        row.config = key.first;
        row.path_len = key.second;
        row.count = qs.size();
        for (const auto* q : qs) {
            row.mean_explored += static_cast<double>(q->nodes_explored);
            row.mean_generated += static_cast<double>(q->nodes_generated);
            row.mean_ebf += q->ebf;
            row.mean_ms += q->ms;
        }
        double c = static_cast<double>(qs.size());
        row.mean_explored /= c;
        row.mean_generated /= c;
        row.mean_ebf /= c;
        row.mean_ms /= c;
        report.length_rows.push_back(row);
    }

    for (const auto& [cfg_id, qs] : by_cfg) {
        BenchComboRow row;
        row.config = cfg_id;
        double c = 0.0;
        for (const auto* q : qs) {
            switch (q->status) {
                case SearchStatus::found: ++row.found; break;
                case SearchStatus::no_path: ++row.no_path; break;
                case SearchStatus::timed_out: ++row.timed_out; break;
            }
            if (q->status != SearchStatus::found) continue;
            row.mean_explored += static_cast<double>(q->nodes_explored);
            row.mean_ebf += q->ebf;
            row.mean_ms += q->ms;
            c += 1.0;
        }
        if (c > 0.0) {
            row.mean_explored /= c;
            row.mean_ebf /= c;
            row.mean_ms /= c;
        }
        report.combo_rows.push_back(row);
    }

    // paired normal-vs-zero comparison per (generator, k, constraint)
    auto same_axis = [](const BenchConfig& a, const BenchConfig& b) {
        if (a.generator != b.generator || a.k != b.k) return false;
        if (a.constraint.mode != b.constraint.mode) return false;
        if (a.constraint.mode == EdgeConstraint::Mode::width)
            return a.constraint.width == b.constraint.width;
        return a.constraint.theta == b.constraint.theta;
    };
    for (std::size_t ni = 0; ni < report.configs.size(); ++ni) {
        if (report.configs[ni].heuristic != HeuristicMode::normal) continue;
        for (std::size_t zi = 0; zi < report.configs.size(); ++zi) {
            if (report.configs[zi].heuristic != HeuristicMode::zero) continue;
            if (!same_axis(report.configs[ni], report.configs[zi])) continue;

            BenchSavingsRow row;
            row.config_normal = static_cast<int>(ni);
            row.config_zero = static_cast<int>(zi);
            double sum_normal = 0.0;
            double sum_zero = 0.0;
            std::size_t fewer = 0;
            for (std::size_t pi = 0; pi < report.pairs.size(); ++pi) {
                const auto& qn = report.queries[ni * report.pairs.size() + pi];
                const auto& qz = report.queries[zi * report.pairs.size() + pi];
                if (qn.status != SearchStatus::found || qz.status != SearchStatus::found)
                    continue;
                ++row.paired;
                sum_normal += static_cast<double>(qn.nodes_explored);
                sum_zero += static_cast<double>(qz.nodes_explored);
                if (qn.nodes_explored <= qz.nodes_explored) ++fewer;
                row.mean_ebf_normal += qn.ebf;
                row.mean_ebf_zero += qz.ebf;
            }
            if (row.paired > 0) {
                double c = static_cast<double>(row.paired);
                row.frac_fewer = static_cast<double>(fewer) / c;
                row.mean_ebf_normal /= c;
                row.mean_ebf_zero /= c;
                if (sum_normal > 0.0)
                    row.savings_pct = 100.0 * (sum_zero - sum_normal) / sum_normal;
            }
            report.savings_rows.push_back(row);
        }
    }
    return report;
}

std::string bench_report_tsv(const BenchReport& report, const SparseBipartiteDataset& d,
                             bool include_timing) {
    std::string out;
    auto ms_cell = [include_timing](double v) { return include_timing ? fmt(v) : "-"; };

    out += "# configs\nconfig\tgenerator\theuristic\tk\tconstraint\n";
    for (std::size_t i = 0; i < report.configs.size(); ++i) {
        const auto& c = report.configs[i];
        out += std::to_string(i) + "\t" + generator_name(c.generator) + "\t" +
               heuristic_name(c.heuristic) + "\t" + std::to_string(c.k) + "\t" +
               constraint_name(c.constraint) + "\n";
    }

    out += "# queries\nconfig\tpair\tstart\tgoal\tstatus\tpath_len\texplored\t"
           "generated\tebf\tms\n";
    for (const auto& q : report.queries) {
        auto [s, t] = report.pairs[q.pair];
        out += std::to_string(q.config) + "\t" + std::to_string(q.pair) + "\t" +
               d.object_id(s) + "\t" + d.object_id(t) + "\t" + status_name(q.status) +
               "\t" +
               (q.status == SearchStatus::found ? std::to_string(q.path_len) : "-") +
               "\t" + std::to_string(q.nodes_explored) + "\t" +
               std::to_string(q.nodes_generated) + "\t" +
               (q.status == SearchStatus::found ? fmt(q.ebf) : "-") + "\t" +
               ms_cell(q.ms) + "\n";
    }

    out += "# by_length\nconfig\tpath_len\tcount\tmean_explored\tmean_generated\t"
           "mean_ebf\tmean_ms\n";
    for (const auto& r : report.length_rows) {
        out += std::to_string(r.config) + "\t" + std::to_string(r.path_len) + "\t" +
               std::to_string(r.count) + "\t" + fmt(r.mean_explored) + "\t" +
               fmt(r.mean_generated) + "\t" + fmt(r.mean_ebf) + "\t" +
               ms_cell(r.mean_ms) + "\n";
    }

    out += "# by_config\nconfig\tfound\tno_path\ttimed_out\tmean_explored\tmean_ebf\t"
           "mean_ms\n";
    for (const auto& r : report.combo_rows) {
        out += std::to_string(r.config) + "\t" + std::to_string(r.found) + "\t" +
               std::to_string(r.no_path) + "\t" + std::to_string(r.timed_out) + "\t" +
               fmt(r.mean_explored) + "\t" + fmt(r.mean_ebf) + "\t" +
               ms_cell(r.mean_ms) + "\n";
    }

    out += "# savings\nconfig_normal\tconfig_zero\tpaired\tfrac_fewer\tsavings_pct\t"
           "mean_ebf_normal\tmean_ebf_zero\n";
    for (const auto& r : report.savings_rows) {
        out += std::to_string(r.config_normal) + "\t" + std::to_string(r.config_zero) +
               "\t" + std::to_string(r.paired) + "\t" + fmt(r.frac_fewer) + "\t" +
               fmt(r.savings_pct) + "\t" + fmt(r.mean_ebf_normal) + "\t" +
               fmt(r.mean_ebf_zero) + "\n";
    }
    return out;
}

} // namespace hpath
