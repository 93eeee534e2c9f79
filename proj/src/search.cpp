#include "hpath/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace hpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const SearchContext& ctx, const SearchConfig& cfg) {
    if (cfg.k < 2) throw std::invalid_argument("k must be at least 2");
    if (cfg.b < 1) throw std::invalid_argument("b must be at least 1");
    if (cfg.time_budget_s <= 0.0)
        throw std::invalid_argument("time budget must be positive");
    if (cfg.constraint.mode == EdgeConstraint::Mode::width && cfg.constraint.width < 1)
        throw std::invalid_argument("width must be at least 1");
    if (cfg.constraint.mode == EdgeConstraint::Mode::distance &&
        (cfg.constraint.theta < 0.0 || cfg.constraint.theta > 1.0))
        throw std::invalid_argument("theta must lie in [0, 1]");

    bool lattice_gen = cfg.generator == GeneratorKind::nna ||
                       cfg.generator == GeneratorKind::kcnn;
    if (cfg.k > 2 && !lattice_gen)
        throw std::invalid_argument("k > 2 needs a lattice-backed generator");
    if (lattice_gen) {
        if (!ctx.lattice) throw std::invalid_argument("generator needs a lattice");
        if (cfg.k > ctx.lattice->minsup())
            throw std::invalid_argument("k exceeds the lattice minsup");
    } else if (!ctx.tree) {
        throw std::invalid_argument("covertree generator needs a built index");
    }

    if (cfg.op_mode == OperationMode::mixed) {
        if (!ctx.truncated)
            throw std::invalid_argument("mixed mode needs a truncated view");
        if (!lattice_gen)
            throw std::invalid_argument(
                "metric-index successors are not available in mixed mode");
    } else if (!ctx.data) {
        throw std::invalid_argument("normal mode needs the dataset");
    }
    if (cfg.heuristic == HeuristicMode::mixed && !ctx.truncated)
        throw std::invalid_argument("reduced-view heuristic needs a truncated view");
}

double guarded_ebf(std::size_t generated, std::size_t depth) {
    if (depth < 1 || generated < depth) return 0.0;
    return effective_branching_factor(generated, depth);
}

} // namespace

ModeView SearchContext::view(OperationMode mode) const {
    if (mode == OperationMode::mixed) {
        if (!truncated) throw std::invalid_argument("mixed view needs truncated data");
        return ModeView::mixed(*truncated);
    }
    if (!data) throw std::invalid_argument("normal view needs the dataset");
    return ModeView::normal(*data, truncated);
}

double heuristic_value(const ModeView& view, HeuristicMode mode, ObjectIndex o,
                       ObjectIndex goal) {
    switch (mode) {
        case HeuristicMode::normal: return view.metric(o, goal);
        case HeuristicMode::mixed: return view.mixed_metric(o, goal);
        case HeuristicMode::zero: return 0.0;
    }
    return 0.0;
}

SearchOutcome find_path(const SearchContext& ctx, ObjectIndex start, ObjectIndex goal,
                        const SearchConfig& config) {
    validate(ctx, config);
    ModeView view = ctx.view(config.op_mode);
    const auto& rows = view.rows();
    const std::size_t n = rows.object_count();
    if (start < 0 || static_cast<std::size_t>(start) >= n)
        throw std::out_of_range("start object index " + std::to_string(start));
    if (goal < 0 || static_cast<std::size_t>(goal) >= n)
        throw std::out_of_range("goal object index " + std::to_string(goal));

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    std::vector<double> g_best(n, kInf);
    std::vector<ObjectIndex> parent(n, -1);
    std::vector<std::vector<ObjectIndex>> via_clique(config.k > 2 ? n : 0);
    std::vector<char> closed(n, 0);

    using Entry = std::tuple<double, double, ObjectIndex>;  // f, g, id
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;

    SearchOutcome out;
    g_best[start] = 0.0;
    open.emplace(heuristic_value(view, config.heuristic, start, goal), 0.0, start);

    // each offer: reachable object, edge cost, backing group when k > 2
    struct Offer {
        ObjectIndex to;
        double cost;
        const std::vector<ObjectIndex>* group;
    };
    std::vector<CliqueCandidate> scratch;
    auto offers_of = [&](ObjectIndex u) {
        std::vector<Offer> offers;
        if (config.generator == GeneratorKind::covertree) {
            auto nbs =
                covertree_successors(*ctx.tree, view, config.constraint, u, config.b);
            offers.reserve(nbs.size());
            for (const auto& nb : nbs) offers.push_back({nb.object, nb.distance, nullptr});
            return offers;
        }
        if (config.generator == GeneratorKind::nna) {
            scratch = nna_successors(*ctx.lattice, view, config.constraint, u, config.b,
                                     config.k);
        } else {
            auto res =
                kcnn(*ctx.lattice, view, config.constraint, u, config.b, config.k);
            scratch.clear();
            for (auto& c : res.candidates)
                if (c.verified) scratch.push_back(std::move(c));
        }
        for (const auto& cand : scratch) {
            for (ObjectIndex v : cand.members) {
                if (v == u) continue;
                offers.push_back(
                    {v, view.metric(u, v), config.k > 2 ? &cand.members : nullptr});
            }
        }
        return offers;
    };

    while (!open.empty()) {
        auto [f, g, u] = open.top();
        open.pop();
        if (g > g_best[u]) continue;  // stale queue entry
        if (closed[u] && !config.reopen_closed) continue;

        if (elapsed() > config.time_budget_s) {
            out.status = SearchStatus::timed_out;
            out.elapsed_s = elapsed();
            return out;
        }

        closed[u] = 1;
        ++out.nodes_explored;

        if (u == goal) {
            PathResult r;
            for (ObjectIndex v = goal; v >= 0; v = parent[v]) r.chain.push_back(v);
            std::reverse(r.chain.begin(), r.chain.end());
            if (config.k > 2)
                for (std::size_t i = 1; i < r.chain.size(); ++i)
                    r.cliques.push_back(via_clique[r.chain[i]]);
            r.cost = g_best[goal];
            r.nodes_explored = out.nodes_explored;
            r.nodes_generated = out.nodes_generated;
            r.elapsed_s = elapsed();
            r.ebf = guarded_ebf(out.nodes_generated, r.chain.size() - 1);
            out.status = SearchStatus::found;
            out.elapsed_s = r.elapsed_s;
            out.nodes_generated = r.nodes_generated;
            out.path = std::move(r);
            return out;
        }

        for (const Offer& of : offers_of(u)) {
            ++out.nodes_generated;
            if (closed[of.to] && !config.reopen_closed) continue;
            double tentative = g_best[u] + of.cost;
            if (tentative >= g_best[of.to]) continue;
            g_best[of.to] = tentative;
            parent[of.to] = u;
            if (config.k > 2) via_clique[of.to] = *of.group;
            if (closed[of.to]) closed[of.to] = 0;  // reopen_closed path
            open.emplace(tentative + heuristic_value(view, config.heuristic, of.to, goal),
                         tentative, of.to);
        }
    }

    out.status = SearchStatus::no_path;
    out.elapsed_s = elapsed();
    return out;
}

HammockCheck verify_hammock_path(const ModeView& view,
                                 std::span<const ObjectIndex> chain,
                                 const EdgeConstraint& constraint) {
    HammockCheck res;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!view.satisfies(constraint, chain[i], chain[i + 1])) {
            res.pass = false;
            res.fail_index = i;
            return res;
        }
    }
    return res;
}

CliqueCheck verify_clique_path(const ModeView& view,
                               std::span<const ObjectIndex> chain,
                               std::span<const std::vector<ObjectIndex>> cliques,
                               int k, const EdgeConstraint& constraint) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    CliqueCheck res;
    auto fail = [&res](CliquePathFault f, std::size_t idx) {
        res.pass = false;
        res.fault = f;
        res.index = idx;
        return res;
    };
    auto member = [](const std::vector<ObjectIndex>& c, ObjectIndex o) {
        return std::find(c.begin(), c.end(), o) != c.end();
    };

    if (chain.empty()) {
        if (cliques.empty()) return res;
        return fail(CliquePathFault::length_mismatch, 0);
    }
    if (cliques.size() != chain.size() - 1)
        return fail(CliquePathFault::length_mismatch, 0);

    for (std::size_t t = 0; t < cliques.size(); ++t)
        if (cliques[t].size() != static_cast<std::size_t>(k))
            return fail(CliquePathFault::clique_size, t);

    if (!cliques.empty()) {
        if (!member(cliques.front(), chain.front()))
            return fail(CliquePathFault::start_membership, 0);
        if (!member(cliques.back(), chain.back()))
            return fail(CliquePathFault::end_membership, cliques.size() - 1);
    }
    for (std::size_t i = 1; i + 1 < chain.size(); ++i)
        if (!member(cliques[i - 1], chain[i]) || !member(cliques[i], chain[i]))
            return fail(CliquePathFault::junction_membership, i);

    for (std::size_t t = 0; t + 1 < cliques.size(); ++t) {
        bool shared = false;
        for (ObjectIndex o : cliques[t])
            if (member(cliques[t + 1], o)) { shared = true; break; }
        if (!shared) return fail(CliquePathFault::empty_intersection, t);
    }

    for (std::size_t t = 0; t < cliques.size(); ++t) {
        const auto& c = cliques[t];
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (!view.satisfies(constraint, c[i], c[j]))
                    return fail(CliquePathFault::internal_pair, t);
    }
    return res;
}

double effective_branching_factor(std::size_t nodes_generated, std::size_t depth) {
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    if (nodes_generated < depth)
        throw std::invalid_argument("generated count below depth");
    const double n = static_cast<double>(nodes_generated);
    const double d = static_cast<double>(depth);
    if (depth == 1) return n;
    if (nodes_generated == depth) return 1.0;

    auto residual = [&](double x) {
        double sum = 0.0;
        double term = 1.0;
        for (std::size_t i = 0; i < depth; ++i) {
            term *= x;
            sum += term;
        }
        return sum - n;
    };
    (void)d;

    double lo = 1.0;
    double hi = n;
    double best = lo;
    double best_abs = std::abs(residual(lo));
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double r = residual(mid);
        if (std::abs(r) < best_abs) {
            best = mid;
            best_abs = std::abs(r);
        }
        if (best_abs <= 1e-9) break;
        if (r > 0.0) hi = mid;
        else lo = mid;
    }
    return best;
}

} // namespace hpath
