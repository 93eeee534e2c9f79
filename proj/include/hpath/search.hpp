#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpath/covertree.hpp"
#include "hpath/lattice.hpp"
#include "hpath/successors.hpp"
#include "hpath/view.hpp"

namespace hpath {

enum class GeneratorKind { covertree, nna, kcnn };
enum class HeuristicMode { normal, mixed, zero };

struct SearchConfig {
    EdgeConstraint constraint;
    int k = 2;
    int b = 20;
    GeneratorKind generator = GeneratorKind::covertree;
    HeuristicMode heuristic = HeuristicMode::normal;
    OperationMode op_mode = OperationMode::normal;
    double time_budget_s = 120.0;
    bool reopen_closed = false;  // off by default: closed nodes stay closed
};

struct PathResult {
    std::vector<ObjectIndex> chain;                // start .. goal
    std::vector<std::vector<ObjectIndex>> cliques; // one per step, k > 2 only
    double cost = 0.0;                             // sum of step metrics
    std::size_t nodes_explored = 0;                // expansions popped
    std::size_t nodes_generated = 0;               // successors offered
    double elapsed_s = 0.0;
    double ebf = 0.0;                              // effective branching factor
};

enum class SearchStatus { found, no_path, timed_out };

struct SearchOutcome {
    SearchStatus status = SearchStatus::no_path;
    std::optional<PathResult> path;     // engaged iff status == found
    std::size_t nodes_explored = 0;
    std::size_t nodes_generated = 0;
    double elapsed_s = 0.0;
};

// Everything a query may need; unused members may stay null depending on the
// generator and modes (validated at admission).
struct SearchContext {
    const SparseBipartiteDataset* data = nullptr;
    const TruncatedDataset* truncated = nullptr;
    const ConceptLattice* lattice = nullptr;
    const CoverTree* tree = nullptr;

    ModeView view(OperationMode mode) const;
};

// A* over the implicit similarity network. g = accumulated active metric,
// h per config (always a lower bound on the remaining cost in normal mode),
// f = g + h; expansion order ascending (f, g, id); goal test on expansion.
// Lattice-backed generators require k <= lattice minsup. Throws
// std::invalid_argument on config violations, std::out_of_range on unknown
// indices.
SearchOutcome find_path(const SearchContext& ctx, ObjectIndex start,
                        ObjectIndex goal, const SearchConfig& config);

// h(o): normal -> active metric to goal; mixed -> reduced-view metric
// (needs the truncated view); zero -> 0.
double heuristic_value(const ModeView& view, HeuristicMode mode,
                       ObjectIndex o, ObjectIndex goal);

struct HammockCheck {
    bool pass = true;
    std::size_t fail_index = 0;  // first offending step when !pass
};

// Checks every consecutive pair of the chain against the constraint.
HammockCheck verify_hammock_path(const ModeView& view,
                                 std::span<const ObjectIndex> chain,
                                 const EdgeConstraint& constraint);

enum class CliquePathFault {
    none,
    length_mismatch,        // |cliques| != |chain| - 1
    clique_size,            // some clique is not exactly k members
    start_membership,       // chain[0] not in cliques[0]
    end_membership,         // chain[t-1] not in cliques[t-2]
    junction_membership,    // chain[i] not in cliques[i]
    empty_intersection,     // consecutive cliques share nothing
    internal_pair,          // a member pair fails the constraint
};

struct CliqueCheck {
    bool pass = true;
    CliquePathFault fault = CliquePathFault::none;
    std::size_t index = 0;  // step or clique position of the fault
};

CliqueCheck verify_clique_path(const ModeView& view,
                               std::span<const ObjectIndex> chain,
                               std::span<const std::vector<ObjectIndex>> cliques,
                               int k, const EdgeConstraint& constraint);

// Unique positive root of x + x^2 + ... + x^d = n, bisected to |residual|
// <= 1e-9. Requires n >= d >= 1.
double effective_branching_factor(std::size_t nodes_generated, std::size_t depth);

} // namespace hpath
