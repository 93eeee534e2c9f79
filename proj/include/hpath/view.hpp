#pragma once

#include "hpath/dataset.hpp"
#include "hpath/metrics.hpp"

namespace hpath {

enum class OperationMode { normal, mixed };

// Edge admission rule between two objects: either a minimum shared-feature
// count ("at least w" everywhere) or a distance ceiling under the active metric.
struct EdgeConstraint {
    enum class Mode { width, distance };

    Mode mode = Mode::distance;
    int width = 1;        // width mode: required shared features, >= 0
    double theta = 0.95;  // distance mode: admissible distance, in [0, 1]

    static EdgeConstraint width_at_least(int w) {
        EdgeConstraint c;
        c.mode = Mode::width;
        c.width = w;
        return c;
    }
    static EdgeConstraint distance_at_most(double theta) {
        EdgeConstraint c;
        c.mode = Mode::distance;
        c.theta = theta;
        return c;
    }
};

// Binds the engine to its data for one operation mode. Normal mode reads the
// full dataset; mixed mode reads only a truncated projection plus per-object
// aggregates, and every distance becomes the reduced-view variant.
struct ModeView {
    const SparseBipartiteDataset* data = nullptr;  // normal mode
    const TruncatedDataset* truncated = nullptr;   // mixed mode / mixed heuristic
    OperationMode mode = OperationMode::normal;

    static ModeView normal(const SparseBipartiteDataset& d,
                           const TruncatedDataset* trunc = nullptr) {
        return ModeView{&d, trunc, OperationMode::normal};
    }
    static ModeView mixed(const TruncatedDataset& t) {
        return ModeView{nullptr, &t, OperationMode::mixed};
    }

    // Row/column store queries run against (projection in mixed mode).
    const SparseBipartiteDataset& rows() const;

    // Active metric: soergel / weighted_soergel in normal mode, the mixed
    // variants in mixed mode.
    double metric(ObjectIndex a, ObjectIndex b) const;

    // Reduced-view metric regardless of mode (needs the truncated view).
    double mixed_metric(ObjectIndex a, ObjectIndex b) const;

    bool satisfies(const EdgeConstraint& c, ObjectIndex a, ObjectIndex b) const;
};

} // namespace hpath
