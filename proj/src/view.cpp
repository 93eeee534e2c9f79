#include "hpath/view.hpp"

#include <stdexcept>

namespace hpath {

const SparseBipartiteDataset& ModeView::rows() const {
    if (mode == OperationMode::mixed) {
        if (!truncated) throw std::logic_error("mixed view without truncated data");
        return truncated->base;
    }
    if (!data) throw std::logic_error("normal view without dataset");
    return *data;
}

double ModeView::metric(ObjectIndex a, ObjectIndex b) const {
    if (mode == OperationMode::mixed) {
        if (!truncated) throw std::logic_error("mixed view without truncated data");
        return truncated->base.weighted() ? mixed_soergel_weighted(*truncated, a, b)
                                          : mixed_soergel_set(*truncated, a, b);
    }
    if (!data) throw std::logic_error("normal view without dataset");
    return data->weighted() ? weighted_soergel(*data, a, b) : soergel(*data, a, b);
}

double ModeView::mixed_metric(ObjectIndex a, ObjectIndex b) const {
    if (!truncated) throw std::logic_error("reduced-view metric needs truncated data");
    return truncated->base.weighted() ? mixed_soergel_weighted(*truncated, a, b)
                                      : mixed_soergel_set(*truncated, a, b);
}

bool ModeView::satisfies(const EdgeConstraint& c, ObjectIndex a, ObjectIndex b) const {
    if (c.mode == EdgeConstraint::Mode::width)
        return rows().shared_feature_count(a, b) >= static_cast<std::size_t>(c.width);
    return metric(a, b) <= c.theta;
}

} // namespace hpath
