#include "hpath/significance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace hpath {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r *= static_cast<unsigned long long>(n - k + i);
        r /= static_cast<unsigned long long>(i);
    }
    return r;
}

// P[overlap >= s] for two uniformly drawn feature sets of the given sizes
// out of a universe of `population` features
BigRat upper_tail(std::size_t population, std::size_t left, std::size_t right,
                  std::size_t s) {
    BigInt num = 0;
    std::size_t hi = std::min(left, right);
    for (std::size_t x = s; x <= hi; ++x) {
        if (right - x > population - left) continue;  // infeasible overlap
        num += binomial(left, x) * binomial(population - left, right - x);
    }
    return BigRat(num, binomial(population, right));
}

std::string rational_string(const BigRat& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace

std::vector<StepSignificance> chain_significance(const SparseBipartiteDataset& d,
                                                 std::span<const ObjectIndex> chain) {
    if (d.weighted())
        throw std::invalid_argument("significance rating needs binary data");
    if (chain.size() < 2)
        throw std::invalid_argument("significance rating needs at least one step");

    std::vector<StepSignificance> steps;
    steps.reserve(chain.size() - 1);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        StepSignificance st;
        st.left_size = d.row(chain[i]).size();
        st.right_size = d.row(chain[i + 1]).size();
        st.overlap = d.shared_feature_count(chain[i], chain[i + 1]);
        BigRat p = upper_tail(d.feature_count(), st.left_size, st.right_size, st.overlap);
        st.p = p.convert_to<double>();
        st.p_exact = rational_string(p);
        steps.push_back(std::move(st));
    }

    std::vector<double> raw;
    raw.reserve(steps.size());
    for (const auto& st : steps) raw.push_back(st.p);
    auto adjusted = benjamini_hochberg(raw);
    for (std::size_t i = 0; i < steps.size(); ++i) steps[i].p_adjusted = adjusted[i];
    return steps;
}

std::vector<double> benjamini_hochberg(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    if (m == 0) return {};

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p_values[a] < p_values[b];
    });

    // multiply by the ratio, not (p * m) / rank: the top rank then scales by
    // exactly 1.0 and no adjusted value can round below its own raw p
    std::vector<double> scaled(m);
    for (std::size_t rank = 0; rank < m; ++rank)
        scaled[rank] = p_values[order[rank]] *
                       (static_cast<double>(m) / static_cast<double>(rank + 1));
    for (std::size_t rank = m; rank-- > 1;)
        scaled[rank - 1] = std::min(scaled[rank - 1], scaled[rank]);

    std::vector<double> out(m);
    for (std::size_t rank = 0; rank < m; ++rank)
        out[order[rank]] = std::clamp(scaled[rank], 0.0, 1.0);
    return out;
}

} // namespace hpath
