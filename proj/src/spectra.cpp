#include "aetf/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aetf {

namespace {

bool near_integer(double v) { return std::abs(v - std::nearbyint(v)) < 1e-9; }

bool all_near_integer(const std::vector<double>& vs) {
    return std::all_of(vs.begin(), vs.end(), [](double v) { return near_integer(v); });
}

}  // namespace

IndexSet::IndexSet(FrameShape shape_, std::vector<int> indices_)
    : shape(shape_), indices(std::move(indices_)) {
    if (static_cast<int>(indices.size()) != shape.m_rows)
        throw std::invalid_argument("IndexSet: expected " + std::to_string(shape.m_rows) +
                                    " indices, got " + std::to_string(indices.size()));
    std::sort(indices.begin(), indices.end());
    for (size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= shape.n_plus)
            throw std::invalid_argument("IndexSet: index out of [0, N+)");
        if (i > 0 && indices[i] == indices[i - 1])
            throw std::invalid_argument("IndexSet: duplicate index " + std::to_string(indices[i]));
    }
}

bool IndexSet::contains(int v) const {
    return std::binary_search(indices.begin(), indices.end(), v);
}

DifferenceSpectrum difference_spectrum(const IndexSet& s) {
    DifferenceSpectrum spectrum;
    spectrum.counts.assign(s.shape.n_plus, 0);
    for (int a : s.indices)
        for (int b : s.indices) ++spectrum.counts[xor_diff(a, b)];
    return spectrum;
}

TargetSpectrum ds_target(const FrameShape& shape) {
    if (shape.n_users != shape.n_plus)
        throw std::invalid_argument("ds_target: N must equal N+ (use gds_target otherwise)");
    const int m = shape.m_rows;
    const int n = shape.n_users;
    TargetSpectrum t;
    t.values.assign(shape.n_plus, n > 1 ? static_cast<double>(m) * (m - 1) / (n - 1) : 0.0);
    t.values[0] = m;
    t.alpha_excess = 0.0;
    t.integer_feasible = all_near_integer(t.values);
    return t;
}

double alpha_excess(const FrameShape& shape) {
    const int m = shape.m_rows;
    const int n = shape.n_users;
    if (m == 1 || n == 1) return 0.0;
    return 2.0 * (m - 1) * (1.0 - static_cast<double>(n) / shape.n_plus) /
           (static_cast<double>(m) * (n - 1));
}

TargetSpectrum gds_target(const FrameShape& shape) {
    const int m = shape.m_rows;
    const int n = shape.n_users;
    const double ratio = static_cast<double>(n) / shape.n_plus;
    const double ds_level = n > 1 ? static_cast<double>(m) * (m - 1) / (n - 1) : 0.0;
    TargetSpectrum t;
    t.values.assign(shape.n_plus, ratio * ds_level);
    t.values[0] = m;
    if (shape.n_minus > 0) t.values[shape.n_minus] = (2.0 * ratio - 1.0) * ds_level;
    t.alpha_excess = alpha_excess(shape);
    t.integer_feasible = all_near_integer(t.values);
    return t;
}

CorrelationTarget target_correlation_profile(const FrameShape& shape) {
    CorrelationTarget t;
    t.n_minus = shape.n_minus;
    t.n_plus = shape.n_plus;
    t.welch_level = shape.welch_bound();
    t.alpha_excess = alpha_excess(shape);
    t.raised_level = t.welch_level + t.alpha_excess;
    return t;
}

bool is_difference_set(const IndexSet& s) {
    if (s.shape.n_users != s.shape.n_plus)
        throw std::invalid_argument("is_difference_set: defined only for N = N+");
    const int m = s.shape.m_rows;
    const int n = s.shape.n_users;
    if (n == 1) return true;
    const int64_t num = static_cast<int64_t>(m) * (m - 1);
    if (num % (n - 1) != 0) return false;  // non-integer level: no DS exists
    const int64_t level = num / (n - 1);
    const auto spectrum = difference_spectrum(s);
    for (int l = 1; l < s.shape.n_plus; ++l)
        if (spectrum.counts[l] != level) return false;
    return true;
}

}  // namespace aetf
