#include "aetf/frames.hpp"

#include <algorithm>
#include <cstdlib>

#include "aetf/rng.hpp"

namespace aetf {

BipolarFrame build_frame(const IndexSet& s) {
    const FrameShape shape = s.shape;
    BipolarFrame f{shape,
                   std::vector<int8_t>(static_cast<size_t>(shape.m_rows) * shape.n_users),
                   s,
                   std::nullopt};
    for (int r = 0; r < shape.m_rows; ++r) {
        const int u = s.indices[r];
        for (int c = 0; c < shape.n_users; ++c)
            f.signs[static_cast<size_t>(r) * shape.n_users + c] =
                static_cast<int8_t>(hadamard_entry(u, c));
    }
    return f;
}

BipolarFrame random_bipolar_frame(const FrameShape& shape, uint64_t seed) {
    BipolarFrame f{shape,
                   std::vector<int8_t>(static_cast<size_t>(shape.m_rows) * shape.n_users),
                   std::nullopt,
                   seed};
    Rng rng(seed);
    for (auto& s : f.signs) s = static_cast<int8_t>(rng.sign());
    return f;
}

CorrelationProfile correlation_profile(const IndexSet& s) {
    const int n_plus = s.shape.n_plus;
    const int n = s.shape.n_users;
    CorrelationProfile profile;
    profile.c.assign(n_plus, 0.0);
    for (int k = 0; k < n_plus; ++k) {
        int sum = 0;
        for (int u : s.indices) sum += hadamard_entry(k, u);
        profile.c[k] = static_cast<double>(sum) / s.shape.m_rows;
    }
    for (int k = 1; k < n_plus; ++k) {
        for (int a = 0; a < n; ++a) {
            if ((a ^ k) < n) {
                profile.realized_ks.push_back(k);
                break;
            }
        }
    }
    return profile;
}

ProfileReport verify_profile(const IndexSet& s, double tol) {
    const CorrelationProfile profile = correlation_profile(s);
    const CorrelationTarget target = target_correlation_profile(s.shape);
    double dev_welch = 0.0;
    double dev_low = 0.0;
    double dev_high = 0.0;
    for (int k : profile.realized_ks) {
        const double csq = profile.c[k] * profile.c[k];
        dev_welch = std::max(dev_welch, std::abs(csq - target.welch_level));
        if (k < target.n_minus)
            dev_low = std::max(dev_low, std::abs(csq - target.welch_level));
        else
            dev_high = std::max(dev_high, std::abs(csq - target.raised_level));
    }
    const double dev_target = std::max(dev_low, dev_high);
    FrameClass cls = FrameClass::approximate;
    if (dev_welch <= tol)
        cls = FrameClass::exact_etf;
    else if (dev_target <= tol)
        cls = FrameClass::exact_aetf;
    return ProfileReport{cls, target, dev_welch, dev_low, dev_high, dev_target};
}

WelchReport welch_metrics(const BipolarFrame& f) {
    const int m = f.shape.m_rows;
    const int n = f.shape.n_users;
    double sum_sq = 0.0;
    double max_sq = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            int dot = 0;
            for (int r = 0; r < m; ++r) dot += f.sign(r, a) * f.sign(r, b);
            const double c = static_cast<double>(dot) / m;
            sum_sq += 2.0 * c * c;  // ordered pairs (a,b) and (b,a)
            max_sq = std::max(max_sq, c * c);
        }
    }
    WelchReport report;
    report.welch_bound = f.shape.welch_bound();
    report.i_ms = n > 1 ? sum_sq / (static_cast<double>(n) * (n - 1)) : 0.0;
    report.i_max = max_sq;
    double residual = 0.0;
    for (int r = 0; r < m; ++r) {
        for (int q = r; q < m; ++q) {
            int dot = 0;
            for (int c = 0; c < n; ++c) dot += f.sign(r, c) * f.sign(q, c);
            const double value = static_cast<double>(dot) / m;
            const double want = r == q ? static_cast<double>(n) / m : 0.0;
            residual = std::max(residual, std::abs(value - want));
        }
    }
    report.tightness_residual = residual;
    return report;
}

}  // namespace aetf
