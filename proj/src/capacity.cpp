#include "aetf/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aetf {

namespace {

constexpr double kZeroEigenvalue = 1e-10;

struct TrialStats {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

TrialStats summarize(const std::vector<double>& xs) {
    const auto n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

void CapacityConfig::validate(const FrameShape& shape) const {
    if (k_active < 1 || k_active > shape.n_users)
        throw std::invalid_argument("CapacityConfig: k_active outside [1, N]");
    if (trials < 1) throw std::invalid_argument("CapacityConfig: trials must be >= 1");
    if (!(snr > 0.0)) throw std::invalid_argument("CapacityConfig: snr must be positive");
    if (epsilon_floor < 0.0)
        throw std::invalid_argument("CapacityConfig: epsilon_floor must be >= 0");
}

std::vector<int> sample_subframe(const BipolarFrame& f, int k_active, Rng& rng) {
    if (k_active < 1 || k_active > f.shape.n_users)
        throw std::invalid_argument("sample_subframe: k_active outside [1, N]");
    std::vector<int> cols = rng.sample_without_replacement(f.shape.n_users, k_active);
    std::sort(cols.begin(), cols.end());
    return cols;
}

std::vector<double> gram_eigenvalues(const BipolarFrame& f, std::span<const int> cols) {
    const int m = f.shape.m_rows;
    const int k = static_cast<int>(cols.size());
    Eigen::MatrixXd sub(m, k);
    for (int j = 0; j < k; ++j)
        for (int r = 0; r < m; ++r) sub(r, j) = f.entry(r, cols[j]);

    const bool use_columns = k <= m;
    const Eigen::MatrixXd gram =
        use_columns ? Eigen::MatrixXd(sub.transpose() * sub) : Eigen::MatrixXd(sub * sub.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);

    std::vector<double> eigs;
    eigs.reserve(k);
    const auto& values = solver.eigenvalues();
    for (Eigen::Index i = values.size(); i-- > 0;) {
        const double v = values[i];
        eigs.push_back(v < kZeroEigenvalue ? 0.0 : v);
    }
    while (static_cast<int>(eigs.size()) < k) eigs.push_back(0.0);  // rank bound for K > M
    return eigs;
}

double capacity(std::span<const double> eigs, double snr) {
    double bits = 0.0;
    for (double v : eigs) bits += std::log2(1.0 + snr * v);
    return bits;
}

double practical_capacity(std::span<const double> eigs, double snr, double epsilon_floor) {
    double bits = 0.0;
    for (double v : eigs) {
        const double floored = std::max(v, epsilon_floor);
        if (floored == 0.0) return -std::numeric_limits<double>::infinity();
        bits += std::log2(snr * floored);
    }
    return bits;
}

CapacityEstimate monte_carlo(const BipolarFrame& f, const CapacityConfig& cfg) {
    cfg.validate(f.shape);
    std::vector<double> caps(cfg.trials);
    std::vector<double> pcaps(cfg.trials);
    int singular = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(derive_seed(cfg.seed, static_cast<uint64_t>(t)));
        BipolarFrame fresh{f.shape, {}, std::nullopt, std::nullopt};
        const BipolarFrame* frame = &f;
        if (cfg.iid_mode == IidMode::fresh_frame_per_trial) {
            fresh = random_bipolar_frame(f.shape, rng.next_u64());
            frame = &fresh;
        }
        const std::vector<int> cols = sample_subframe(*frame, cfg.k_active, rng);
        const std::vector<double> eigs = gram_eigenvalues(*frame, cols);
        caps[t] = capacity(eigs, cfg.snr);
        pcaps[t] = practical_capacity(eigs, cfg.snr, cfg.epsilon_floor);
        if (std::isinf(pcaps[t])) ++singular;
    }

    CapacityEstimate est;
    est.k_active = cfg.k_active;
    est.m_rows = f.shape.m_rows;
    est.singular_trial_count = singular;
    const TrialStats cap_stats = summarize(caps);
    est.mean_capacity = cap_stats.mean;
    est.stderr_capacity = cap_stats.stderr_of_mean;
    if (singular > 0) {
        est.mean_practical = -std::numeric_limits<double>::infinity();
        est.stderr_practical = std::numeric_limits<double>::quiet_NaN();
    } else {
        const TrialStats pcap_stats = summarize(pcaps);
        est.mean_practical = pcap_stats.mean;
        est.stderr_practical = pcap_stats.stderr_of_mean;
    }
    return est;
}

}  // namespace aetf
