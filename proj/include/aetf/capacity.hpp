#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aetf/frames.hpp"
#include "aetf/rng.hpp"

namespace aetf {

enum class IidMode { fixed_frame, fresh_frame_per_trial };

struct CapacityConfig {
    int k_active = 1;
    double snr = 10.0;  // linear
    int trials = 1000;
    uint64_t seed = 0;
    IidMode iid_mode = IidMode::fixed_frame;
    double epsilon_floor = 0.0;  // 0 keeps -inf on singular draws

    void validate(const FrameShape& shape) const;
};

/// Monte-Carlo summary. mean_practical is -inf (and stderr_practical NaN)
/// whenever any trial drew a singular Gram at epsilon_floor 0; such trials are
/// counted, never dropped.
struct CapacityEstimate {
    double mean_capacity = 0.0;
    double mean_practical = 0.0;
    double stderr_capacity = 0.0;
    double stderr_practical = 0.0;
    int k_active = 0;
    int m_rows = 0;
    int singular_trial_count = 0;

    double cap_per_user() const { return mean_capacity / k_active; }
    double cap_per_resource() const { return mean_capacity / m_rows; }
    double pcap_per_user() const { return mean_practical / k_active; }
    double pcap_per_resource() const { return mean_practical / m_rows; }
    double cap_per_user_stderr() const { return stderr_capacity / k_active; }
    double pcap_per_user_stderr() const { return stderr_practical / k_active; }
};

/// Uniformly random K-subset of [0, N), exactly K columns, sorted ascending.
std::vector<int> sample_subframe(const BipolarFrame& f, int k_active, Rng& rng);

/// Eigenvalues of the Gram of the selected unit-norm columns, sorted
/// descending. Computed on the smaller of the K x K column Gram and the M x M
/// row Gram (padding K - M zeros); values below 1e-10 are clamped to exact 0.
std::vector<double> gram_eigenvalues(const BipolarFrame& f, std::span<const int> cols);

/// C = sum log2(1 + snr * lambda_i); zero eigenvalues contribute nothing.
double capacity(std::span<const double> eigs, double snr);

/// C_p = sum log2(snr * max(lambda_i, epsilon_floor)); -inf when the floored
/// eigenvalue is 0.
double practical_capacity(std::span<const double> eigs, double snr, double epsilon_floor = 0.0);

/// Averages capacity and practical capacity over cfg.trials random K-subsets.
/// fresh_frame_per_trial redraws an iid frame each trial. Each trial's
/// randomness derives from (seed, trial index), so the estimate is
/// deterministic and order-independent.
CapacityEstimate monte_carlo(const BipolarFrame& f, const CapacityConfig& cfg);

}  // namespace aetf
