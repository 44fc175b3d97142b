#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "aetf/gf2_hadamard.hpp"
#include "aetf/spectra.hpp"

namespace aetf {

/// M x N frame with unit-norm columns; entries are sign * 1/sqrt(M) where the
/// raw sign pattern is +-1. Provenance records how the signs were produced.
struct BipolarFrame {
    FrameShape shape;
    std::vector<int8_t> signs;            // row-major M x N
    std::optional<IndexSet> row_indices;  // Hadamard-row construction
    std::optional<uint64_t> iid_seed;     // iid Bernoulli construction

    int sign(int row, int col) const { return signs[static_cast<size_t>(row) * shape.n_users + col]; }
    double scale() const { return 1.0 / std::sqrt(static_cast<double>(shape.m_rows)); }
    double entry(int row, int col) const { return sign(row, col) * scale(); }
};

/// Row m is Hadamard row u_m restricted to the first N columns, scaled 1/sqrt(M).
BipolarFrame build_frame(const IndexSet& s);

/// M x N iid uniform +-1 signs scaled 1/sqrt(M); deterministic in seed.
BipolarFrame random_bipolar_frame(const FrameShape& shape, uint64_t seed);

/// Cross-correlation by column-index difference: c[k] = (1/M) sum_m (-1)^<k, u_m>.
/// Equals the Gram entry between columns n and n^k whenever both are < N, so it
/// does not depend on n. realized_ks lists the differences that occur among
/// actual column pairs, the only ones a correlation claim can be about.
struct CorrelationProfile {
    std::vector<double> c;         // length N+, c[0] = 1
    std::vector<int> realized_ks;  // sorted distinct {n^m : 0 <= n != m < N}
};

CorrelationProfile correlation_profile(const IndexSet& s);

enum class FrameClass { exact_etf, exact_aetf, approximate };

struct ProfileReport {
    FrameClass classification;
    CorrelationTarget target;
    double max_dev_welch;   // max |c_k^2 - welch_level| over realized ks
    double max_dev_low;     // realized k < N- against the Welch level
    double max_dev_high;    // realized k >= N- against the raised level
    double max_dev_target;  // max(max_dev_low, max_dev_high)
};

/// Compares realized c_k^2 against the two-level target. exact_etf when every
/// realized squared correlation sits at the Welch level within tol, exact_aetf
/// when each region sits at its own target level within tol.
ProfileReport verify_profile(const IndexSet& s, double tol = 1e-12);

struct WelchReport {
    double i_ms;                // mean-square cross correlation over n != k
    double i_max;               // max-square cross correlation
    double welch_bound;         // (N-M)/((N-1)M)
    double tightness_residual;  // max-abs entry of F F^T - (N/M) I
};

WelchReport welch_metrics(const BipolarFrame& f);

}  // namespace aetf
