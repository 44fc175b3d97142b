#pragma once

#include <cstdint>
#include <vector>

#include "aetf/gf2_hadamard.hpp"

namespace aetf {

/// A candidate (generalized) difference set: M distinct Hadamard row indices
/// in [0, N+). Stored sorted.
struct IndexSet {
    FrameShape shape;
    std::vector<int> indices;

    /// Validates cardinality, range and distinctness; sorts the indices.
    IndexSet(FrameShape shape, std::vector<int> indices);

    bool contains(int v) const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

/// XOR-difference histogram of an index set. counts[l] is the number of
/// ordered pairs (u_i, u_m), i = m included, with u_i ^ u_m = l. So
/// counts[0] = M and the counts sum to M^2.
struct DifferenceSpectrum {
    std::vector<int64_t> counts;
};

/// Desired difference spectrum. For N = N+ this is the classical two-level
/// difference-set spectrum; otherwise the three-level GDS shape with the
/// dip at l = N-. Values may be non-integer, in which case no set attains
/// them exactly and a search can only approximate.
struct TargetSpectrum {
    std::vector<double> values;
    double alpha_excess = 0.0;
    bool integer_feasible = false;
};

/// Piecewise-constant target for squared cross-correlations c_k^2:
/// 1 at k = 0, the Welch level on [1, N- - 1], Welch + alpha on [N-, N+ - 1].
struct CorrelationTarget {
    int n_minus = 0;
    int n_plus = 0;
    double welch_level = 0.0;
    double raised_level = 0.0;
    double alpha_excess = 0.0;

    double level(int k) const {
        if (k == 0) return 1.0;
        return k < n_minus ? welch_level : raised_level;
    }
};

DifferenceSpectrum difference_spectrum(const IndexSet& s);

/// Classical DS target: M at 0, M(M-1)/(N-1) elsewhere. Only defined in the
/// pure-ETF regime N = N+; throws otherwise (use gds_target).
TargetSpectrum ds_target(const FrameShape& shape);

/// Correlation excess on the upper index region:
/// alpha = 2 (M-1)(1 - N/N+) / (M (N-1)); zero when N = N+ and in the
/// degenerate M = 1 / N = 1 cases.
double alpha_excess(const FrameShape& shape);

/// Three-level GDS target; coincides with ds_target when N = N+.
TargetSpectrum gds_target(const FrameShape& shape);

CorrelationTarget target_correlation_profile(const FrameShape& shape);

/// True iff the set's spectrum equals the DS target exactly (requires the
/// target to be integer-valued and N = N+).
bool is_difference_set(const IndexSet& s);

}  // namespace aetf
