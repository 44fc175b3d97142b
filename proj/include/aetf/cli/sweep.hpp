#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace aetf::cli {

/// One requested grid point plus the integer realization of (M, K):
/// gamma = p * beta_inv, M = round(gamma N), K = round(M / beta_inv), both
/// clamped into 1 <= K <= M <= N. Requested ratios are kept so realized values
/// can be reported alongside them.
struct SweepPoint {
    int n_users = 0;
    double beta_inv_req = 0.0;
    double p_req = 0.0;
    int m_rows = 0;
    int k_active = 0;
    bool valid = false;
    std::string warning;  // set when clamping moved M or K beyond plain rounding

    double beta() const { return static_cast<double>(k_active) / m_rows; }
    double beta_inv() const { return static_cast<double>(m_rows) / k_active; }
    double gamma() const { return static_cast<double>(m_rows) / n_users; }
    double p() const { return static_cast<double>(k_active) / n_users; }
};

SweepPoint derive_sweep_point(int n_users, double beta_inv, double p);

struct SweepConfig {
    std::vector<int> n_list = {16, 24, 32, 48, 64, 96};
    std::vector<double> beta_inv_list = {1.25, 1.5, 1.75};
    std::vector<double> p_list = {0.25, 0.5, 0.75};
    double snr_db = 10.0;
    int trials = 1000;
    uint64_t seed = 0;
    std::string cache_path;  // empty -> default_cache_path()
    bool no_search = false;  // never run the GA; emit empty AETF columns on miss
    int jobs = 1;
    int ga_population = 100;
    int ga_generations = 2000;
    std::string out_path;    // empty -> stream to out
    std::string svg_prefix;  // empty -> no plots
};

extern const char* const kSweepHeader;

/// Evaluates four curves per grid point (aetf, iid, mp_ref, manova_ref) and
/// emits long-format CSV rows in deterministic grid order regardless of
/// parallelism. Returns 0, or 2 when any AETF point had no set available
/// (best effort).
int run_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace aetf::cli
