#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aetf/gds_search.hpp"
#include "aetf/spectra.hpp"

namespace aetf::cli {

/// One persisted GA discovery. Cached as line-delimited JSON, append-only.
struct GdsRecord {
    int n_users = 0;
    int m_rows = 0;
    int n_plus = 0;
    std::vector<int> indices;  // sorted
    double fitness = 0.0;
    double residual_at_n_minus = 0.0;  // spectrum minus target at the N- bin
    double weight_peak = 1.0;
    double weight_rest = 1e-4;
    uint64_t rng_seed = 0;
    int generations_run = 0;
    std::string version;
    std::string timestamp;  // ISO-8601 UTC

    IndexSet to_index_set() const;
};

GdsRecord make_record(const FrameShape& shape, const ga::GaResult& result,
                      const ga::GaConfig& cfg);

/// $AETF_GDS_CACHE when set, otherwise gds_cache.jsonl in the working
/// directory.
std::string default_cache_path();

void append_record(const std::string& path, const GdsRecord& rec);

/// All records in file order; a missing file is an empty cache. Each record's
/// fitness is recomputed from its indices and stored weights; a mismatch
/// beyond 1e-9 throws std::runtime_error.
std::vector<GdsRecord> load_cache(const std::string& path);

/// Lowest-fitness record matching the shape, if any.
std::optional<GdsRecord> find_best(const std::vector<GdsRecord>& records, int n_users,
                                   int m_rows);

}  // namespace aetf::cli
