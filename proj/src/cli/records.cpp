#include "aetf/cli/records.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "aetf/version.hpp"

namespace aetf::cli {

namespace {

std::string utc_now_iso8601() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double recompute_fitness(const GdsRecord& rec) {
    const IndexSet s = rec.to_index_set();
    ga::GaConfig cfg;
    cfg.weight_peak = rec.weight_peak;
    cfg.weight_rest = rec.weight_rest;
    return ga::fitness(difference_spectrum(s), gds_target(s.shape), cfg);
}

}  // namespace

IndexSet GdsRecord::to_index_set() const { return IndexSet(FrameShape(n_users, m_rows), indices); }

GdsRecord make_record(const FrameShape& shape, const ga::GaResult& result,
                      const ga::GaConfig& cfg) {
    GdsRecord rec;
    rec.n_users = shape.n_users;
    rec.m_rows = shape.m_rows;
    rec.n_plus = shape.n_plus;
    rec.indices = result.best_set.indices;
    rec.fitness = result.best_fitness;
    const DifferenceSpectrum spectrum = difference_spectrum(result.best_set);
    const TargetSpectrum target = gds_target(shape);
    rec.residual_at_n_minus =
        static_cast<double>(spectrum.counts[shape.n_minus]) - target.values[shape.n_minus];
    rec.weight_peak = cfg.weight_peak;
    rec.weight_rest = cfg.weight_rest;
    rec.rng_seed = cfg.rng_seed;
    rec.generations_run = result.generations_run;
    rec.version = kVersion;
    rec.timestamp = utc_now_iso8601();
    return rec;
}

std::string default_cache_path() {
    if (const char* env = std::getenv("AETF_GDS_CACHE"); env && *env) return env;
    return "gds_cache.jsonl";
}

void append_record(const std::string& path, const GdsRecord& rec) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    nlohmann::json j{{"n_users", rec.n_users},
                     {"m_rows", rec.m_rows},
                     {"n_plus", rec.n_plus},
                     {"indices", rec.indices},
                     {"fitness", rec.fitness},
                     {"residual_at_n_minus", rec.residual_at_n_minus},
                     {"weight_peak", rec.weight_peak},
                     {"weight_rest", rec.weight_rest},
                     {"rng_seed", rec.rng_seed},
                     {"generations_run", rec.generations_run},
                     {"version", rec.version},
                     {"timestamp", rec.timestamp}};
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache " + path + " for append");
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("append failed for cache " + path);
}

std::vector<GdsRecord> load_cache(const std::string& path) {
    std::vector<GdsRecord> records;
    std::ifstream in(path);
    if (!in) return records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        GdsRecord rec;
        rec.n_users = j.at("n_users").get<int>();
        rec.m_rows = j.at("m_rows").get<int>();
        rec.n_plus = j.at("n_plus").get<int>();
        rec.indices = j.at("indices").get<std::vector<int>>();
        rec.fitness = j.at("fitness").get<double>();
        rec.residual_at_n_minus = j.at("residual_at_n_minus").get<double>();
        rec.weight_peak = j.at("weight_peak").get<double>();
        rec.weight_rest = j.at("weight_rest").get<double>();
        rec.rng_seed = j.at("rng_seed").get<uint64_t>();
        rec.generations_run = j.at("generations_run").get<int>();
        rec.version = j.at("version").get<std::string>();
        rec.timestamp = j.at("timestamp").get<std::string>();
        if (std::abs(recompute_fitness(rec) - rec.fitness) > 1e-9)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": stored fitness does not match its indices");
        records.push_back(std::move(rec));
    }
    return records;
}

std::optional<GdsRecord> find_best(const std::vector<GdsRecord>& records, int n_users,
                                   int m_rows) {
    std::optional<GdsRecord> best;
    for (const auto& rec : records) {
        if (rec.n_users != n_users || rec.m_rows != m_rows) continue;
        if (!best || rec.fitness < best->fitness) best = rec;
    }
    return best;
}

}  // namespace aetf::cli
