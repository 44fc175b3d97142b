#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aetf/rng.hpp"
#include "aetf/spectra.hpp"

namespace aetf::ga {

struct GaConfig {
    int population_size = 100;  // must be even
    int max_generations = 2000;
    double crossover_prob = 0.9;
    double mutation_prob = 0.1;
    double weight_peak = 1.0;    // weight on the N- bin of the residual
    double weight_rest = 1e-4;   // weight on the full residual norm
    uint64_t rng_seed = 0;
    // Stop early once best fitness <= this; +infinity disables early stopping
    // so the loop runs exactly max_generations.
    double success_threshold = 1e-9;

    void validate() const;
};

struct GaResult {
    IndexSet best_set;
    double best_fitness = 0.0;
    /// Best fitness reached by generation g (non-increasing by construction).
    std::vector<double> fitness_history;
    int generations_run = 0;
    bool converged = false;
};

/// Weighted squared distance between a spectrum and its target:
/// weight_peak * (d at N-)^2 + weight_rest * ||d||^2. Zero iff exact match
/// when both weights are positive; lower is fitter.
double fitness(const DifferenceSpectrum& spectrum, const TargetSpectrum& target,
               const GaConfig& cfg);

std::vector<IndexSet> init_population(const FrameShape& shape, const GaConfig& cfg, Rng& rng);

/// Draws size/2 parent pairs with replacement, individual i picked with
/// probability proportional to 1/(fitness_i + 1e-12). Self-pairing allowed.
std::vector<std::pair<int, int>> select_pairs(std::span<const double> fitnesses, Rng& rng);

/// Size-preserving crossover: shuffle the union of the parents' indices,
/// first M become child one, last M child two.
std::pair<IndexSet, IndexSet> crossover(const IndexSet& p1, const IndexSet& p2, Rng& rng);

/// With probability cfg.mutation_prob swaps one member for one non-member
/// (a paired 1->0 / 0->1 bit flip); otherwise returns the input unchanged.
IndexSet mutate(const IndexSet& s, const GaConfig& cfg, Rng& rng);

/// Positions (into the order p1, p2, c1, c2) of the two lowest-fitness
/// quartet members; exact fitness ties go to the children.
std::pair<int, int> best_pair_of_quartet(std::span<const double, 4> quartet_fitness);

/// The two fittest of {p1, p2, c1, c2}, children preferred on ties.
std::pair<IndexSet, IndexSet> elitist_replace(const IndexSet& p1, const IndexSet& p2,
                                              const IndexSet& c1, const IndexSet& c2,
                                              const TargetSpectrum& target, const GaConfig& cfg);

/// Full loop against gds_target(shape): init, then per generation selection,
/// crossover with probability, paired mutation with probability, and quartet
/// replacement. Deterministic in cfg.rng_seed.
GaResult run_ga(const FrameShape& shape, const GaConfig& cfg);

}  // namespace aetf::ga
