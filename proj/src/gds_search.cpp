#include "aetf/gds_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aetf::ga {

namespace {

// Floor on selection weights so a perfect (zero-fitness) individual dominates
// without dividing by zero.
constexpr double kSelectionEpsilon = 1e-12;

// Fitness without materializing a DifferenceSpectrum; scratch holds N+ bins.
double fitness_of(const std::vector<int>& indices, const TargetSpectrum& target,
                  const GaConfig& cfg, std::vector<int64_t>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (int a : indices)
        for (int b : indices) ++scratch[a ^ b];
    const int n_minus = static_cast<int>(scratch.size()) / 2;
    double sum = 0.0;
    for (size_t l = 0; l < scratch.size(); ++l) {
        const double d = static_cast<double>(scratch[l]) - target.values[l];
        sum += d * d;
    }
    const double peak = static_cast<double>(scratch[n_minus]) - target.values[n_minus];
    return cfg.weight_peak * peak * peak + cfg.weight_rest * sum;
}

}  // namespace

void GaConfig::validate() const {
    if (population_size < 2 || population_size % 2 != 0)
        throw std::invalid_argument("GaConfig: population_size must be even and >= 2");
    if (max_generations < 1) throw std::invalid_argument("GaConfig: max_generations must be >= 1");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("GaConfig: crossover_prob outside [0,1]");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("GaConfig: mutation_prob outside [0,1]");
    if (weight_peak < 0.0 || weight_rest < 0.0)
        throw std::invalid_argument("GaConfig: fitness weights must be >= 0");
    if (success_threshold < 0.0)
        throw std::invalid_argument("GaConfig: success_threshold must be >= 0");
}

double fitness(const DifferenceSpectrum& spectrum, const TargetSpectrum& target,
               const GaConfig& cfg) {
    if (spectrum.counts.size() != target.values.size())
        throw std::invalid_argument("fitness: spectrum/target length mismatch");
    const int n_minus = static_cast<int>(spectrum.counts.size()) / 2;
    double sum = 0.0;
    for (size_t l = 0; l < spectrum.counts.size(); ++l) {
        const double d = static_cast<double>(spectrum.counts[l]) - target.values[l];
        sum += d * d;
    }
    const double peak = static_cast<double>(spectrum.counts[n_minus]) - target.values[n_minus];
    return cfg.weight_peak * peak * peak + cfg.weight_rest * sum;
}

std::vector<IndexSet> init_population(const FrameShape& shape, const GaConfig& cfg, Rng& rng) {
    if (shape.m_rows > shape.n_plus)
        throw std::invalid_argument("init_population: M exceeds N+");
    std::vector<IndexSet> population;
    population.reserve(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i)
        population.emplace_back(shape, rng.sample_without_replacement(shape.n_plus, shape.m_rows));
    return population;
}

std::vector<std::pair<int, int>> select_pairs(std::span<const double> fitnesses, Rng& rng) {
    if (fitnesses.empty()) throw std::invalid_argument("select_pairs: empty population");
    const int n = static_cast<int>(fitnesses.size());
    std::vector<double> cumulative(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        total += 1.0 / (fitnesses[i] + kSelectionEpsilon);
        cumulative[i] = total;
    }
    auto draw = [&]() {
        const double u = rng.next_unit() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return std::min(static_cast<int>(it - cumulative.begin()), n - 1);
    };
    std::vector<std::pair<int, int>> pairs(n / 2);
    for (auto& pr : pairs) {
        pr.first = draw();
        pr.second = draw();
    }
    return pairs;
}

std::pair<IndexSet, IndexSet> crossover(const IndexSet& p1, const IndexSet& p2, Rng& rng) {
    if (p1.shape != p2.shape) throw std::invalid_argument("crossover: shape mismatch");
    std::vector<int> merged;
    merged.reserve(p1.indices.size() + p2.indices.size());
    std::set_union(p1.indices.begin(), p1.indices.end(), p2.indices.begin(), p2.indices.end(),
                   std::back_inserter(merged));
    rng.shuffle(merged);
    const int m = p1.shape.m_rows;
    std::vector<int> first(merged.begin(), merged.begin() + m);
    std::vector<int> last(merged.end() - m, merged.end());
    return {IndexSet(p1.shape, std::move(first)), IndexSet(p1.shape, std::move(last))};
}

IndexSet mutate(const IndexSet& s, const GaConfig& cfg, Rng& rng) {
    const int m = s.shape.m_rows;
    const int n_plus = s.shape.n_plus;
    if (m >= n_plus) return s;  // no 0-bit available to flip
    if (!rng.bernoulli(cfg.mutation_prob)) return s;
    const int drop_pos = rng.below(m);
    int added = rng.below(n_plus - m);  // rank among non-members
    for (int u : s.indices) {
        if (u <= added)
            ++added;
        else
            break;
    }
    std::vector<int> out = s.indices;
    out[drop_pos] = added;
    return IndexSet(s.shape, std::move(out));
}

std::pair<int, int> best_pair_of_quartet(std::span<const double, 4> quartet_fitness) {
    // Positions are {p1, p2, c1, c2}; sort keys prefer children on ties.
    std::array<int, 4> order = {2, 3, 0, 1};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return quartet_fitness[a] < quartet_fitness[b];
    });
    return {order[0], order[1]};
}

std::pair<IndexSet, IndexSet> elitist_replace(const IndexSet& p1, const IndexSet& p2,
                                              const IndexSet& c1, const IndexSet& c2,
                                              const TargetSpectrum& target, const GaConfig& cfg) {
    const std::array<const IndexSet*, 4> quartet = {&p1, &p2, &c1, &c2};
    std::array<double, 4> fit{};
    for (int i = 0; i < 4; ++i) fit[i] = fitness(difference_spectrum(*quartet[i]), target, cfg);
    const auto [a, b] = best_pair_of_quartet(std::span<const double, 4>(fit));
    return {*quartet[a], *quartet[b]};
}

GaResult run_ga(const FrameShape& shape, const GaConfig& cfg) {
    cfg.validate();
    // An infinite threshold would otherwise stop at generation zero; treat it
    // as "no early stopping" so the loop always runs max_generations.
    const bool stop_early = std::isfinite(cfg.success_threshold);
    const TargetSpectrum target = gds_target(shape);
    Rng rng(cfg.rng_seed);
    std::vector<int64_t> scratch(shape.n_plus);

    std::vector<IndexSet> population = init_population(shape, cfg, rng);
    std::vector<double> fitnesses(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i)
        fitnesses[i] = fitness_of(population[i].indices, target, cfg, scratch);

    int best_idx = static_cast<int>(std::min_element(fitnesses.begin(), fitnesses.end()) -
                                    fitnesses.begin());
    IndexSet best_set = population[best_idx];
    double best_fitness = fitnesses[best_idx];

    GaResult result{best_set, best_fitness, {}, 0, best_fitness <= cfg.success_threshold};
    if (stop_early && result.converged) return result;

    result.fitness_history.reserve(cfg.max_generations);
    std::vector<IndexSet> next_population;
    std::vector<double> next_fitnesses;
    next_population.reserve(cfg.population_size);
    next_fitnesses.reserve(cfg.population_size);

    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        const auto pairs = select_pairs(fitnesses, rng);
        next_population.clear();
        next_fitnesses.clear();
        for (const auto& [i, j] : pairs) {
            const IndexSet& p1 = population[i];
            const IndexSet& p2 = population[j];
            IndexSet c1 = p1;
            IndexSet c2 = p2;
            if (rng.bernoulli(cfg.crossover_prob)) std::tie(c1, c2) = crossover(p1, p2, rng);
            c1 = mutate(c1, cfg, rng);
            c2 = mutate(c2, cfg, rng);
            const std::array<double, 4> fit = {
                fitnesses[i],
                fitnesses[j],
                fitness_of(c1.indices, target, cfg, scratch),
                fitness_of(c2.indices, target, cfg, scratch),
            };
            const std::array<const IndexSet*, 4> quartet = {&p1, &p2, &c1, &c2};
            const auto [a, b] = best_pair_of_quartet(std::span<const double, 4>(fit));
            next_population.push_back(*quartet[a]);
            next_fitnesses.push_back(fit[a]);
            next_population.push_back(*quartet[b]);
            next_fitnesses.push_back(fit[b]);
        }
        population.swap(next_population);
        fitnesses.swap(next_fitnesses);

        const int gen_best = static_cast<int>(
            std::min_element(fitnesses.begin(), fitnesses.end()) - fitnesses.begin());
        if (fitnesses[gen_best] < best_fitness) {
            best_fitness = fitnesses[gen_best];
            best_set = population[gen_best];
        }
        result.fitness_history.push_back(best_fitness);
        result.generations_run = gen;
        if (stop_early && best_fitness <= cfg.success_threshold) break;
    }

    result.best_set = best_set;
    result.best_fitness = best_fitness;
    result.converged = best_fitness <= cfg.success_threshold;
    return result;
}

}  // namespace aetf::ga
