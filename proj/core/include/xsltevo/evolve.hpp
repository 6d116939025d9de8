#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "xsltevo/config.hpp"
#include "xsltevo/fitness.hpp"
#include "xsltevo/genome.hpp"
#include "xsltevo/variation.hpp"

namespace xsltevo {

struct EvolveConfig {
    int population = 128;
    int max_generations = 200;
    int tournament = 5;
    StructureType type = StructureType::Type1;
    int elitism = 1;
    uint64_t seed = 1;
    std::optional<OperatorTable> operators;  // default table of `type` when unset
    InitParams init;
    TransformLimits limits;  // zero fields are derived from input/target
    int applications_per_offspring = 1;
    std::string wrapper_tag = "output";
    bool wrapper_from_root = false;
    std::string line_tag = "line";
    std::vector<Genome> seed_genomes;  // planted into the initial population
};

struct Individual {
    Genome genome;
    FitnessVector fitness;
};

struct GenerationStats {
    int generation = 0;
    FitnessVector best;
    double mean_deletions = 0;  // over individuals that did not overflow
    double mean_additions = 0;
    double mean_length = 0;
    int overflowed = 0;
};

struct OperatorStats {
    long long applied = 0;
    long long noop = 0;
};

struct RunResult {
    Genome best;
    FitnessVector best_fitness;
    bool success = false;
    long long evaluations = 0;
    int generations = 0;
    double wall_ms = 0;
    std::vector<GenerationStats> history;
    std::array<OperatorStats, kOperatorCount> op_stats{};
    long long crossover_discards = 0;
};

// Index of the best of k distinct uniformly drawn individuals; ties go to
// the lowest population index.
size_t tournament_select(const std::vector<FitnessVector>& fitnesses, int k, Rng& rng);

// Generational loop with elitism. Deterministic for a given config and seed.
RunResult run_evolution(const EvolveConfig& config, std::shared_ptr<const Document> input,
                        const Document& target);

}  // namespace xsltevo
