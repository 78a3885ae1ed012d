#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gramevo/genotype.hpp"
#include "gramevo/grammar.hpp"
#include "gramevo/learning.hpp"
#include "gramevo/problems.hpp"

namespace gramevo {

struct RunConfig {
    Variant variant = Variant::PSGE;
    int population_size = 1000;
    int generations = 50;
    int elitism_count = 100;
    double mutation_rate = 0.05;
    double crossover_rate = 0.90;
    int tournament_size = 3;
    int genotype_size = 128; // GE / PGE
    int max_depth = 10;      // SGE / PSGE / PGE fallback
    double sigma = 0.5;      // Gaussian mutation spread
    LearningConfig learning;
    std::uint64_t seed = 0;

    void validate() const;
};

struct RunRecord {
    int generation = 0;
    double best_gen = 0.0;
    double best_overall = 0.0;
    double mean = 0.0;
    int invalid_count = 0;
    double elapsed_ms = 0.0;
};

struct GenerationView {
    int generation;
    const std::vector<Individual>& population;
    const Grammar& grammar;
    const Individual* best_overall; // frozen archive snapshot, null until a valid individual exists
};

using GenerationObserver = std::function<void(const GenerationView&)>;

void evaluate_population(std::vector<Individual>& population, const Problem& problem);

// One full evolutionary run; deterministic given config.seed.
std::vector<RunRecord> run(const RunConfig& config, const Grammar& grammar, const Problem& problem,
                           const GenerationObserver& observer = {});

} // namespace gramevo
