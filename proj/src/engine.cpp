#include "gramevo/engine.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>

#include "gramevo/mapping.hpp"
#include "gramevo/variation.hpp"

namespace gramevo {

void RunConfig::validate() const
{
    if (population_size < 1)
        throw ConfigError("population size must be at least 1");
    if (generations < 0)
        throw ConfigError("generations must be non-negative");
    if (elitism_count < 0 || elitism_count >= population_size)
        throw ConfigError("elitism count must lie in [0, population size)");
    if (mutation_rate < 0.0 || mutation_rate > 1.0)
        throw ConfigError("mutation rate must lie in [0, 1]");
    if (crossover_rate < 0.0 || crossover_rate > 1.0)
        throw ConfigError("crossover rate must lie in [0, 1]");
    if (tournament_size < 1)
        throw ConfigError("tournament size must be at least 1");
    if (genotype_size < 1)
        throw ConfigError("genotype size must be at least 1");
    if (max_depth < 1)
        throw ConfigError("max depth must be at least 1");
    if (sigma <= 0.0)
        throw ConfigError("mutation sigma must be positive");
    if (learning.lambda < 0.0 || learning.lambda > 1.0)
        throw ConfigError("learning factor must lie in [0, 1]");
}

void evaluate_population(std::vector<Individual>& population, const Problem& problem)
{
    for (auto& ind : population)
        ind.fitness = ind.valid ? problem.evaluate(ind.phenotype) : kWorstFitness;
}

namespace {

const Individual* best_valid(const std::vector<Individual>& population)
{
    const Individual* best = nullptr;
    for (const auto& ind : population)
        if (ind.valid && (!best || ind.fitness < best->fitness))
            best = &ind;
    return best;
}

std::vector<int> elite_indices(const std::vector<Individual>& population, int count)
{
    std::vector<int> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return population[static_cast<size_t>(a)].fitness < population[static_cast<size_t>(b)].fitness;
    });
    order.resize(static_cast<size_t>(count));
    return order;
}

} // namespace

std::vector<RunRecord> run(const RunConfig& config, const Grammar& grammar, const Problem& problem,
                           const GenerationObserver& observer)
{
    config.validate();
    check_grammar_terminals(problem, grammar);

    Grammar g = grammar;
    Rng rng_init(config.seed, "init");
    Rng rng_var(config.seed, "variation");
    Rng rng_map(config.seed, "mapping");
    Rng rng_mask(config.seed, "mask");

    const bool learning_active =
        config.learning.enabled && (config.variant == Variant::PSGE || config.variant == Variant::PGE);
    const bool linear = config.variant == Variant::GE || config.variant == Variant::PGE;
    const InitParams init_params{config.genotype_size, config.max_depth};

    std::vector<Individual> pop;
    pop.reserve(static_cast<size_t>(config.population_size));
    for (int i = 0; i < config.population_size; ++i)
        pop.push_back(random_individual(config.variant, g, init_params, rng_init));
    evaluate_population(pop, problem);

    std::optional<Individual> archive; // frozen best-overall snapshot
    const auto update_archive = [&] {
        const Individual* best = best_valid(pop);
        if (best && (!archive || best->fitness < archive->fitness))
            archive = *best;
    };

    UpdateSourcePolicy policy;
    const Individual none; // stands in when a phase has no valid candidate
    std::vector<RunRecord> records;
    const int total_records = std::max(config.generations, 1);
    auto last_tick = std::chrono::steady_clock::now();

    for (int gen = 0;; ++gen) {
        update_archive();

        RunRecord rec;
        rec.generation = gen;
        rec.best_overall = archive ? archive->fitness : kWorstFitness;
        double best = kWorstFitness;
        double sum = 0.0;
        int invalid = 0;
        for (const auto& ind : pop) {
            best = std::min(best, ind.fitness);
            sum += ind.fitness;
            invalid += ind.valid ? 0 : 1;
        }
        rec.best_gen = best;
        rec.mean = sum / static_cast<double>(pop.size());
        rec.invalid_count = invalid;
        const auto now = std::chrono::steady_clock::now();
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(now - last_tick).count();
        last_tick = now;
        records.push_back(rec);

        if (observer)
            observer({gen, pop, g, archive ? &*archive : nullptr});

        if (gen + 1 >= total_records)
            break;

        // elites are chosen by fitness under the grammar they were scored
        // with, then carried over in their re-mapped form
        const auto elites = elite_indices(pop, config.elitism_count);

        if (learning_active) {
            try {
                const Individual* gen_best = best_valid(pop);
                const Individual& src =
                    select_update_source(policy, gen_best ? *gen_best : none, archive ? *archive : none);
                g = update_probabilities(g, src.expansion_counts, config.learning.lambda);
                remap_population(pop, g, config.max_depth, rng_map, problem);
            } catch (const NoValidIndividual&) {
            }
        }

        std::vector<Individual> next;
        next.reserve(pop.size());
        for (const int idx : elites)
            next.push_back(pop[static_cast<size_t>(idx)]);
        while (next.size() < pop.size()) {
            const int p1 = tournament_select(pop, config.tournament_size, rng_var);
            Individual child;
            if (rng_var.bernoulli(config.crossover_rate)) {
                const int p2 = tournament_select(pop, config.tournament_size, rng_var);
                child = linear
                    ? crossover_one_point(pop[static_cast<size_t>(p1)], pop[static_cast<size_t>(p2)], rng_var)
                    : crossover_structured(pop[static_cast<size_t>(p1)], pop[static_cast<size_t>(p2)], rng_mask);
            } else {
                child.genotype = pop[static_cast<size_t>(p1)].genotype;
            }
            mutate(child, config.variant, config.mutation_rate, config.sigma, g, rng_var);
            remap_individual(child, g, config.max_depth, rng_map);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        evaluate_population(pop, problem);
    }
    return records;
}

} // namespace gramevo
