#include "gramevo/learning.hpp"

#include <algorithm>

#include "gramevo/mapping.hpp"
#include "gramevo/problems.hpp"

namespace gramevo {

Grammar update_probabilities(const Grammar& g, const ExpansionCounts& counts, double lambda)
{
    if (lambda == 0.0)
        return g;

    Grammar out = g;
    for (int nt = 0; nt < out.nonterminal_count(); ++nt) {
        const auto& used = counts.counts[static_cast<size_t>(nt)];
        const double total = static_cast<double>(counts.total(nt));
        if (total == 0.0)
            continue;
        for (int rule = 0; rule < out.rule_count(nt); ++rule) {
            const double p = out.rules(nt)[static_cast<size_t>(rule)].probability;
            const double c = static_cast<double>(used[static_cast<size_t>(rule)]);
            const double updated = c > 0.0 ? std::min(p + lambda * c / total, 1.0) : p - lambda * p;
            out.set_probability(nt, rule, updated);
        }
        out = normalize(std::move(out), nt);
    }
    return out;
}

const Individual& select_update_source(UpdateSourcePolicy& policy, const Individual& best_gen,
                                       const Individual& best_overall)
{
    const bool generation_phase = policy.phase == UpdateSourcePolicy::Phase::BestOfGeneration;
    policy.advance();
    const Individual& chosen = generation_phase ? best_gen : best_overall;
    if (!chosen.valid)
        throw NoValidIndividual(generation_phase ? "best of generation is invalid" : "best overall is invalid");
    return chosen;
}

void remap_population(std::vector<Individual>& population, const Grammar& g, int max_depth, Rng& rng,
                      const Problem& problem)
{
    for (auto& ind : population) {
        remap_individual(ind, g, max_depth, rng);
        ind.fitness = ind.valid ? problem.evaluate(ind.phenotype) : kWorstFitness;
    }
}

} // namespace gramevo
