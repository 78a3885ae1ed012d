#pragma once

#include <vector>

#include "gramevo/genotype.hpp"
#include "gramevo/grammar.hpp"
#include "gramevo/rng.hpp"

namespace gramevo {

// Alternates the origin of grammar updates: best of the current generation on
// even phases, best found so far on odd ones, starting at best-of-generation.
struct UpdateSourcePolicy {
    enum class Phase { BestOfGeneration, BestOverall };
    Phase phase = Phase::BestOfGeneration;

    void advance()
    {
        phase = phase == Phase::BestOfGeneration ? Phase::BestOverall : Phase::BestOfGeneration;
    }
};

// Reinforce the rules the chosen individual used (proportionally to their
// usage share) and decay the unused ones, then renormalize each touched
// non-terminal. Non-terminals the individual never expanded are untouched.
Grammar update_probabilities(const Grammar& g, const ExpansionCounts& counts, double lambda);

// Returns the individual the current phase dictates and advances the phase.
const Individual& select_update_source(UpdateSourcePolicy& policy, const Individual& best_gen,
                                       const Individual& best_overall);

class Problem;

// Recompute phenotype, counts, validity and fitness of every individual
// under the (possibly updated) grammar.
void remap_population(std::vector<Individual>& population, const Grammar& g, int max_depth, Rng& rng,
                      const Problem& problem);

} // namespace gramevo
