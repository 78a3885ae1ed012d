#pragma once

#include <vector>

#include "gramevo/genotype.hpp"
#include "gramevo/grammar.hpp"
#include "gramevo/rng.hpp"

namespace gramevo {

// argmin fitness over the drawn candidates; ties keep the earliest draw
int tournament_pick(const std::vector<Individual>& population, const std::vector<int>& drawn);

int tournament_select(const std::vector<Individual>& population, int size, Rng& rng);

// clamp(c + draw) applied to one codon; exposed for the worked-example tests
double gaussian_perturb(double codon, double draw);

void mutate_psge(Individual& ind, double per_codon_rate, double sigma, Rng& rng);
void mutate_ge(Individual& ind, double per_codon_rate, Rng& rng);
void mutate_pge(Individual& ind, double per_codon_rate, Rng& rng);
void mutate_sge(Individual& ind, double per_codon_rate, const Grammar& g, Rng& rng);

void mutate(Individual& ind, Variant variant, double per_codon_rate, double sigma, const Grammar& g, Rng& rng);

// Whole-list inheritance per non-terminal: mask bit 1 takes the list from
// parent 2, bit 0 from parent 1.
Individual crossover_structured_masked(const Individual& p1, const Individual& p2, const std::vector<int>& mask);

Individual crossover_structured(const Individual& p1, const Individual& p2, Rng& rng);

// single cut uniform in [1, len-1]; prefix from parent 1, suffix from parent 2
Individual crossover_one_point(const Individual& p1, const Individual& p2, Rng& rng);

Individual crossover(const Individual& p1, const Individual& p2, Variant variant, Rng& rng);

} // namespace gramevo
