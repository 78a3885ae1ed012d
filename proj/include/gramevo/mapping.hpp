#pragma once

#include <string>
#include <vector>

#include "gramevo/genotype.hpp"
#include "gramevo/grammar.hpp"
#include "gramevo/rng.hpp"

namespace gramevo {

struct MapStep {
    int nt = 0;
    int rule = 0;
    double codon = 0.0; // integer variants store the codon value as-is
    bool appended = false;
};

using MapTrace = std::vector<MapStep>;

struct MapResult {
    std::string phenotype;
    ExpansionCounts counts;
    bool valid = true;
    int codons_used = 0; // linear variants only
    int depth = 0;       // deepest expansion depth reached
};

// Rule selection by cumulative probability interval: the first rule (in file
// order) whose running sum reaches the codon. At depth >= max_depth only
// non-recursive rules compete, with probabilities rescaled proportionally.
int generate_expansion(int symb, double codon, const Grammar& g, int depth, int max_depth);

// Appends fresh uniform codons to exhausted lists; never fails.
MapResult map_psge(StructuredRealGenotype& genotype, const Grammar& g, int max_depth, Rng& rng,
                   MapTrace* trace = nullptr);

// Modulo mapping over a linear integer genotype; no wrapping, no depth limit;
// running out of codons leaves the result invalid.
MapResult map_ge(const LinearIntGenotype& genotype, const Grammar& g, MapTrace* trace = nullptr);

// Cumulative-interval mapping over a linear real genotype; depth fallback as
// in map_psge; running out of codons leaves the result invalid.
MapResult map_pge(const LinearRealGenotype& genotype, const Grammar& g, int max_depth, MapTrace* trace = nullptr);

// Per-non-terminal integer lists pre-sized to the static bound; at the depth
// limit the codon indexes the non-recursive subset by modulo.
MapResult map_sge(const StructuredIntGenotype& genotype, const Grammar& g, int max_depth, MapTrace* trace = nullptr);

// Dispatch on the genotype alternative; refreshes phenotype, counts and
// validity and resets fitness to the sentinel.
void remap_individual(Individual& ind, const Grammar& g, int max_depth, Rng& rng, MapTrace* trace = nullptr);

Variant genotype_variant(const Genotype& g);

} // namespace gramevo
