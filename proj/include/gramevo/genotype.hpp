#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "gramevo/grammar.hpp"
#include "gramevo/rng.hpp"

namespace gramevo {

enum class Variant { GE, PGE, SGE, PSGE };

Variant variant_from_name(const std::string& name);
std::string variant_name(Variant v);

// one dynamic codon list per non-terminal, indexed by non-terminal id
struct StructuredRealGenotype {
    std::vector<std::vector<double>> lists;
    bool operator==(const StructuredRealGenotype&) const = default;
};

struct StructuredIntGenotype {
    std::vector<std::vector<int>> lists;
    bool operator==(const StructuredIntGenotype&) const = default;
};

struct LinearIntGenotype {
    std::vector<int> codons; // each in [0, 255]
    bool operator==(const LinearIntGenotype&) const = default;
};

struct LinearRealGenotype {
    std::vector<double> codons; // each in [0, 1]
    bool operator==(const LinearRealGenotype&) const = default;
};

using Genotype = std::variant<LinearIntGenotype, LinearRealGenotype, StructuredIntGenotype, StructuredRealGenotype>;

// per-(non-terminal, rule) usage counts of one derivation
struct ExpansionCounts {
    std::vector<std::vector<int>> counts;

    static ExpansionCounts zero(const Grammar& g)
    {
        ExpansionCounts c;
        c.counts.resize(static_cast<size_t>(g.nonterminal_count()));
        for (int nt = 0; nt < g.nonterminal_count(); ++nt)
            c.counts[static_cast<size_t>(nt)].assign(static_cast<size_t>(g.rule_count(nt)), 0);
        return c;
    }

    int total(int nt) const
    {
        int t = 0;
        for (const int c : counts[static_cast<size_t>(nt)])
            t += c;
        return t;
    }

    bool operator==(const ExpansionCounts&) const = default;
};

inline constexpr double kWorstFitness = std::numeric_limits<double>::infinity();

struct Individual {
    Genotype genotype;
    std::string phenotype;
    ExpansionCounts expansion_counts;
    double fitness = kWorstFitness;
    bool valid = false;
};

struct LearningConfig {
    double lambda = 0.01;
    bool enabled = true;
};

// Upper bound on how many expansions of each non-terminal a depth-limited
// derivation from the axiom can perform; sizes SGE genotype lists.
std::vector<long long> sge_list_sizes(const Grammar& g, int max_depth);

Individual random_psge_individual(const Grammar& g, int max_depth, Rng& rng);

struct InitParams {
    int genotype_size = 128; // GE / PGE
    int max_depth = 10;      // SGE / PSGE
};

Individual random_individual(Variant variant, const Grammar& g, const InitParams& params, Rng& rng);

} // namespace gramevo
