#include "gramevo/variation.hpp"

#include <algorithm>

namespace gramevo {

namespace {

Individual bare_offspring(Genotype genotype)
{
    Individual child;
    child.genotype = std::move(genotype);
    return child;
}

} // namespace

int tournament_pick(const std::vector<Individual>& population, const std::vector<int>& drawn)
{
    int best = drawn.front();
    for (const int idx : drawn)
        if (population[static_cast<size_t>(idx)].fitness < population[static_cast<size_t>(best)].fitness)
            best = idx;
    return best;
}

int tournament_select(const std::vector<Individual>& population, int size, Rng& rng)
{
    std::vector<int> drawn;
    drawn.reserve(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i)
        drawn.push_back(static_cast<int>(rng.uniform_int(population.size())));
    return tournament_pick(population, drawn);
}

double gaussian_perturb(double codon, double draw) { return std::clamp(codon + draw, 0.0, 1.0); }

void mutate_psge(Individual& ind, double per_codon_rate, double sigma, Rng& rng)
{
    auto& lists = std::get<StructuredRealGenotype>(ind.genotype).lists;
    for (auto& list : lists)
        for (auto& codon : list)
            if (rng.bernoulli(per_codon_rate))
                codon = gaussian_perturb(codon, rng.normal(0.0, sigma));
}

void mutate_ge(Individual& ind, double per_codon_rate, Rng& rng)
{
    for (auto& codon : std::get<LinearIntGenotype>(ind.genotype).codons)
        if (rng.bernoulli(per_codon_rate))
            codon = static_cast<int>(rng.uniform_int(256));
}

void mutate_pge(Individual& ind, double per_codon_rate, Rng& rng)
{
    for (auto& codon : std::get<LinearRealGenotype>(ind.genotype).codons)
        if (rng.bernoulli(per_codon_rate))
            codon = rng.uniform01();
}

void mutate_sge(Individual& ind, double per_codon_rate, const Grammar& g, Rng& rng)
{
    auto& lists = std::get<StructuredIntGenotype>(ind.genotype).lists;
    for (size_t nt = 0; nt < lists.size(); ++nt) {
        const int rules = g.rule_count(static_cast<int>(nt));
        for (auto& codon : lists[nt]) {
            if (!rng.bernoulli(per_codon_rate) || rules < 2)
                continue;
            // uniform over the other valid rule indices
            int pick = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(rules - 1)));
            if (pick >= codon)
                ++pick;
            codon = pick;
        }
    }
}

void mutate(Individual& ind, Variant variant, double per_codon_rate, double sigma, const Grammar& g, Rng& rng)
{
    switch (variant) {
    case Variant::GE:
        mutate_ge(ind, per_codon_rate, rng);
        break;
    case Variant::PGE:
        mutate_pge(ind, per_codon_rate, rng);
        break;
    case Variant::SGE:
        mutate_sge(ind, per_codon_rate, g, rng);
        break;
    case Variant::PSGE:
        mutate_psge(ind, per_codon_rate, sigma, rng);
        break;
    }
}

Individual crossover_structured_masked(const Individual& p1, const Individual& p2, const std::vector<int>& mask)
{
    Individual child;
    if (std::holds_alternative<StructuredRealGenotype>(p1.genotype)) {
        const auto& a = std::get<StructuredRealGenotype>(p1.genotype).lists;
        const auto& b = std::get<StructuredRealGenotype>(p2.genotype).lists;
        StructuredRealGenotype geno;
        geno.lists.resize(a.size());
        for (size_t nt = 0; nt < a.size(); ++nt)
            geno.lists[nt] = mask[nt] ? b[nt] : a[nt];
        child = bare_offspring(std::move(geno));
    } else {
        const auto& a = std::get<StructuredIntGenotype>(p1.genotype).lists;
        const auto& b = std::get<StructuredIntGenotype>(p2.genotype).lists;
        StructuredIntGenotype geno;
        geno.lists.resize(a.size());
        for (size_t nt = 0; nt < a.size(); ++nt)
            geno.lists[nt] = mask[nt] ? b[nt] : a[nt];
        child = bare_offspring(std::move(geno));
    }
    return child;
}

Individual crossover_structured(const Individual& p1, const Individual& p2, Rng& rng)
{
    const size_t n = std::holds_alternative<StructuredRealGenotype>(p1.genotype)
        ? std::get<StructuredRealGenotype>(p1.genotype).lists.size()
        : std::get<StructuredIntGenotype>(p1.genotype).lists.size();
    std::vector<int> mask(n);
    for (auto& bit : mask)
        bit = static_cast<int>(rng.uniform_int(2));
    return crossover_structured_masked(p1, p2, mask);
}

Individual crossover_one_point(const Individual& p1, const Individual& p2, Rng& rng)
{
    if (std::holds_alternative<LinearIntGenotype>(p1.genotype)) {
        const auto& a = std::get<LinearIntGenotype>(p1.genotype).codons;
        const auto& b = std::get<LinearIntGenotype>(p2.genotype).codons;
        LinearIntGenotype geno;
        geno.codons = a;
        if (a.size() >= 2) {
            const size_t cut = static_cast<size_t>(rng.uniform_range(1, static_cast<std::int64_t>(a.size()) - 1));
            std::copy(b.begin() + static_cast<std::ptrdiff_t>(cut), b.end(),
                      geno.codons.begin() + static_cast<std::ptrdiff_t>(cut));
        }
        return bare_offspring(std::move(geno));
    }
    const auto& a = std::get<LinearRealGenotype>(p1.genotype).codons;
    const auto& b = std::get<LinearRealGenotype>(p2.genotype).codons;
    LinearRealGenotype geno;
    geno.codons = a;
    if (a.size() >= 2) {
        const size_t cut = static_cast<size_t>(rng.uniform_range(1, static_cast<std::int64_t>(a.size()) - 1));
        std::copy(b.begin() + static_cast<std::ptrdiff_t>(cut), b.end(),
                  geno.codons.begin() + static_cast<std::ptrdiff_t>(cut));
    }
    return bare_offspring(std::move(geno));
}

Individual crossover(const Individual& p1, const Individual& p2, Variant variant, Rng& rng)
{
    if (variant == Variant::GE || variant == Variant::PGE)
        return crossover_one_point(p1, p2, rng);
    return crossover_structured(p1, p2, rng);
}

} // namespace gramevo
