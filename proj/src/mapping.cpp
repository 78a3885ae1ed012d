#include "gramevo/mapping.hpp"

#include <algorithm>

namespace gramevo {

int generate_expansion(int symb, double codon, const Grammar& g, int depth, int max_depth)
{
    const auto& prods = g.rules(symb);
    if (depth < max_depth) {
        double cum = 0.0;
        for (const auto& p : prods) {
            cum += p.probability;
            if (codon <= cum)
                return p.index;
        }
        // float drift: fall back to the last rule with non-zero probability
        for (auto it = prods.rbegin(); it != prods.rend(); ++it)
            if (it->probability > 0.0)
                return it->index;
        return prods.back().index;
    }

    const auto& nonrec = g.nonrecursive_rules(symb);
    if (nonrec.empty())
        throw NoNonRecursiveRule("<" + g.nonterminal_name(symb) + "> cannot terminate at the depth limit");
    double total = 0.0;
    for (const int r : nonrec)
        total += prods[static_cast<size_t>(r)].probability;
    double cum = 0.0;
    int last_nonzero = -1;
    for (const int r : nonrec) {
        // all non-recursive rules at probability zero: treat as uniform
        cum += total > 0.0 ? prods[static_cast<size_t>(r)].probability / total
                           : 1.0 / static_cast<double>(nonrec.size());
        if (codon <= cum)
            return r;
        if (prods[static_cast<size_t>(r)].probability > 0.0)
            last_nonzero = r;
    }
    return total > 0.0 && last_nonzero >= 0 ? last_nonzero : nonrec.back();
}

namespace {

struct PsgeMapper {
    StructuredRealGenotype& geno;
    const Grammar& g;
    int max_depth;
    Rng& rng;
    MapTrace* trace;
    MapResult out;
    std::vector<size_t> next; // positions_to_map

    void expand(int nt, int depth)
    {
        out.depth = std::max(out.depth, depth);
        auto& list = geno.lists[static_cast<size_t>(nt)];
        const size_t pos = next[static_cast<size_t>(nt)]++;
        bool appended = false;
        if (pos >= list.size()) {
            list.push_back(rng.uniform01());
            appended = true;
        }
        const double codon = list[pos];
        const int rule = generate_expansion(nt, codon, g, depth, max_depth);
        out.counts.counts[static_cast<size_t>(nt)][static_cast<size_t>(rule)]++;
        if (trace)
            trace->push_back({nt, rule, codon, appended});
        for (const auto& sym : g.rules(nt)[static_cast<size_t>(rule)].rhs) {
            if (sym.is_nonterminal())
                expand(g.nonterminal_id(sym.name), depth + 1);
            else
                out.phenotype += sym.name;
        }
    }
};

struct GeMapper {
    const LinearIntGenotype& geno;
    const Grammar& g;
    MapTrace* trace;
    MapResult out;
    size_t cursor = 0;

    void expand(int nt, int depth)
    {
        if (!out.valid)
            return;
        out.depth = std::max(out.depth, depth);
        if (cursor >= geno.codons.size()) {
            out.valid = false;
            return;
        }
        const int codon = geno.codons[cursor++];
        const int rule = codon % g.rule_count(nt);
        out.counts.counts[static_cast<size_t>(nt)][static_cast<size_t>(rule)]++;
        if (trace)
            trace->push_back({nt, rule, static_cast<double>(codon), false});
        for (const auto& sym : g.rules(nt)[static_cast<size_t>(rule)].rhs) {
            if (sym.is_nonterminal()) {
                expand(g.nonterminal_id(sym.name), depth + 1);
                if (!out.valid)
                    return;
            } else {
                out.phenotype += sym.name;
            }
        }
    }
};

struct PgeMapper {
    const LinearRealGenotype& geno;
    const Grammar& g;
    int max_depth;
    MapTrace* trace;
    MapResult out;
    size_t cursor = 0;

    void expand(int nt, int depth)
    {
        if (!out.valid)
            return;
        out.depth = std::max(out.depth, depth);
        if (cursor >= geno.codons.size()) {
            out.valid = false;
            return;
        }
        const double codon = geno.codons[cursor++];
        const int rule = generate_expansion(nt, codon, g, depth, max_depth);
        out.counts.counts[static_cast<size_t>(nt)][static_cast<size_t>(rule)]++;
        if (trace)
            trace->push_back({nt, rule, codon, false});
        for (const auto& sym : g.rules(nt)[static_cast<size_t>(rule)].rhs) {
            if (sym.is_nonterminal()) {
                expand(g.nonterminal_id(sym.name), depth + 1);
                if (!out.valid)
                    return;
            } else {
                out.phenotype += sym.name;
            }
        }
    }
};

struct SgeMapper {
    const StructuredIntGenotype& geno;
    const Grammar& g;
    int max_depth;
    MapTrace* trace;
    MapResult out;
    std::vector<size_t> next;

    void expand(int nt, int depth)
    {
        out.depth = std::max(out.depth, depth);
        const auto& list = geno.lists[static_cast<size_t>(nt)];
        const size_t pos = next[static_cast<size_t>(nt)]++;
        if (pos >= list.size())
            throw Error("SGE genotype shorter than the static bound for <" + g.nonterminal_name(nt) + ">");
        const int codon = list[pos];
        int rule = 0;
        if (depth < max_depth) {
            rule = codon;
        } else {
            const auto& nonrec = g.nonrecursive_rules(nt);
            rule = nonrec[static_cast<size_t>(codon) % nonrec.size()];
        }
        out.counts.counts[static_cast<size_t>(nt)][static_cast<size_t>(rule)]++;
        if (trace)
            trace->push_back({nt, rule, static_cast<double>(codon), false});
        for (const auto& sym : g.rules(nt)[static_cast<size_t>(rule)].rhs) {
            if (sym.is_nonterminal())
                expand(g.nonterminal_id(sym.name), depth + 1);
            else
                out.phenotype += sym.name;
        }
    }
};

} // namespace

MapResult map_psge(StructuredRealGenotype& genotype, const Grammar& g, int max_depth, Rng& rng, MapTrace* trace)
{
    genotype.lists.resize(static_cast<size_t>(g.nonterminal_count()));
    PsgeMapper m{genotype, g, max_depth, rng, trace, {}, {}};
    m.out.counts = ExpansionCounts::zero(g);
    m.next.assign(static_cast<size_t>(g.nonterminal_count()), 0);
    m.expand(g.axiom(), 0);
    return std::move(m.out);
}

MapResult map_ge(const LinearIntGenotype& genotype, const Grammar& g, MapTrace* trace)
{
    GeMapper m{genotype, g, trace, {}};
    m.out.counts = ExpansionCounts::zero(g);
    m.expand(g.axiom(), 0);
    m.out.codons_used = static_cast<int>(m.cursor);
    if (!m.out.valid)
        m.out.phenotype.clear();
    return std::move(m.out);
}

MapResult map_pge(const LinearRealGenotype& genotype, const Grammar& g, int max_depth, MapTrace* trace)
{
    PgeMapper m{genotype, g, max_depth, trace, {}};
    m.out.counts = ExpansionCounts::zero(g);
    m.expand(g.axiom(), 0);
    m.out.codons_used = static_cast<int>(m.cursor);
    if (!m.out.valid)
        m.out.phenotype.clear();
    return std::move(m.out);
}

MapResult map_sge(const StructuredIntGenotype& genotype, const Grammar& g, int max_depth, MapTrace* trace)
{
    SgeMapper m{genotype, g, max_depth, trace, {}, {}};
    m.out.counts = ExpansionCounts::zero(g);
    m.next.assign(static_cast<size_t>(g.nonterminal_count()), 0);
    m.expand(g.axiom(), 0);
    return std::move(m.out);
}

Variant genotype_variant(const Genotype& g)
{
    switch (g.index()) {
    case 0:
        return Variant::GE;
    case 1:
        return Variant::PGE;
    case 2:
        return Variant::SGE;
    default:
        return Variant::PSGE;
    }
}

void remap_individual(Individual& ind, const Grammar& g, int max_depth, Rng& rng, MapTrace* trace)
{
    MapResult r;
    switch (genotype_variant(ind.genotype)) {
    case Variant::GE:
        r = map_ge(std::get<LinearIntGenotype>(ind.genotype), g, trace);
        break;
    case Variant::PGE:
        r = map_pge(std::get<LinearRealGenotype>(ind.genotype), g, max_depth, trace);
        break;
    case Variant::SGE:
        r = map_sge(std::get<StructuredIntGenotype>(ind.genotype), g, max_depth, trace);
        break;
    case Variant::PSGE:
        r = map_psge(std::get<StructuredRealGenotype>(ind.genotype), g, max_depth, rng, trace);
        break;
    }
    ind.phenotype = std::move(r.phenotype);
    ind.expansion_counts = std::move(r.counts);
    ind.valid = r.valid;
    ind.fitness = kWorstFitness;
}

} // namespace gramevo
