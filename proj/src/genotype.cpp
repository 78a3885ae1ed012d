#include "gramevo/genotype.hpp"

#include <algorithm>

#include "gramevo/mapping.hpp"

namespace gramevo {

Variant variant_from_name(const std::string& name)
{
    if (name == "ge")
        return Variant::GE;
    if (name == "pge")
        return Variant::PGE;
    if (name == "sge")
        return Variant::SGE;
    if (name == "psge")
        return Variant::PSGE;
    throw ConfigError("unknown variant '" + name + "' (expected ge, pge, sge or psge)");
}

std::string variant_name(Variant v)
{
    switch (v) {
    case Variant::GE:
        return "ge";
    case Variant::PGE:
        return "pge";
    case Variant::SGE:
        return "sge";
    default:
        return "psge";
    }
}

namespace {

constexpr long long kBoundCap = 1ll << 50;

// max expansions of each non-terminal in a derivation rooted at an expansion
// of `nt` at depth `d`; memoized on (nt, min(d, max_depth)) since the rule
// set stops changing once the depth limit is reached
struct BoundSolver {
    const Grammar& g;
    int max_depth;
    std::vector<std::vector<std::vector<long long>>> memo;
    std::vector<std::vector<bool>> done;

    BoundSolver(const Grammar& grammar, int depth)
        : g(grammar)
        , max_depth(depth)
        , memo(static_cast<size_t>(g.nonterminal_count()),
               std::vector<std::vector<long long>>(static_cast<size_t>(depth) + 1))
        , done(static_cast<size_t>(g.nonterminal_count()), std::vector<bool>(static_cast<size_t>(depth) + 1, false))
    {
    }

    const std::vector<long long>& solve(int nt, int depth)
    {
        const size_t d = static_cast<size_t>(std::min(depth, max_depth));
        if (done[static_cast<size_t>(nt)][d])
            return memo[static_cast<size_t>(nt)][d];

        std::vector<long long> best(static_cast<size_t>(g.nonterminal_count()), 0);
        const auto& prods = g.rules(nt);
        for (const auto& p : prods) {
            if (static_cast<int>(d) >= max_depth && p.is_recursive)
                continue;
            std::vector<long long> total(static_cast<size_t>(g.nonterminal_count()), 0);
            for (const auto& sym : p.rhs) {
                if (!sym.is_nonterminal())
                    continue;
                const auto& sub = solve(g.nonterminal_id(sym.name), static_cast<int>(d) + 1);
                for (size_t x = 0; x < total.size(); ++x)
                    total[x] = std::min(total[x] + sub[x], kBoundCap);
            }
            for (size_t x = 0; x < total.size(); ++x)
                best[x] = std::max(best[x], total[x]);
        }
        best[static_cast<size_t>(nt)] = std::min(best[static_cast<size_t>(nt)] + 1, kBoundCap);

        done[static_cast<size_t>(nt)][d] = true;
        memo[static_cast<size_t>(nt)][d] = std::move(best);
        return memo[static_cast<size_t>(nt)][d];
    }
};

} // namespace

std::vector<long long> sge_list_sizes(const Grammar& g, int max_depth)
{
    BoundSolver solver(g, max_depth);
    auto sizes = solver.solve(g.axiom(), 0);
    constexpr long long kAllocCap = 50'000'000;
    long long total = 0;
    for (const long long s : sizes)
        total = std::min(total + s, kBoundCap);
    if (total > kAllocCap)
        throw ConfigError("SGE static genotype bound exceeds " + std::to_string(kAllocCap) +
                          " codons; lower max_depth or simplify the grammar");
    return sizes;
}

Individual random_psge_individual(const Grammar& g, int max_depth, Rng& rng)
{
    Individual ind;
    ind.genotype = StructuredRealGenotype{};
    auto r = map_psge(std::get<StructuredRealGenotype>(ind.genotype), g, max_depth, rng);
    ind.phenotype = std::move(r.phenotype);
    ind.expansion_counts = std::move(r.counts);
    ind.valid = r.valid;
    return ind;
}

Individual random_individual(Variant variant, const Grammar& g, const InitParams& params, Rng& rng)
{
    if (variant == Variant::PSGE)
        return random_psge_individual(g, params.max_depth, rng);

    Individual ind;
    MapResult r;
    switch (variant) {
    case Variant::GE: {
        LinearIntGenotype geno;
        geno.codons.reserve(static_cast<size_t>(params.genotype_size));
        for (int i = 0; i < params.genotype_size; ++i)
            geno.codons.push_back(static_cast<int>(rng.uniform_int(256)));
        r = map_ge(geno, g);
        ind.genotype = std::move(geno);
        break;
    }
    case Variant::PGE: {
        LinearRealGenotype geno;
        geno.codons.reserve(static_cast<size_t>(params.genotype_size));
        for (int i = 0; i < params.genotype_size; ++i)
            geno.codons.push_back(rng.uniform01());
        r = map_pge(geno, g, params.max_depth);
        ind.genotype = std::move(geno);
        break;
    }
    case Variant::SGE: {
        StructuredIntGenotype geno;
        const auto sizes = sge_list_sizes(g, params.max_depth);
        geno.lists.resize(sizes.size());
        for (size_t nt = 0; nt < sizes.size(); ++nt) {
            geno.lists[nt].reserve(static_cast<size_t>(sizes[nt]));
            const auto rules = static_cast<std::uint64_t>(g.rule_count(static_cast<int>(nt)));
            for (long long i = 0; i < sizes[nt]; ++i)
                geno.lists[nt].push_back(static_cast<int>(rng.uniform_int(rules)));
        }
        r = map_sge(geno, g, params.max_depth);
        ind.genotype = std::move(geno);
        break;
    }
    default:
        break;
    }
    ind.phenotype = std::move(r.phenotype);
    ind.expansion_counts = std::move(r.counts);
    ind.valid = r.valid;
    return ind;
}

} // namespace gramevo
