#include <doctest.h>

#include <string>
#include <vector>

#include "gramevo/genotype.hpp"
#include "gramevo/grammar.hpp"
#include "gramevo/mapping.hpp"
#include "gramevo/rng.hpp"
#include "oracle_mapper.hpp"

using namespace gramevo;

namespace {

const char* kDemoCfg = R"(<expr> ::= <expr> <op> <expr> | <var>
<op> ::= ' + ' | ' - ' | ' * ' | ' / '
<var> ::= x | y | 1.0
)";

const char* kDemoPcfg = R"(<expr> ::= <expr> <op> <expr> {0.37} | <var> {0.63}
<op> ::= ' + ' {0.22} | ' - ' {0.17} | ' * ' {0.29} | ' / ' {0.32}
<var> ::= x {0.41} | y {0.26} | 1.0 {0.33}
)";

std::vector<int> rule_choices(const MapTrace& trace)
{
    std::vector<int> out;
    for (const auto& step : trace)
        out.push_back(step.rule);
    return out;
}

} // namespace

TEST_CASE("ge mapping walks the reference derivation")
{
    const Grammar g = parse_grammar(kDemoCfg);
    const LinearIntGenotype geno{{34, 13, 9, 151, 95, 221, 23, 98, 145, 42, 153}};
    MapTrace trace;
    const MapResult r = map_ge(geno, g, &trace);
    CHECK(r.valid);
    CHECK(r.phenotype == "x / 1.0");
    CHECK(r.codons_used == 6);
    CHECK(rule_choices(trace) == std::vector<int>{0, 1, 0, 3, 1, 2});
}

TEST_CASE("ge two-rule modulo")
{
    const Grammar g = parse_grammar("<s> ::= a | b\n");
    const MapResult r = map_ge(LinearIntGenotype{{3}}, g);
    CHECK(r.valid);
    CHECK(r.phenotype == "b"); // 3 mod 2 = 1
}

TEST_CASE("ge exhaustion leaves the individual invalid, no wrapping")
{
    const Grammar g = parse_grammar(kDemoCfg);
    // codon 0 always picks the recursive expression rule, so the tape runs dry
    const MapResult r = map_ge(LinearIntGenotype{{0, 0, 0, 0}}, g);
    CHECK_FALSE(r.valid);
    CHECK(r.phenotype.empty());

    // GE has no depth limit: 12 nested recursions map fine given enough codons
    std::vector<int> deep;
    for (int i = 0; i < 12; ++i)
        deep.push_back(0);
    deep.insert(deep.end(), 200, 1); // then always <var>
    std::vector<int> padded = deep;
    const MapResult ok = map_ge(LinearIntGenotype{padded}, g);
    CHECK(ok.valid);
    CHECK(ok.depth >= 12);
}

TEST_CASE("psge mapping follows the worked probabilistic example")
{
    const Grammar g = parse_grammar(kDemoPcfg);
    StructuredRealGenotype geno{{{0.19, 0.46, 0.87}, {0.27}, {0.32, 0.64}}};
    const StructuredRealGenotype before = geno;
    Rng rng(0, "mapping");
    MapTrace trace;
    const MapResult r = map_psge(geno, g, 10, rng, &trace);

    CHECK(r.valid);
    CHECK(r.phenotype == "x - y");
    CHECK(geno == before); // long enough lists: nothing appended

    const int expr = g.nonterminal_id("expr");
    const int op = g.nonterminal_id("op");
    const int var = g.nonterminal_id("var");
    REQUIRE(trace.size() == 6);
    CHECK(trace[0].nt == expr);
    CHECK(trace[0].rule == 0);
    CHECK(trace[1].nt == expr);
    CHECK(trace[1].rule == 1);
    CHECK(trace[2].nt == var);
    CHECK(trace[2].rule == 0);
    CHECK(trace[3].nt == op);
    CHECK(trace[3].rule == 1);
    CHECK(trace[4].nt == expr);
    CHECK(trace[4].rule == 1);
    CHECK(trace[5].nt == var);
    CHECK(trace[5].rule == 1);

    CHECK(r.counts.counts[static_cast<size_t>(expr)] == std::vector<int>{1, 2});
    CHECK(r.counts.counts[static_cast<size_t>(op)] == std::vector<int>{0, 1, 0, 0});
    CHECK(r.counts.counts[static_cast<size_t>(var)] == std::vector<int>{1, 1, 0});
}

TEST_CASE("psge appends a fresh codon on exhaustion")
{
    const Grammar g = parse_grammar("<s> ::= a\n");
    StructuredRealGenotype geno{{{}}};
    Rng rng(5, "mapping");
    const MapResult r = map_psge(geno, g, 10, rng);
    CHECK(r.valid);
    CHECK(r.phenotype == "a");
    REQUIRE(geno.lists[0].size() == 1);
    CHECK(geno.lists[0][0] >= 0.0);
    CHECK(geno.lists[0][0] < 1.0);

    // a pre-filled codon is consumed instead
    StructuredRealGenotype filled{{{0.99}}};
    Rng rng2(5, "mapping");
    const MapResult r2 = map_psge(filled, g, 10, rng2);
    CHECK(r2.phenotype == "a");
    CHECK(filled.lists[0] == std::vector<double>{0.99});
}

TEST_CASE("depth limit restricts probabilistic choice to non-recursive rules")
{
    const Grammar g = parse_grammar("<s> ::= <s> a {0.9} | b {0.1}\n");
    StructuredRealGenotype geno{{{0.5, 0.5, 0.5}}};
    Rng rng(1, "mapping");
    const MapResult r = map_psge(geno, g, 2, rng);
    // two recursive picks, then the limit forces rule 1 despite codon 0.5 > 0.1
    CHECK(r.phenotype == "baa");
    CHECK(r.depth == 2);
}

TEST_CASE("non-recursive probabilities are rescaled proportionally at the limit")
{
    const Grammar g = parse_grammar("<s> ::= <s> <s> {0.5} | a {0.3} | b {0.2}\n");
    // depth 1 is the limit: rescaled intervals are a: (0, 0.6], b: (0.6, 1]
    StructuredRealGenotype left{{{0.4, 0.55, 0.7}}};
    Rng rng(2, "mapping");
    const MapResult r = map_psge(left, g, 1, rng);
    CHECK(r.phenotype == "ab");
}

TEST_CASE("all-zero non-recursive mass falls back to a uniform choice")
{
    const Grammar g = parse_grammar("<s> ::= <s> <s> {1.0} | a {0.0} | b {0.0}\n");
    StructuredRealGenotype geno{{{0.3, 0.4, 0.6}}};
    Rng rng(3, "mapping");
    const MapResult r = map_psge(geno, g, 1, rng);
    // uniform halves at the limit: 0.4 -> a, 0.6 -> b
    CHECK(r.phenotype == "ab");
}

TEST_CASE("pge maps the linear codons through the same intervals")
{
    const Grammar g = parse_grammar(kDemoPcfg);
    const MapResult r = map_pge(LinearRealGenotype{{0.19, 0.46, 0.32, 0.27, 0.87, 0.64}}, g, 10);
    CHECK(r.valid);
    CHECK(r.phenotype == "x - y");
    CHECK(r.codons_used == 6);

    const MapResult bad = map_pge(LinearRealGenotype{{0.19, 0.46}}, g, 10);
    CHECK_FALSE(bad.valid);
    CHECK(bad.phenotype.empty());
}

TEST_CASE("sge bounds and mapping")
{
    const Grammar tiny = parse_grammar("<s> ::= <s> a | b\n");
    CHECK(sge_list_sizes(tiny, 2) == std::vector<long long>{3});

    const Grammar g = parse_grammar(kDemoCfg);
    const auto sizes = sge_list_sizes(g, 2);
    CHECK(sizes == std::vector<long long>{7, 3, 4});

    StructuredIntGenotype geno;
    geno.lists = {{0, 1, 1, 0, 0, 0, 0}, {3, 0, 0}, {0, 2, 0, 0}};
    const MapResult r = map_sge(geno, g, 2);
    CHECK(r.valid);
    CHECK(r.phenotype == "x / 1.0");
}

TEST_CASE("sge depth fallback uses modulo over the non-recursive subset")
{
    const Grammar g = parse_grammar("<s> ::= <s> <s> | a | b\n");
    // sizes for depth 1: root + two children
    const auto sizes = sge_list_sizes(g, 1);
    REQUIRE(sizes == std::vector<long long>{3});
    // rule 0 at depth 0, then codons 2 and 1 at the limit: non-recursive
    // subset is {1, 2}, so 2 mod 2 -> rule 1 ('a'), 1 mod 2 -> rule 2 ('b')
    StructuredIntGenotype geno{{{0, 2, 1}}};
    const MapResult r = map_sge(geno, g, 1);
    CHECK(r.phenotype == "ab");
}

TEST_CASE("remap_individual refreshes phenotype, counts and validity")
{
    const Grammar g = parse_grammar(kDemoCfg);
    Individual ind;
    ind.genotype = LinearIntGenotype{{34, 13, 9, 151, 95, 221}};
    ind.fitness = 123.0;
    Rng rng(0, "mapping");
    remap_individual(ind, g, 10, rng);
    CHECK(ind.valid);
    CHECK(ind.phenotype == "x / 1.0");
    CHECK(ind.fitness == kWorstFitness);
    CHECK(genotype_variant(ind.genotype) == Variant::GE);
}

TEST_CASE("psge never fails and respects the depth bound")
{
    const Grammar g = parse_grammar(kDemoPcfg);
    Rng rng(11, "init");
    const int nts = g.nonterminal_count();
    for (int trial = 0; trial < 2000; ++trial) {
        const int max_depth = 1 + static_cast<int>(rng.uniform_int(6));
        Individual ind = random_psge_individual(g, max_depth, rng);
        REQUIRE(ind.valid);
        REQUIRE_FALSE(ind.phenotype.empty());
        StructuredRealGenotype geno = std::get<StructuredRealGenotype>(ind.genotype);
        Rng dummy(0, "mapping");
        const MapResult r = map_psge(geno, g, max_depth, dummy);
        REQUIRE(r.valid);
        REQUIRE(r.depth <= max_depth + nts);
    }
}

TEST_CASE("engine mappers agree with the interval-walking oracle")
{
    const char* texts[] = {
        kDemoPcfg,
        "<s> ::= <s> <s> {0.55} | <t> {0.25} | a {0.2}\n<t> ::= b {0.7} | <s> c {0.3}\n",
        "<e> ::= <e> '+' <e> {0.4} | <f> {0.35} | z {0.25}\n<f> ::= '(' <e> ')' {0.3} | w {0.7}\n",
    };
    Rng rng(21, "init");
    for (const char* text : texts) {
        const Grammar g = parse_grammar(text);
        for (int trial = 0; trial < 1000; ++trial) {
            const int max_depth = 1 + static_cast<int>(rng.uniform_int(4));

            // structured: generate with the engine (which may append), then
            // replay the finished genotype through both mappers
            Individual seed_ind = random_psge_individual(g, max_depth, rng);
            StructuredRealGenotype geno = std::get<StructuredRealGenotype>(seed_ind.genotype);
            Rng dummy(0, "mapping");
            const MapResult engine_r = map_psge(geno, g, max_depth, dummy);
            const oracle::Result oracle_r = oracle::map_structured(geno, g, max_depth);
            REQUIRE(oracle_r.valid);
            REQUIRE(engine_r.phenotype == oracle_r.phenotype);
            REQUIRE(engine_r.counts.counts == oracle_r.counts);

            // linear: random codon tape, both must agree on validity too
            LinearRealGenotype tape;
            for (int i = 0; i < 48; ++i)
                tape.codons.push_back(rng.uniform01());
            const MapResult pge_r = map_pge(tape, g, max_depth);
            const oracle::Result lin_r = oracle::map_linear(tape, g, max_depth);
            REQUIRE(pge_r.valid == lin_r.valid);
            REQUIRE(pge_r.phenotype == lin_r.phenotype);
        }
    }
}
