#include <cstdint>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gramevo/engine.hpp"
#include "gramevo/genotype.hpp"
#include "gramevo/grammar.hpp"
#include "gramevo/learning.hpp"
#include "gramevo/mapping.hpp"
#include "gramevo/problems.hpp"
#include "gramevo/rng.hpp"

namespace py = pybind11;
using namespace gramevo;

namespace {

int nt_id_checked(const Grammar& g, const std::string& name)
{
    const int id = g.nonterminal_id(name);
    if (id < 0)
        throw UndeclaredSymbol("unknown non-terminal <" + name + ">");
    return id;
}

py::dict result_dict(const MapResult& result)
{
    py::dict d;
    d["phenotype"] = result.phenotype;
    d["valid"] = result.valid;
    d["codons_used"] = result.codons_used;
    d["depth"] = result.depth;
    d["counts"] = result.counts.counts;
    return d;
}

py::dict map_genotype(const std::string& variant_name, const Grammar& g, const py::object& genotype,
                      int max_depth, std::uint64_t seed)
{
    const Variant variant = variant_from_name(variant_name);
    py::dict out;
    switch (variant) {
    case Variant::GE: {
        LinearIntGenotype geno{genotype.cast<std::vector<int>>()};
        out = result_dict(map_ge(geno, g));
        out["genotype"] = geno.codons;
        break;
    }
    case Variant::PGE: {
        LinearRealGenotype geno{genotype.cast<std::vector<double>>()};
        out = result_dict(map_pge(geno, g, max_depth));
        out["genotype"] = geno.codons;
        break;
    }
    case Variant::SGE: {
        StructuredIntGenotype geno{genotype.cast<std::vector<std::vector<int>>>()};
        out = result_dict(map_sge(geno, g, max_depth));
        out["genotype"] = geno.lists;
        break;
    }
    case Variant::PSGE: {
        StructuredRealGenotype geno{genotype.cast<std::vector<std::vector<double>>>()};
        Rng rng(seed, "mapping");
        out = result_dict(map_psge(geno, g, max_depth, rng));
        out["genotype"] = geno.lists; // includes codons appended during mapping
        break;
    }
    }
    return out;
}

Grammar update_probabilities_py(const Grammar& g, const std::vector<std::vector<int>>& counts, double lambda)
{
    ExpansionCounts ec = ExpansionCounts::zero(g);
    if (counts.size() != ec.counts.size())
        throw ConfigError("counts must have one list per non-terminal");
    for (size_t nt = 0; nt < counts.size(); ++nt) {
        if (counts[nt].size() != ec.counts[nt].size())
            throw ConfigError("counts[" + std::to_string(nt) + "] must have one entry per rule");
        ec.counts[nt] = counts[nt];
    }
    return update_probabilities(g, ec, lambda);
}

py::dict evolve(const std::string& variant, const Grammar& g, const std::string& problem_name,
                int population, int generations, int elitism, double mutation_rate, double crossover_rate,
                int tournament, int max_depth, int genotype_size, double lambda, bool learning,
                std::uint64_t seed, const std::string& dataset, const std::string& target_col)
{
    RunConfig config;
    config.variant = variant_from_name(variant);
    config.population_size = population;
    config.generations = generations;
    config.elitism_count = elitism;
    config.mutation_rate = mutation_rate;
    config.crossover_rate = crossover_rate;
    config.tournament_size = tournament;
    config.max_depth = max_depth;
    config.genotype_size = genotype_size;
    config.learning.lambda = lambda;
    config.learning.enabled = learning;
    config.seed = seed;

    ProblemOptions options;
    options.dataset_path = dataset;
    options.target_column = target_col;
    options.split_seed = seed;
    const Problem problem = make_problem(problem_name, options);
    check_grammar_terminals(problem, g);

    std::string best_phenotype;
    double best_fitness = kWorstFitness;
    std::string final_grammar;
    const auto records = run(config, g, problem, [&](const GenerationView& view) {
        if (view.best_overall) {
            best_phenotype = view.best_overall->phenotype;
            best_fitness = view.best_overall->fitness;
        }
        final_grammar = view.grammar.to_text();
    });

    py::list rows;
    for (const auto& r : records) {
        py::dict row;
        row["generation"] = r.generation;
        row["best_gen"] = r.best_gen;
        row["best_overall"] = r.best_overall;
        row["mean"] = r.mean;
        row["invalid_count"] = r.invalid_count;
        rows.append(row);
    }
    py::dict out;
    out["records"] = rows;
    out["best_phenotype"] = best_phenotype;
    out["best_fitness"] = best_fitness;
    out["final_grammar"] = final_grammar;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "grammar-guided genetic programming: GE, PGE, SGE and PSGE";

    py::register_exception<Error>(m, "GramevoError");

    py::class_<Grammar>(m, "Grammar")
        .def("__str__", &Grammar::to_text)
        .def_property_readonly("axiom", [](const Grammar& g) { return g.nonterminal_name(g.axiom()); })
        .def_property_readonly("nonterminals",
                               [](const Grammar& g) {
                                   std::vector<std::string> names;
                                   for (int nt = 0; nt < g.nonterminal_count(); ++nt)
                                       names.push_back(g.nonterminal_name(nt));
                                   return names;
                               })
        .def_property_readonly("terminals", &Grammar::terminals)
        .def("rule_count",
             [](const Grammar& g, const std::string& nt) { return g.rule_count(nt_id_checked(g, nt)); })
        .def("probabilities",
             [](const Grammar& g, const std::string& nt) { return g.probabilities(nt_id_checked(g, nt)); })
        .def("same_structure", &Grammar::same_structure);

    m.def("parse_grammar", &parse_grammar, py::arg("text"), "Parse a BNF grammar from a string.");
    m.def("parse_grammar_file", &parse_grammar_file, py::arg("path"), "Parse a BNF grammar file.");

    m.def("map_genotype", &map_genotype, py::arg("variant"), py::arg("grammar"), py::arg("genotype"),
          py::arg("max_depth") = 10, py::arg("seed") = 0,
          "Map a genotype to a phenotype. Returns phenotype, validity, usage counts and the\n"
          "genotype after mapping (PSGE may append codons).");

    m.def("update_probabilities", &update_probabilities_py, py::arg("grammar"), py::arg("counts"),
          py::arg("lambda_"),
          "Shift grammar probabilities toward the given per-rule usage counts.");

    m.def("evolve", &evolve, py::arg("variant"), py::arg("grammar"), py::arg("problem"),
          py::arg("population") = 200, py::arg("generations") = 20, py::arg("elitism") = 20,
          py::arg("mutation_rate") = 0.05, py::arg("crossover_rate") = 0.9, py::arg("tournament") = 3,
          py::arg("max_depth") = 10, py::arg("genotype_size") = 128, py::arg("lambda_") = 0.01,
          py::arg("learning") = true, py::arg("seed") = 0, py::arg("dataset") = std::string(),
          py::arg("target_col") = std::string("target"),
          "Run one evolutionary search and return its per-generation statistics.");
}
