#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gramevo/experiment.hpp"

namespace {

struct CommonFlags {
    gramevo::ExperimentConfig cfg;
    std::string variant = "psge";
    bool no_learning = false;
};

void add_run_options(CLI::App* cmd, CommonFlags& flags)
{
    auto& cfg = flags.cfg;
    cmd->add_option("--problem", cfg.problem, "quartic | pagie | boston | parity5 | mux11 | santafe");
    cmd->add_option("--grammar", cfg.grammar_path, "grammar file (default grammars/<problem>.bnf)");
    cmd->add_option("--runs", cfg.runs, "independent runs, seeded seed, seed+1, ...")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.base.seed, "master seed of the first run");
    cmd->add_option("--generations", cfg.base.generations, "generations per run");
    cmd->add_option("--population", cfg.base.population_size, "population size");
    cmd->add_option("--elitism", cfg.base.elitism_count, "individuals copied unchanged");
    cmd->add_option("--mutation-rate", cfg.base.mutation_rate, "per-codon mutation probability");
    cmd->add_option("--crossover-rate", cfg.base.crossover_rate, "crossover probability");
    cmd->add_option("--tournament", cfg.base.tournament_size, "tournament size");
    cmd->add_option("--max-depth", cfg.base.max_depth, "derivation depth limit (structured variants)");
    cmd->add_option("--genotype-size", cfg.base.genotype_size, "codon count (linear variants)");
    cmd->add_option("--lambda", cfg.base.learning.lambda, "learning factor");
    cmd->add_flag("--no-learning", flags.no_learning, "freeze grammar probabilities");
    cmd->add_option("--dataset", cfg.dataset_path, "CSV file (boston) or trail file (santafe)");
    cmd->add_option("--target-col", cfg.target_column, "target column name for CSV datasets");
    cmd->add_option("--output", cfg.output_dir, "output directory (default $GRAMEVO_OUTPUT_DIR or .)");
    cmd->add_flag("--snapshot-grammar", cfg.snapshot_grammar, "dump the grammar every generation");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gramevo: grammar-guided genetic programming (GE, PGE, SGE, PSGE)"};
    app.require_subcommand(1);

    CommonFlags flags;
    if (const char* env_out = std::getenv("GRAMEVO_OUTPUT_DIR"))
        flags.cfg.output_dir = env_out;

    CLI::App* cmd_run = app.add_subcommand("run", "evolve one variant, write per-run and aggregate CSVs");
    cmd_run->add_option("--variant", flags.variant, "ge | pge | sge | psge");
    add_run_options(cmd_run, flags);

    std::vector<std::string> compare_variants;
    CLI::App* cmd_compare = app.add_subcommand("compare", "run several variants with matched seeds");
    cmd_compare->add_option("--variants", compare_variants, "comma-separated variant list")
        ->required()
        ->delimiter(',');
    add_run_options(cmd_compare, flags);

    gramevo::MapRequest map_request;
    std::string map_variant = "psge";
    CLI::App* cmd_map = app.add_subcommand("map", "print the derivation trace of one genotype");
    cmd_map->add_option("--variant", map_variant, "ge | pge | sge | psge");
    cmd_map->add_option("--grammar", map_request.grammar_path, "grammar file")->required();
    cmd_map->add_option("--genotype", map_request.genotype_literal,
                        "JSON: array for ge/pge, object of per-non-terminal lists for sge/psge")
        ->required();
    cmd_map->add_option("--max-depth", map_request.max_depth, "derivation depth limit");
    cmd_map->add_option("--seed", map_request.seed, "seed for appended codons (psge)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_map->parsed()) {
            map_request.variant = gramevo::variant_from_name(map_variant);
            std::cout << gramevo::cmd_map_trace(map_request);
            return 0;
        }
        flags.cfg.base.learning.enabled = !flags.no_learning;
        if (cmd_compare->parsed())
            return gramevo::cmd_compare(compare_variants, flags.cfg);
        flags.cfg.base.variant = gramevo::variant_from_name(flags.variant);
        return gramevo::cmd_run(flags.cfg);
    } catch (const gramevo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
