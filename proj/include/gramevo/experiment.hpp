#pragma once

#include <string>
#include <vector>

#include "gramevo/engine.hpp"

namespace gramevo {

struct ExperimentConfig {
    RunConfig base;
    std::string problem = "quartic";
    std::string grammar_path;  // empty: grammars/<problem>.bnf
    std::string dataset_path;  // CSV (boston) or trail file (santafe)
    std::string target_column = "target";
    int runs = 1;
    std::string output_dir = ".";
    bool snapshot_grammar = false;
};

struct ExperimentResult {
    std::vector<std::vector<RunRecord>> per_run;
    std::vector<double> mean_best; // mean frozen best-overall per generation
    std::vector<double> final_best; // last-generation best-overall per run
};

Grammar load_experiment_grammar(const ExperimentConfig& config);
Problem build_experiment_problem(const ExperimentConfig& config, std::uint64_t run_seed);

std::string run_csv(int run_index, const std::vector<RunRecord>& records);
std::string aggregate_csv(const std::vector<std::string>& column_names,
                          const std::vector<std::vector<double>>& columns);

// R seeded runs (seed, seed+1, ...); writes one CSV per run plus the
// aggregate mean-best CSV when write_files is set
ExperimentResult run_experiment(const ExperimentConfig& config, bool write_files = true);

int cmd_run(const ExperimentConfig& config);
int cmd_compare(const std::vector<std::string>& variants, ExperimentConfig config);

struct MapRequest {
    Variant variant = Variant::PSGE;
    std::string grammar_path;
    std::string genotype_literal; // JSON: array for ge/pge, object for sge/psge
    int max_depth = 10;
    std::uint64_t seed = 0;
};

std::string cmd_map_trace(const MapRequest& request);

} // namespace gramevo
