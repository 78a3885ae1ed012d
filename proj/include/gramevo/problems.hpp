#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gramevo/expr.hpp"
#include "gramevo/grammar.hpp"

namespace gramevo {

struct Dataset {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;

    size_t size() const { return targets.size(); }
};

struct BoolTable {
    std::vector<std::vector<std::uint8_t>> cases;
    std::vector<std::uint8_t> expected;
};

struct AntWorld {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> food; // row-major, toroidal
    int step_limit = 600;
    int total_food = 0;

    bool food_at(int r, int c) const { return food[static_cast<size_t>(r * cols + c)] != 0; }
};

// '#' food, '.' empty, rectangular; the ant starts at (0,0) facing east
AntWorld load_trail(const std::string& text);
AntWorld load_trail_file(const std::string& path);

// sqrt(sum((p-t)^2) / sum((t-mean)^2)); 0 for a perfect predictor, 1 for the
// mean predictor
double rrse(const std::vector<double>& predictions, const std::vector<double>& targets);

double eval_regression(const ExprNode& tree, const Dataset& data);

int eval_boolean(const ExprNode& tree, const BoolTable& table);

// executes the program repeatedly until the step budget is spent or the trail
// is cleared; returns the number of pellets left
int run_ant(const ExprNode& program, const AntWorld& world);

Dataset make_builtin_dataset(const std::string& name); // quartic | pagie

// header row, numeric fields; deterministic seeded shuffle, then
// ceil(ratio*n) rows become the train split
std::pair<Dataset, Dataset> load_csv_dataset(const std::string& path, const std::string& target_column,
                                             double ratio, std::uint64_t seed);

class Problem {
public:
    const std::string& name() const { return name_; }
    PhenotypeKind kind() const { return kind_; }
    const std::vector<std::string>& variables() const { return variables_; }

    const Dataset& train() const { return train_; }
    const Dataset& test() const { return test_; }
    const BoolTable& table() const { return table_; }
    const AntWorld& world() const { return world_; }

    ExprNode parse(const std::string& phenotype) const { return parse_phenotype(kind_, phenotype, variables_); }

    double evaluate(const std::string& phenotype) const;

    static Problem quartic();
    static Problem pagie();
    static Problem parity5();
    static Problem mux11();
    static Problem santafe(const std::string& trail_path);
    static Problem csv_regression(const std::string& name, const std::string& csv_path,
                                  const std::string& target_column, std::uint64_t split_seed);

private:
    std::string name_;
    PhenotypeKind kind_ = PhenotypeKind::Arithmetic;
    std::vector<std::string> variables_;
    Dataset train_;
    Dataset test_;
    BoolTable table_;
    AntWorld world_;
};

struct ProblemOptions {
    std::string dataset_path;  // CSV for csv-backed regression, trail file for the ant
    std::string target_column = "target";
    std::uint64_t split_seed = 0;
};

// quartic | pagie | boston | parity5 | mux11 | santafe
Problem make_problem(const std::string& name, const ProblemOptions& options);

// Reject grammars whose bare-identifier terminals the problem cannot
// interpret (wrong variable set, wrong action set).
void check_grammar_terminals(const Problem& problem, const Grammar& g);

} // namespace gramevo
