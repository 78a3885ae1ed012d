#include "gramevo/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gramevo/genotype.hpp"
#include "gramevo/rng.hpp"

namespace gramevo {

namespace {

std::string strip(const std::string& s)
{
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

bool is_identifier(const std::string& s)
{
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

AntWorld load_trail(const std::string& text)
{
    AntWorld w;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (w.cols == 0)
            w.cols = static_cast<int>(line.size());
        else if (static_cast<int>(line.size()) != w.cols)
            throw IoError("trail rows have inconsistent lengths");
        for (const char c : line) {
            if (c != '#' && c != '.')
                throw IoError(std::string("trail contains invalid character '") + c + "'");
            w.food.push_back(c == '#' ? 1 : 0);
        }
        ++w.rows;
    }
    if (w.rows == 0)
        throw IoError("trail file is empty");
    w.total_food = static_cast<int>(std::count(w.food.begin(), w.food.end(), std::uint8_t{1}));
    return w;
}

AntWorld load_trail_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open trail file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_trail(buf.str());
}

double rrse(const std::vector<double>& predictions, const std::vector<double>& targets)
{
    double mean = 0.0;
    for (const double t : targets)
        mean += t;
    mean /= static_cast<double>(targets.size());

    double num = 0.0;
    double den = 0.0;
    for (size_t i = 0; i < targets.size(); ++i) {
        const double pe = predictions[i] - targets[i];
        const double te = targets[i] - mean;
        num += pe * pe;
        den += te * te;
    }
    if (den == 0.0)
        throw DegenerateTargets("targets have zero variance");
    return std::sqrt(num / den);
}

double eval_regression(const ExprNode& tree, const Dataset& data)
{
    std::vector<double> predictions;
    predictions.reserve(data.size());
    for (const auto& inputs : data.inputs) {
        const double p = eval_arithmetic(tree, inputs);
        if (!std::isfinite(p))
            return kWorstFitness;
        predictions.push_back(p);
    }
    const double fit = rrse(predictions, data.targets);
    return std::isfinite(fit) ? fit : kWorstFitness;
}

int eval_boolean(const ExprNode& tree, const BoolTable& table)
{
    int errors = 0;
    for (size_t i = 0; i < table.cases.size(); ++i)
        if (eval_boolean_expr(tree, table.cases[i]) != (table.expected[i] != 0))
            ++errors;
    return errors;
}

namespace {

struct AntSim {
    const AntWorld& w;
    std::vector<std::uint8_t> food;
    int r = 0;
    int c = 0;
    int heading = 0; // 0 east, 1 south, 2 west, 3 north
    int steps = 0;
    int eaten = 0;

    explicit AntSim(const AntWorld& world) : w(world), food(world.food) {}

    void front(int& fr, int& fc) const
    {
        static constexpr int dr[4] = {0, 1, 0, -1};
        static constexpr int dc[4] = {1, 0, -1, 0};
        fr = (r + dr[heading] + w.rows) % w.rows;
        fc = (c + dc[heading] + w.cols) % w.cols;
    }

    void exec(const ExprNode& n)
    {
        if (steps >= w.step_limit)
            return;
        switch (n.op) {
        case ExprNode::Op::Move: {
            ++steps;
            front(r, c);
            auto& cell = food[static_cast<size_t>(r * w.cols + c)];
            if (cell) {
                cell = 0;
                ++eaten;
            }
            break;
        }
        case ExprNode::Op::Left:
            ++steps;
            heading = (heading + 3) % 4;
            break;
        case ExprNode::Op::Right:
            ++steps;
            heading = (heading + 1) % 4;
            break;
        case ExprNode::Op::Progn2:
        case ExprNode::Op::Progn3:
            for (const auto& child : n.children)
                exec(child);
            break;
        case ExprNode::Op::IfFoodAhead: {
            int fr = 0;
            int fc = 0;
            front(fr, fc);
            exec(food[static_cast<size_t>(fr * w.cols + fc)] ? n.children[0] : n.children[1]);
            break;
        }
        default:
            throw MalformedPhenotype("non-ant node in ant program");
        }
    }
};

} // namespace

int run_ant(const ExprNode& program, const AntWorld& world)
{
    AntSim sim(world);
    while (sim.steps < world.step_limit && sim.eaten < world.total_food)
        sim.exec(program);
    return world.total_food - sim.eaten;
}

Dataset make_builtin_dataset(const std::string& name)
{
    Dataset d;
    if (name == "quartic") {
        for (int i = 0; i <= 20; ++i) {
            const double x = static_cast<double>(i - 10) / 10.0;
            const double x2 = x * x;
            const double x3 = x2 * x;
            const double x4 = x3 * x;
            d.inputs.push_back({x});
            d.targets.push_back(x + x2 + x3 + x4);
        }
        return d;
    }
    if (name == "pagie") {
        for (int i = 0; i <= 25; ++i) {
            for (int j = 0; j <= 25; ++j) {
                const double x = static_cast<double>(2 * i - 25) / 5.0;
                const double y = static_cast<double>(2 * j - 25) / 5.0;
                d.inputs.push_back({x, y});
                d.targets.push_back(1.0 / (1.0 + std::pow(x, -4.0)) + 1.0 / (1.0 + std::pow(y, -4.0)));
            }
        }
        return d;
    }
    throw ConfigError("unknown builtin dataset '" + name + "'");
}

std::pair<Dataset, Dataset> load_csv_dataset(const std::string& path, const std::string& target_column,
                                             double ratio, std::uint64_t seed)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open dataset: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw EmptyDataset("dataset has no header row: " + path);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    std::vector<std::string> header;
    {
        std::istringstream h(line);
        std::string field;
        while (std::getline(h, field, ','))
            header.push_back(strip(field));
    }
    const auto target_it = std::find(header.begin(), header.end(), target_column);
    if (target_it == header.end())
        throw IoError("target column '" + target_column + "' not found in " + path);
    const size_t target_idx = static_cast<size_t>(target_it - header.begin());

    std::vector<std::vector<double>> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (strip(line).empty())
            continue;
        std::vector<double> row;
        std::istringstream r(line);
        std::string field;
        while (std::getline(r, field, ',')) {
            const std::string f = strip(field);
            try {
                size_t used = 0;
                row.push_back(std::stod(f, &used));
                if (used != f.size())
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw NonNumericField("non-numeric field '" + f + "' at line " + std::to_string(line_no));
            }
        }
        if (row.size() != header.size())
            throw IoError("line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                          " fields, expected " + std::to_string(header.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw EmptyDataset("dataset has no data rows: " + path);

    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    Rng rng(seed, "split");
    for (size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_int(i + 1)]);

    // tiny slack so that an exact product like 0.9*10 does not round up
    const auto train_n = static_cast<size_t>(std::ceil(ratio * static_cast<double>(rows.size()) - 1e-9));

    Dataset train;
    Dataset test;
    for (size_t k = 0; k < order.size(); ++k) {
        const auto& row = rows[order[k]];
        std::vector<double> inputs;
        for (size_t f = 0; f < row.size(); ++f)
            if (f != target_idx)
                inputs.push_back(row[f]);
        Dataset& dst = k < train_n ? train : test;
        dst.inputs.push_back(std::move(inputs));
        dst.targets.push_back(row[target_idx]);
    }
    return {std::move(train), std::move(test)};
}

double Problem::evaluate(const std::string& phenotype) const
{
    const ExprNode tree = parse(phenotype);
    switch (kind_) {
    case PhenotypeKind::Arithmetic:
        return eval_regression(tree, train_);
    case PhenotypeKind::Boolean:
        return static_cast<double>(eval_boolean(tree, table_));
    default:
        return static_cast<double>(run_ant(tree, world_));
    }
}

Problem Problem::quartic()
{
    Problem p;
    p.name_ = "quartic";
    p.kind_ = PhenotypeKind::Arithmetic;
    p.variables_ = {"x"};
    p.train_ = make_builtin_dataset("quartic");
    return p;
}

Problem Problem::pagie()
{
    Problem p;
    p.name_ = "pagie";
    p.kind_ = PhenotypeKind::Arithmetic;
    p.variables_ = {"x", "y"};
    p.train_ = make_builtin_dataset("pagie");
    return p;
}

Problem Problem::parity5()
{
    Problem p;
    p.name_ = "parity5";
    p.kind_ = PhenotypeKind::Boolean;
    p.variables_ = {"b0", "b1", "b2", "b3", "b4"};
    for (int v = 0; v < 32; ++v) {
        std::vector<std::uint8_t> bits(5);
        int ones = 0;
        for (int b = 0; b < 5; ++b) {
            bits[static_cast<size_t>(b)] = static_cast<std::uint8_t>((v >> (4 - b)) & 1);
            ones += (v >> b) & 1;
        }
        p.table_.cases.push_back(std::move(bits));
        p.table_.expected.push_back(static_cast<std::uint8_t>(ones % 2));
    }
    return p;
}

Problem Problem::mux11()
{
    Problem p;
    p.name_ = "mux11";
    p.kind_ = PhenotypeKind::Boolean;
    p.variables_ = {"a0", "a1", "a2", "d0", "d1", "d2", "d3", "d4", "d5", "d6", "d7"};
    for (int v = 0; v < 2048; ++v) {
        std::vector<std::uint8_t> bits(11);
        for (int b = 0; b < 11; ++b)
            bits[static_cast<size_t>(b)] = static_cast<std::uint8_t>((v >> (10 - b)) & 1);
        const int address = 4 * bits[0] + 2 * bits[1] + bits[2];
        p.table_.cases.push_back(bits);
        p.table_.expected.push_back(bits[static_cast<size_t>(3 + address)]);
    }
    return p;
}

Problem Problem::santafe(const std::string& trail_path)
{
    Problem p;
    p.name_ = "santafe";
    p.kind_ = PhenotypeKind::AntProgram;
    p.world_ = load_trail_file(trail_path);
    return p;
}

Problem Problem::csv_regression(const std::string& name, const std::string& csv_path,
                                const std::string& target_column, std::uint64_t split_seed)
{
    Problem p;
    p.name_ = name;
    p.kind_ = PhenotypeKind::Arithmetic;
    auto [train, test] = load_csv_dataset(csv_path, target_column, 0.9, split_seed);
    p.train_ = std::move(train);
    p.test_ = std::move(test);
    const size_t arity = p.train_.inputs.front().size();
    for (size_t i = 0; i < arity; ++i)
        p.variables_.push_back("x" + std::to_string(i));
    return p;
}

Problem make_problem(const std::string& name, const ProblemOptions& options)
{
    if (name == "quartic")
        return Problem::quartic();
    if (name == "pagie")
        return Problem::pagie();
    if (name == "parity5")
        return Problem::parity5();
    if (name == "mux11")
        return Problem::mux11();
    if (name == "santafe") {
        const std::string path = options.dataset_path.empty() ? "data/santafe_trail.txt" : options.dataset_path;
        return Problem::santafe(path);
    }
    if (name == "boston") {
        if (options.dataset_path.empty())
            throw ConfigError("problem 'boston' needs --dataset pointing at a CSV file");
        return Problem::csv_regression("boston", options.dataset_path, options.target_column, options.split_seed);
    }
    throw ConfigError("unknown problem '" + name + "'");
}

void check_grammar_terminals(const Problem& problem, const Grammar& g)
{
    static const std::vector<std::string> ant_words = {"move", "left", "right"};
    for (const auto& term : g.terminals()) {
        const std::string t = strip(term);
        if (!is_identifier(t))
            continue;
        const auto& allowed = problem.kind() == PhenotypeKind::AntProgram ? ant_words : problem.variables();
        if (std::find(allowed.begin(), allowed.end(), t) == allowed.end())
            throw ConfigError("grammar terminal '" + t + "' is not meaningful for problem " + problem.name());
    }
}

} // namespace gramevo
