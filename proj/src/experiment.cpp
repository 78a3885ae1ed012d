#include "gramevo/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "gramevo/mapping.hpp"

namespace gramevo {

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
}

std::string run_stem(const ExperimentConfig& config)
{
    return variant_name(config.base.variant) + "_" + config.problem;
}

} // namespace

Grammar load_experiment_grammar(const ExperimentConfig& config)
{
    const std::string path =
        config.grammar_path.empty() ? "grammars/" + config.problem + ".bnf" : config.grammar_path;
    return parse_grammar_file(path);
}

Problem build_experiment_problem(const ExperimentConfig& config, std::uint64_t run_seed)
{
    ProblemOptions options;
    options.dataset_path = config.dataset_path;
    options.target_column = config.target_column;
    options.split_seed = run_seed;
    return make_problem(config.problem, options);
}

std::string run_csv(int run_index, const std::vector<RunRecord>& records)
{
    // elapsed_ms is reported as 0 so identical invocations stay byte-identical
    std::string out = "run,generation,best_gen,best_overall,mean,invalid_count,elapsed_ms\n";
    for (const auto& r : records) {
        out += std::to_string(run_index) + "," + std::to_string(r.generation) + "," + fmt(r.best_gen) + "," +
               fmt(r.best_overall) + "," + fmt(r.mean) + "," + std::to_string(r.invalid_count) + ",0\n";
    }
    return out;
}

std::string aggregate_csv(const std::vector<std::string>& column_names,
                          const std::vector<std::vector<double>>& columns)
{
    std::string out = "generation";
    for (const auto& name : column_names)
        out += "," + name;
    out += "\n";
    const size_t generations = columns.empty() ? 0 : columns.front().size();
    for (size_t gen = 0; gen < generations; ++gen) {
        out += std::to_string(gen);
        for (const auto& col : columns)
            out += "," + fmt(col[gen]);
        out += "\n";
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, bool write_files)
{
    const Grammar grammar = load_experiment_grammar(config);
    const std::filesystem::path out_dir(config.output_dir);
    if (write_files)
        std::filesystem::create_directories(out_dir);

    ExperimentResult result;
    for (int r = 0; r < config.runs; ++r) {
        RunConfig run_config = config.base;
        run_config.seed = config.base.seed + static_cast<std::uint64_t>(r);
        const Problem problem = build_experiment_problem(config, run_config.seed);

        GenerationObserver observer;
        if (write_files && config.snapshot_grammar) {
            const auto snap_dir = out_dir / "snapshots" / (run_stem(config) + "_run" + std::to_string(r));
            std::filesystem::create_directories(snap_dir);
            observer = [snap_dir](const GenerationView& view) {
                write_file(snap_dir / ("gen" + std::to_string(view.generation) + ".bnf"),
                           view.grammar.to_text());
            };
        }

        auto records = run(run_config, grammar, problem, observer);
        if (write_files)
            write_file(out_dir / (run_stem(config) + "_run" + std::to_string(r) + ".csv"), run_csv(r, records));
        result.final_best.push_back(records.back().best_overall);
        result.per_run.push_back(std::move(records));
    }

    const size_t generations = result.per_run.front().size();
    result.mean_best.assign(generations, 0.0);
    for (const auto& records : result.per_run)
        for (size_t gen = 0; gen < generations; ++gen)
            result.mean_best[gen] += records[gen].best_overall;
    for (auto& v : result.mean_best)
        v /= static_cast<double>(config.runs);

    if (write_files)
        write_file(out_dir / (run_stem(config) + "_mean.csv"),
                   aggregate_csv({variant_name(config.base.variant)}, {result.mean_best}));
    return result;
}

int cmd_run(const ExperimentConfig& config)
{
    const ExperimentResult result = run_experiment(config);
    for (int r = 0; r < config.runs; ++r)
        std::cout << "run " << r << ": best " << fmt(result.final_best[static_cast<size_t>(r)]) << "\n";
    std::cout << "mean best " << fmt(result.mean_best.back()) << " after "
              << result.per_run.front().size() << " generations\n";
    std::cout << "wrote " << config.runs << " run files and " << run_stem(config) << "_mean.csv to "
              << config.output_dir << "\n";
    return 0;
}

int cmd_compare(const std::vector<std::string>& variants, ExperimentConfig config)
{
    if (variants.size() < 2)
        throw ConfigError("compare needs at least two variants");

    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::vector<double> finals;
    for (const auto& name : variants) {
        ExperimentConfig vc = config;
        vc.base.variant = variant_from_name(name);
        const ExperimentResult result = run_experiment(vc, false);
        names.push_back(name);
        columns.push_back(result.mean_best);
        finals.push_back(result.mean_best.back());
    }

    std::filesystem::create_directories(config.output_dir);
    const auto path = std::filesystem::path(config.output_dir) / ("compare_" + config.problem + ".csv");
    write_file(path, aggregate_csv(names, columns));

    std::cout << "final mean best fitness (" << config.problem << ", " << config.runs << " runs):\n";
    for (size_t i = 0; i < names.size(); ++i)
        std::cout << "  " << names[i] << ": " << fmt(finals[i]) << "\n";
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

namespace {

std::string genotype_to_json_text(const StructuredRealGenotype& geno, const Grammar& g)
{
    nlohmann::ordered_json j;
    for (int nt = 0; nt < g.nonterminal_count(); ++nt)
        j["<" + g.nonterminal_name(nt) + ">"] = geno.lists[static_cast<size_t>(nt)];
    return j.dump();
}

std::string rhs_text(const Production& p)
{
    std::string out;
    for (const auto& sym : p.rhs) {
        if (!out.empty())
            out += " ";
        out += sym.is_nonterminal() ? "<" + sym.name + ">" : "'" + sym.name + "'";
    }
    return out;
}

int nt_id_from_key(const Grammar& g, const std::string& key)
{
    std::string name = key;
    if (name.size() >= 2 && name.front() == '<' && name.back() == '>')
        name = name.substr(1, name.size() - 2);
    const int nt = g.nonterminal_id(name);
    if (nt < 0)
        throw ConfigError("genotype references unknown non-terminal <" + name + ">");
    return nt;
}

} // namespace

std::string cmd_map_trace(const MapRequest& request)
{
    const Grammar g = parse_grammar_file(request.grammar_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(request.genotype_literal);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("cannot parse genotype literal: ") + e.what());
    }

    MapTrace trace;
    MapResult result;
    const bool integer_codons = request.variant == Variant::GE || request.variant == Variant::SGE;
    std::string psge_genotype_after;

    switch (request.variant) {
    case Variant::GE: {
        LinearIntGenotype geno;
        geno.codons = j.get<std::vector<int>>();
        result = map_ge(geno, g, &trace);
        break;
    }
    case Variant::PGE: {
        LinearRealGenotype geno;
        geno.codons = j.get<std::vector<double>>();
        result = map_pge(geno, g, request.max_depth, &trace);
        break;
    }
    case Variant::SGE: {
        StructuredIntGenotype geno;
        geno.lists.resize(static_cast<size_t>(g.nonterminal_count()));
        for (const auto& [key, value] : j.items())
            geno.lists[static_cast<size_t>(nt_id_from_key(g, key))] = value.get<std::vector<int>>();
        result = map_sge(geno, g, request.max_depth, &trace);
        break;
    }
    case Variant::PSGE: {
        StructuredRealGenotype geno;
        geno.lists.resize(static_cast<size_t>(g.nonterminal_count()));
        for (const auto& [key, value] : j.items())
            geno.lists[static_cast<size_t>(nt_id_from_key(g, key))] = value.get<std::vector<double>>();
        Rng rng(request.seed, "mapping");
        result = map_psge(geno, g, request.max_depth, rng, &trace);
        psge_genotype_after = genotype_to_json_text(geno, g);
        break;
    }
    }

    std::string out;
    int step = 1;
    for (const auto& s : trace) {
        out += "step " + std::to_string(step++) + ": <" + g.nonterminal_name(s.nt) + "> codon ";
        out += integer_codons ? std::to_string(static_cast<long long>(s.codon)) : fmt(s.codon);
        if (s.appended)
            out += " (appended)";
        out += " -> rule " + std::to_string(s.rule) + ": " +
               rhs_text(g.rules(s.nt)[static_cast<size_t>(s.rule)]) + "\n";
    }
    out += result.valid ? "phenotype: " + result.phenotype + "\n" : "invalid: ran out of codons\n";
    if (request.variant == Variant::GE || request.variant == Variant::PGE)
        out += "codons used: " + std::to_string(result.codons_used) + "\n";
    if (!psge_genotype_after.empty())
        out += "genotype after mapping: " + psge_genotype_after + "\n";
    return out;
}

} // namespace gramevo
