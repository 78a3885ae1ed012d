#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "gramevo/grammar.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = GRAMEVO_CLI_BIN;
const std::string kRoot = GRAMEVO_SOURCE_DIR;

int run_cmd(const std::string& args, std::string* output = nullptr)
{
    const fs::path out_file = fs::temp_directory_path() / "gramevo_cli_out.txt";
    const std::string cmd = kCli + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        *output = buf.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int count_lines(const std::string& text)
{
    int n = 0;
    for (const char c : text)
        n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("run writes one csv per run plus the aggregate")
{
    const fs::path dir = fresh_dir("gramevo_cli_run");
    const std::string args = "run --variant ge --problem quartic --grammar " + kRoot +
                             "/grammars/quartic.bnf --runs 2 --seed 5 --generations 3 --population 20 "
                             "--elitism 2 --output " + dir.string();
    std::string out;
    REQUIRE(run_cmd(args, &out) == 0);
    CHECK(out.find("mean best") != std::string::npos);

    const std::string run0 = slurp(dir / "ge_quartic_run0.csv");
    CHECK(slurp(dir / "ge_quartic_run1.csv") != run0);

    std::istringstream lines(run0);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "run,generation,best_gen,best_overall,mean,invalid_count,elapsed_ms");
    CHECK(count_lines(run0) == 4); // header + one row per generation
    std::string row;
    while (std::getline(lines, row)) {
        CHECK(row.rfind("0,", 0) == 0);                       // run index column
        CHECK(row.rfind(",0") == row.size() - 2);             // elapsed pinned to 0
    }

    const std::string mean = slurp(dir / "ge_quartic_mean.csv");
    CHECK(mean.rfind("generation,ge\n", 0) == 0);
    CHECK(count_lines(mean) == 4);

    // identical invocations reproduce the files byte for byte
    const fs::path again = fresh_dir("gramevo_cli_run_again");
    const std::string rerun = "run --variant ge --problem quartic --grammar " + kRoot +
                              "/grammars/quartic.bnf --runs 2 --seed 5 --generations 3 --population 20 "
                              "--elitism 2 --output " + again.string();
    REQUIRE(run_cmd(rerun) == 0);
    CHECK(slurp(again / "ge_quartic_run0.csv") == run0);
}

TEST_CASE("errors surface as a nonzero exit and a message")
{
    std::string out;
    CHECK(run_cmd("", &out) != 0);

    CHECK(run_cmd("run --problem nope --generations 1 --population 5 --elitism 1", &out) != 0);
    CHECK(out.find("error") != std::string::npos);

    CHECK(run_cmd("run --variant bogus --problem quartic", &out) != 0);

    const std::string bad_grammar = "run --problem quartic --grammar /nonexistent.bnf "
                                    "--generations 1 --population 5 --elitism 1";
    CHECK(run_cmd(bad_grammar, &out) != 0);
    CHECK(out.find("error") != std::string::npos);

    // elitism must stay below the population size
    CHECK(run_cmd("run --problem quartic --grammar " + kRoot + "/grammars/quartic.bnf "
                  "--generations 1 --population 5 --elitism 5", &out) != 0);
}

TEST_CASE("compare sweeps variants into one table")
{
    const fs::path dir = fresh_dir("gramevo_cli_compare");
    const std::string args = "compare --variants psge,ge --problem quartic --grammar " + kRoot +
                             "/grammars/quartic.bnf --runs 2 --seed 3 --generations 3 --population 16 "
                             "--elitism 2 --output " + dir.string();
    std::string out;
    REQUIRE(run_cmd(args, &out) == 0);
    CHECK(out.find("psge:") != std::string::npos);
    CHECK(out.find("ge:") != std::string::npos);

    const std::string table = slurp(dir / "compare_quartic.csv");
    CHECK(table.rfind("generation,psge,ge\n", 0) == 0);
    CHECK(count_lines(table) == 4);
}

TEST_CASE("map traces a ge derivation")
{
    std::string out;
    const std::string args = "map --variant ge --grammar " + kRoot + "/grammars/pagie.bnf "
                             "--genotype '[34, 13, 9, 151, 95, 221, 23, 98, 145, 42, 153]'";
    REQUIRE(run_cmd(args, &out) == 0);
    CHECK(out.find("phenotype: x / 1.0") != std::string::npos);
    CHECK(out.find("codons used: 6") != std::string::npos);
    CHECK(out.find("step 1: <expr> codon 34 -> rule 0") != std::string::npos);
    CHECK(out.find("rule 3: ' / '") != std::string::npos);
}

TEST_CASE("map traces a psge derivation with the codon lists")
{
    const fs::path grammar = fs::temp_directory_path() / "gramevo_demo_pcfg.bnf";
    std::ofstream(grammar) << "<expr> ::= <expr> <op> <expr> {0.37} | <var> {0.63}\n"
                              "<op> ::= ' + ' {0.22} | ' - ' {0.17} | ' * ' {0.29} | ' / ' {0.32}\n"
                              "<var> ::= x {0.41} | y {0.26} | 1.0 {0.33}\n";

    std::string out;
    const std::string args = "map --variant psge --grammar " + grammar.string() +
                             " --genotype '{\"<expr>\": [0.19, 0.46, 0.87], \"<op>\": [0.27], "
                             "\"<var>\": [0.32, 0.64]}'";
    REQUIRE(run_cmd(args, &out) == 0);
    CHECK(out.find("phenotype: x - y") != std::string::npos);
    CHECK(out.find("(appended)") == std::string::npos);
    CHECK(out.find("genotype after mapping: {\"<expr>\":[0.19,0.46,0.87],\"<op>\":[0.27],\"<var>\":[0.32,0.64]}")
          != std::string::npos);

    // an empty list forces an appended codon, and the trace says so
    const std::string append_args = "map --variant psge --grammar " + grammar.string() +
                                    " --genotype '{}' --seed 9";
    REQUIRE(run_cmd(append_args, &out) == 0);
    CHECK(out.find("(appended)") != std::string::npos);
    CHECK(out.find("phenotype: ") != std::string::npos);

    CHECK(run_cmd("map --variant psge --grammar " + grammar.string() + " --genotype '{\"<nope>\": [0.1]}'") != 0);
    CHECK(run_cmd("map --variant ge --grammar " + grammar.string() + " --genotype 'not json'") != 0);
}

TEST_CASE("the ant problem takes its trail from --dataset")
{
    const fs::path dir = fresh_dir("gramevo_cli_ant");
    const std::string args = "run --variant psge --problem santafe --grammar " + kRoot +
                             "/grammars/santafe.bnf --dataset " + kRoot + "/data/santafe_trail.txt "
                             "--runs 1 --seed 2 --generations 2 --population 10 --elitism 1 --output " +
                             dir.string();
    REQUIRE(run_cmd(args) == 0);
    CHECK(fs::exists(dir / "psge_santafe_run0.csv"));
}

TEST_CASE("snapshot flag writes the grammar per generation")
{
    const fs::path dir = fresh_dir("gramevo_cli_snap");
    const std::string args = "run --variant psge --problem quartic --grammar " + kRoot +
                             "/grammars/quartic.bnf --runs 1 --seed 4 --generations 2 --population 10 "
                             "--elitism 1 --lambda 0.5 --snapshot-grammar --output " + dir.string();
    REQUIRE(run_cmd(args) == 0);

    const fs::path snaps = dir / "snapshots" / "psge_quartic_run0";
    REQUIRE(fs::exists(snaps / "gen0.bnf"));
    REQUIRE(fs::exists(snaps / "gen1.bnf"));

    const gramevo::Grammar original = gramevo::parse_grammar_file(kRoot + "/grammars/quartic.bnf");
    const gramevo::Grammar gen0 = gramevo::parse_grammar_file((snaps / "gen0.bnf").string());
    CHECK(gen0.same_structure(original));
    CHECK(gen0.probabilities(0) == original.probabilities(0));

    const gramevo::Grammar gen1 = gramevo::parse_grammar_file((snaps / "gen1.bnf").string());
    CHECK(gen1.same_structure(original));
    CHECK(gen1.probabilities(0) != original.probabilities(0)); // lambda 0.5 moved it
}

TEST_CASE("the output directory env var is honored")
{
    const fs::path dir = fresh_dir("gramevo_cli_env");
    const std::string cmd = "GRAMEVO_OUTPUT_DIR=" + dir.string() + " " + kCli +
                            " run --variant sge --problem quartic --grammar " + kRoot +
                            "/grammars/quartic.bnf --runs 1 --seed 1 --generations 2 --population 10 "
                            "--elitism 1 --max-depth 4 > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "sge_quartic_run0.csv"));
    CHECK(fs::exists(dir / "sge_quartic_mean.csv"));
}
