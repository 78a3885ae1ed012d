#include "gramevo/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace gramevo {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string strip(const std::string& s)
{
    size_t b = 0;
    size_t e = s.size();
    while (b < e && is_space(s[b]))
        ++b;
    while (e > b && is_space(s[e - 1]))
        --e;
    return s.substr(b, e - b);
}

// Split alternatives on '|', honoring single-quoted terminals.
std::vector<std::string> split_alternatives(const std::string& rhs)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (const char c : rhs) {
        if (c == '\'')
            quoted = !quoted;
        if (c == '|' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct RawToken {
    std::string text;
    enum { Terminal, NonTerminal, Weight } kind;
};

std::vector<RawToken> tokenize_alternative(const std::string& alt)
{
    std::vector<RawToken> out;
    size_t i = 0;
    while (i < alt.size()) {
        if (is_space(alt[i])) {
            ++i;
            continue;
        }
        if (alt[i] == '\'') {
            const size_t close = alt.find('\'', i + 1);
            if (close == std::string::npos)
                throw ParseError("unterminated quoted terminal in: " + alt);
            out.push_back({alt.substr(i + 1, close - i - 1), RawToken::Terminal});
            i = close + 1;
        } else if (alt[i] == '<') {
            const size_t close = alt.find('>', i + 1);
            if (close == std::string::npos)
                throw ParseError("unterminated non-terminal in: " + alt);
            const std::string name = alt.substr(i + 1, close - i - 1);
            if (name.empty())
                throw ParseError("empty non-terminal name in: " + alt);
            out.push_back({name, RawToken::NonTerminal});
            i = close + 1;
        } else if (alt[i] == '{') {
            const size_t close = alt.find('}', i + 1);
            if (close == std::string::npos)
                throw ParseError("unterminated weight in: " + alt);
            out.push_back({strip(alt.substr(i + 1, close - i - 1)), RawToken::Weight});
            i = close + 1;
        } else {
            size_t j = i;
            while (j < alt.size() && !is_space(alt[j]) && alt[j] != '{' && alt[j] != '\'' && alt[j] != '<')
                ++j;
            out.push_back({alt.substr(i, j - i), RawToken::Terminal});
            i = j;
        }
    }
    return out;
}

struct RawAlternative {
    std::vector<Symbol> rhs_named; // kinds resolved later against declarations
    std::optional<double> weight;
};

RawAlternative parse_alternative(const std::string& alt)
{
    RawAlternative out;
    const auto tokens = tokenize_alternative(alt);
    for (size_t t = 0; t < tokens.size(); ++t) {
        const auto& tok = tokens[t];
        if (tok.kind == RawToken::Weight) {
            if (t + 1 != tokens.size())
                throw ParseError("weight must be the last token of an alternative: " + alt);
            try {
                size_t used = 0;
                out.weight = std::stod(tok.text, &used);
                if (used != tok.text.size())
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("malformed weight '" + tok.text + "' in: " + alt);
            }
        } else {
            out.rhs_named.push_back(
                {tok.text, tok.kind == RawToken::NonTerminal ? SymbolKind::NonTerminal : SymbolKind::Terminal});
        }
    }
    if (out.rhs_named.empty())
        throw ParseError("empty alternative in: '" + alt + "'");
    return out;
}

std::string format_weight(double p)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

bool needs_quoting(const std::string& term)
{
    if (term.empty())
        return true;
    for (const char c : term)
        if (is_space(c) || c == '|' || c == '{' || c == '}' || c == '#' || c == '<' || c == '>' || c == '\'')
            return true;
    return false;
}

} // namespace

Grammar parse_grammar(const std::string& text)
{
    struct Group {
        std::string lhs;
        std::string rhs_text;
    };
    std::vector<Group> groups;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const std::string body = strip(line);
        if (body.empty() || body[0] == '#')
            continue;
        if (body[0] == '|') {
            if (groups.empty())
                throw ParseError("continuation line before any rule: " + line);
            groups.back().rhs_text += " | " + strip(body.substr(1));
            continue;
        }
        const size_t def = body.find("::=");
        if (def == std::string::npos)
            throw ParseError("expected '::=' in rule line: " + line);
        const std::string lhs = strip(body.substr(0, def));
        if (lhs.size() < 3 || lhs.front() != '<' || lhs.back() != '>')
            throw ParseError("left-hand side must be a <non-terminal>: " + line);
        groups.push_back({lhs.substr(1, lhs.size() - 2), strip(body.substr(def + 3))});
    }
    if (groups.empty())
        throw ParseError("grammar contains no rules");

    Grammar g;
    for (const auto& grp : groups) {
        if (g.nt_ids_.count(grp.lhs))
            throw ParseError("duplicate declaration of <" + grp.lhs + ">");
        g.nt_ids_[grp.lhs] = static_cast<int>(g.nt_names_.size());
        g.nt_names_.push_back(grp.lhs);
    }
    g.axiom_ = 0;

    std::unordered_map<std::string, bool> seen_terminal;
    g.productions_.resize(g.nt_names_.size());
    for (const auto& grp : groups) {
        const int lhs = g.nt_ids_.at(grp.lhs);
        std::vector<RawAlternative> alts;
        for (const auto& alt_text : split_alternatives(grp.rhs_text))
            alts.push_back(parse_alternative(alt_text));

        const size_t weighted = static_cast<size_t>(
            std::count_if(alts.begin(), alts.end(), [](const RawAlternative& a) { return a.weight.has_value(); }));
        if (weighted != 0 && weighted != alts.size())
            throw ParseError("<" + grp.lhs + ">: either all alternatives carry a {weight} or none do");

        std::vector<double> probs;
        if (weighted == 0) {
            probs.assign(alts.size(), 1.0 / static_cast<double>(alts.size()));
        } else {
            double sum = 0.0;
            for (const auto& a : alts) {
                if (*a.weight < 0.0)
                    throw BadProbabilities("<" + grp.lhs + ">: negative weight");
                sum += *a.weight;
            }
            if (std::abs(sum - 1.0) > 1e-6)
                throw BadProbabilities("<" + grp.lhs + ">: weights sum to " + format_weight(sum) + ", expected 1");
            for (const auto& a : alts)
                probs.push_back(*a.weight / sum);
        }

        for (size_t i = 0; i < alts.size(); ++i) {
            Production p;
            p.lhs = lhs;
            p.index = static_cast<int>(i);
            p.probability = probs[i];
            for (const auto& sym : alts[i].rhs_named) {
                if (sym.is_nonterminal()) {
                    if (!g.nt_ids_.count(sym.name))
                        throw UndeclaredSymbol("undeclared non-terminal <" + sym.name + ">");
                } else {
                    if (g.nt_ids_.count(sym.name))
                        throw ParseError("terminal '" + sym.name + "' collides with a non-terminal name");
                    if (!seen_terminal.count(sym.name)) {
                        seen_terminal[sym.name] = true;
                        g.terminals_.push_back(sym.name);
                    }
                }
                p.rhs.push_back(sym);
            }
            g.productions_[static_cast<size_t>(lhs)].push_back(std::move(p));
        }
    }

    g = analyze_recursion(std::move(g));
    for (int nt = 0; nt < g.nonterminal_count(); ++nt)
        if (g.nonrecursive_rules(nt).empty())
            throw NoNonRecursiveRule("<" + g.nonterminal_name(nt) + "> has no non-recursive rule");
    return g;
}

Grammar parse_grammar_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open grammar file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grammar(buf.str());
}

Grammar analyze_recursion(Grammar g)
{
    const size_t n = g.nt_names_.size();
    // reach[a][b]: b appears in a sentential form derivable from a
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (size_t a = 0; a < n; ++a)
        for (const auto& p : g.productions_[a])
            for (const auto& sym : p.rhs)
                if (sym.is_nonterminal())
                    reach[a][static_cast<size_t>(g.nt_ids_.at(sym.name))] = true;
    for (size_t k = 0; k < n; ++k)
        for (size_t a = 0; a < n; ++a)
            if (reach[a][k])
                for (size_t b = 0; b < n; ++b)
                    if (reach[k][b])
                        reach[a][b] = true;

    g.nonrecursive_.assign(n, {});
    for (size_t a = 0; a < n; ++a) {
        for (auto& p : g.productions_[a]) {
            p.is_recursive = false;
            for (const auto& sym : p.rhs) {
                if (!sym.is_nonterminal())
                    continue;
                const size_t b = static_cast<size_t>(g.nt_ids_.at(sym.name));
                if (b == a || reach[b][a]) {
                    p.is_recursive = true;
                    break;
                }
            }
            if (!p.is_recursive)
                g.nonrecursive_[a].push_back(p.index);
        }
    }
    return g;
}

Grammar normalize(Grammar g, int nt)
{
    double sum = 0.0;
    for (const auto& p : g.rules(nt))
        sum += p.probability;
    if (sum <= 0.0)
        throw DegenerateDistribution("<" + g.nonterminal_name(nt) + ">: probabilities sum to zero");
    for (int rule = 0; rule < g.rule_count(nt); ++rule)
        g.set_probability(nt, rule, g.rules(nt)[static_cast<size_t>(rule)].probability / sum);
    return g;
}

std::string Grammar::to_text() const
{
    std::string out;
    for (int nt = 0; nt < nonterminal_count(); ++nt) {
        out += "<" + nonterminal_name(nt) + "> ::= ";
        const auto& prods = rules(nt);
        for (size_t i = 0; i < prods.size(); ++i) {
            if (i > 0)
                out += " | ";
            for (const auto& sym : prods[i].rhs) {
                if (sym.is_nonterminal())
                    out += "<" + sym.name + "> ";
                else if (needs_quoting(sym.name))
                    out += "'" + sym.name + "' ";
                else
                    out += sym.name + " ";
            }
            out += "{" + format_weight(prods[i].probability) + "}";
        }
        out += "\n";
    }
    return out;
}

bool Grammar::same_structure(const Grammar& other) const
{
    if (nt_names_ != other.nt_names_)
        return false;
    for (size_t nt = 0; nt < nt_names_.size(); ++nt) {
        const auto& a = productions_[nt];
        const auto& b = other.productions_[nt];
        if (a.size() != b.size())
            return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].rhs != b[i].rhs)
                return false;
    }
    return true;
}

} // namespace gramevo
