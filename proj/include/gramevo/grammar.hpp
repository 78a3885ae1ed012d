#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "gramevo/errors.hpp"

namespace gramevo {

enum class SymbolKind { Terminal, NonTerminal };

struct Symbol {
    std::string name;
    SymbolKind kind = SymbolKind::Terminal;

    bool is_nonterminal() const { return kind == SymbolKind::NonTerminal; }
    bool operator==(const Symbol&) const = default;
};

struct Production {
    int lhs = 0; // non-terminal id
    std::vector<Symbol> rhs;
    double probability = 0.0;
    bool is_recursive = false;
    int index = 0; // ordinal within its lhs group, file order
};

// Probabilistic context-free grammar. Value type: learning produces updated
// copies, never mutates a published grammar.
class Grammar {
public:
    int axiom() const { return axiom_; }
    int nonterminal_count() const { return static_cast<int>(nt_names_.size()); }

    const std::string& nonterminal_name(int nt) const { return nt_names_[static_cast<size_t>(nt)]; }

    // -1 when the name is not a declared non-terminal
    int nonterminal_id(const std::string& name) const
    {
        const auto it = nt_ids_.find(name);
        return it == nt_ids_.end() ? -1 : it->second;
    }

    const std::vector<Production>& rules(int nt) const { return productions_[static_cast<size_t>(nt)]; }
    int rule_count(int nt) const { return static_cast<int>(rules(nt).size()); }

    const std::vector<std::string>& terminals() const { return terminals_; }

    std::vector<double> probabilities(int nt) const
    {
        std::vector<double> out;
        for (const auto& p : rules(nt))
            out.push_back(p.probability);
        return out;
    }

    // indices of the non-recursive rules of nt, in file order
    const std::vector<int>& nonrecursive_rules(int nt) const { return nonrecursive_[static_cast<size_t>(nt)]; }

    void set_probability(int nt, int rule, double p)
    {
        productions_[static_cast<size_t>(nt)][static_cast<size_t>(rule)].probability = p;
    }

    std::string to_text() const;

    bool same_structure(const Grammar& other) const;

private:
    friend Grammar parse_grammar(const std::string&);
    friend Grammar analyze_recursion(Grammar g);

    std::vector<std::string> nt_names_; // declaration order; [0] is the axiom
    std::unordered_map<std::string, int> nt_ids_;
    std::vector<std::string> terminals_; // first-appearance order
    std::vector<std::vector<Production>> productions_;
    std::vector<std::vector<int>> nonrecursive_;
    int axiom_ = 0;
};

// Parse the BNF dialect described in the README: one `<name> ::= alt | alt`
// group per line, `|`-led continuation lines, `#` comment lines, optional
// `{weight}` suffix per alternative, quoted terminals for tokens with spaces.
Grammar parse_grammar(const std::string& text);

Grammar parse_grammar_file(const std::string& path);

// Recompute recursion flags from reachability (a rule is recursive iff its
// lhs is reachable from some non-terminal of its rhs). Idempotent.
Grammar analyze_recursion(Grammar g);

// Divide the probabilities of nt by their sum.
Grammar normalize(Grammar g, int nt);

} // namespace gramevo
