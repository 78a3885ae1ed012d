#include "gramevo/expr.hpp"

#include <cctype>
#include <cmath>
#include <unordered_map>

namespace gramevo {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, Comma, End } kind;
    std::string text;
    double number = 0.0;
};

std::vector<Token> lex(const std::string& text)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(text.substr(i), &used);
            } catch (const std::exception&) {
                throw MalformedPhenotype("bad number at '" + text.substr(i) + "'");
            }
            out.push_back({Token::Number, text.substr(i, used), v});
            i += used;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Ident, text.substr(i, j - i)});
            i = j;
            continue;
        }
        switch (c) {
        case '+':
            out.push_back({Token::Plus, "+"});
            break;
        case '-':
            out.push_back({Token::Minus, "-"});
            break;
        case '*':
            out.push_back({Token::Star, "*"});
            break;
        case '/':
            out.push_back({Token::Slash, "/"});
            break;
        case '(':
            out.push_back({Token::LParen, "("});
            break;
        case ')':
            out.push_back({Token::RParen, ")"});
            break;
        case ',':
            out.push_back({Token::Comma, ","});
            break;
        default:
            throw MalformedPhenotype(std::string("unexpected character '") + c + "' in phenotype");
        }
        ++i;
    }
    out.push_back({Token::End, ""});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& variables)
        : tokens_(lex(text))
    {
        for (size_t i = 0; i < variables.size(); ++i)
            vars_[variables[i]] = static_cast<int>(i);
    }

    ExprNode parse_arithmetic()
    {
        ExprNode n = sum();
        expect(Token::End);
        return n;
    }

    ExprNode parse_calls(PhenotypeKind kind)
    {
        ExprNode n = call(kind);
        expect(Token::End);
        return n;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    void expect(Token::Kind kind)
    {
        if (peek().kind != kind)
            throw MalformedPhenotype("unexpected token '" + peek().text + "' in phenotype");
        ++pos_;
    }

    ExprNode sum()
    {
        ExprNode n = product();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            const auto op = take().kind == Token::Plus ? ExprNode::Op::Add : ExprNode::Op::Sub;
            ExprNode parent;
            parent.op = op;
            parent.children.push_back(std::move(n));
            parent.children.push_back(product());
            n = std::move(parent);
        }
        return n;
    }

    ExprNode product()
    {
        ExprNode n = atom();
        while (peek().kind == Token::Star || peek().kind == Token::Slash) {
            const auto op = take().kind == Token::Star ? ExprNode::Op::Mul : ExprNode::Op::Div;
            ExprNode parent;
            parent.op = op;
            parent.children.push_back(std::move(n));
            parent.children.push_back(atom());
            n = std::move(parent);
        }
        return n;
    }

    ExprNode atom()
    {
        if (peek().kind == Token::Number) {
            ExprNode n;
            n.op = ExprNode::Op::Const;
            n.value = take().number;
            return n;
        }
        if (peek().kind == Token::Ident) {
            ExprNode n;
            n.op = ExprNode::Op::Var;
            n.var = var_index(take().text);
            return n;
        }
        if (peek().kind == Token::LParen) {
            ++pos_;
            ExprNode n = sum();
            expect(Token::RParen);
            return n;
        }
        throw MalformedPhenotype("expected value, got '" + peek().text + "'");
    }

    int var_index(const std::string& name) const
    {
        const auto it = vars_.find(name);
        if (it == vars_.end())
            throw MalformedPhenotype("unknown variable '" + name + "'");
        return it->second;
    }

    ExprNode call(PhenotypeKind kind)
    {
        if (peek().kind != Token::Ident)
            throw MalformedPhenotype("expected name, got '" + peek().text + "'");
        const std::string name = take().text;

        struct Sig {
            ExprNode::Op op;
            int arity;
        };
        static const std::unordered_map<std::string, Sig> boolean_ops = {
            {"and", {ExprNode::Op::And, 2}},
            {"or", {ExprNode::Op::Or, 2}},
            {"not", {ExprNode::Op::Not, 1}},
            {"if", {ExprNode::Op::If, 3}},
        };
        static const std::unordered_map<std::string, Sig> ant_ops = {
            {"move", {ExprNode::Op::Move, 0}},
            {"left", {ExprNode::Op::Left, 0}},
            {"right", {ExprNode::Op::Right, 0}},
            {"progn2", {ExprNode::Op::Progn2, 2}},
            {"progn3", {ExprNode::Op::Progn3, 3}},
            {"if_food_ahead", {ExprNode::Op::IfFoodAhead, 2}},
        };
        const auto& ops = kind == PhenotypeKind::Boolean ? boolean_ops : ant_ops;

        const auto it = ops.find(name);
        if (it == ops.end()) {
            if (kind == PhenotypeKind::Boolean) {
                ExprNode n;
                n.op = ExprNode::Op::Var;
                n.var = var_index(name);
                return n;
            }
            throw MalformedPhenotype("unknown action '" + name + "'");
        }

        ExprNode n;
        n.op = it->second.op;
        if (it->second.arity == 0)
            return n;
        expect(Token::LParen);
        for (int a = 0; a < it->second.arity; ++a) {
            if (a > 0)
                expect(Token::Comma);
            n.children.push_back(call(kind));
        }
        expect(Token::RParen);
        return n;
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
    std::unordered_map<std::string, int> vars_;
};

} // namespace

ExprNode parse_phenotype(PhenotypeKind kind, const std::string& text, const std::vector<std::string>& variables)
{
    Parser parser(text, variables);
    return kind == PhenotypeKind::Arithmetic ? parser.parse_arithmetic() : parser.parse_calls(kind);
}

double protected_div(double a, double b) { return std::abs(b) <= 1e-9 ? 1.0 : a / b; }

double eval_arithmetic(const ExprNode& n, const std::vector<double>& inputs)
{
    switch (n.op) {
    case ExprNode::Op::Const:
        return n.value;
    case ExprNode::Op::Var:
        return inputs[static_cast<size_t>(n.var)];
    case ExprNode::Op::Add:
        return eval_arithmetic(n.children[0], inputs) + eval_arithmetic(n.children[1], inputs);
    case ExprNode::Op::Sub:
        return eval_arithmetic(n.children[0], inputs) - eval_arithmetic(n.children[1], inputs);
    case ExprNode::Op::Mul:
        return eval_arithmetic(n.children[0], inputs) * eval_arithmetic(n.children[1], inputs);
    case ExprNode::Op::Div:
        return protected_div(eval_arithmetic(n.children[0], inputs), eval_arithmetic(n.children[1], inputs));
    default:
        throw MalformedPhenotype("non-arithmetic node in arithmetic phenotype");
    }
}

bool eval_boolean_expr(const ExprNode& n, const std::vector<std::uint8_t>& bits)
{
    switch (n.op) {
    case ExprNode::Op::Var:
        return bits[static_cast<size_t>(n.var)] != 0;
    case ExprNode::Op::And:
        return eval_boolean_expr(n.children[0], bits) && eval_boolean_expr(n.children[1], bits);
    case ExprNode::Op::Or:
        return eval_boolean_expr(n.children[0], bits) || eval_boolean_expr(n.children[1], bits);
    case ExprNode::Op::Not:
        return !eval_boolean_expr(n.children[0], bits);
    case ExprNode::Op::If:
        return eval_boolean_expr(n.children[0], bits) ? eval_boolean_expr(n.children[1], bits)
                                                      : eval_boolean_expr(n.children[2], bits);
    default:
        throw MalformedPhenotype("non-boolean node in boolean phenotype");
    }
}

} // namespace gramevo
