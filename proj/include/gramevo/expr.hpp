#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gramevo/errors.hpp"

namespace gramevo {

enum class PhenotypeKind { Arithmetic, Boolean, AntProgram };

struct ExprNode {
    enum class Op {
        Add,
        Sub,
        Mul,
        Div,
        Const,
        Var,
        And,
        Or,
        Not,
        If,
        Move,
        Left,
        Right,
        Progn2,
        Progn3,
        IfFoodAhead
    };

    Op op = Op::Const;
    double value = 0.0; // Const
    int var = -1;       // Var: index into the problem's variable list
    std::vector<ExprNode> children;
};

// Arithmetic phenotypes are infix with the usual precedence (evaluation
// semantics of the flat string, not of the derivation tree); boolean and ant
// phenotypes are nested calls like and(b0, not(b1)).
ExprNode parse_phenotype(PhenotypeKind kind, const std::string& text, const std::vector<std::string>& variables);

// a / b with |b| <= 1e-9 yields 1.0
double protected_div(double a, double b);

double eval_arithmetic(const ExprNode& n, const std::vector<double>& inputs);

bool eval_boolean_expr(const ExprNode& n, const std::vector<std::uint8_t>& bits);

} // namespace gramevo
