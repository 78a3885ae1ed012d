#include <doctest.h>

#include <string>
#include <vector>

#include "gramevo/errors.hpp"
#include "gramevo/expr.hpp"

using namespace gramevo;

namespace {

double evalx(const std::string& text, double x)
{
    const ExprNode n = parse_phenotype(PhenotypeKind::Arithmetic, text, {"x"});
    return eval_arithmetic(n, {x});
}

bool evalb(const std::string& text, std::vector<std::uint8_t> bits)
{
    const ExprNode n = parse_phenotype(PhenotypeKind::Boolean, text, {"b0", "b1", "b2"});
    return eval_boolean_expr(n, bits);
}

} // namespace

TEST_CASE("infix arithmetic uses the usual precedence")
{
    CHECK(evalx("x + x * x", 2.0) == 6.0);
    CHECK(evalx("x * x + x", 2.0) == 6.0);
    CHECK(evalx("(x + 1.0) * x", 3.0) == 12.0);
    CHECK(evalx("x + x * x + x * x * x", 2.0) == 14.0);
}

TEST_CASE("same-precedence chains associate left")
{
    CHECK(evalx("8.0 - 4.0 - 2.0", 0.0) == 2.0);
    CHECK(evalx("16.0 / 4.0 / 2.0", 0.0) == 2.0);
    CHECK(evalx("8.0 - 4.0 + 1.0", 0.0) == 5.0);
}

TEST_CASE("whitespace is irrelevant")
{
    CHECK(evalx("x+x*x", 3.0) == evalx("x + x * x", 3.0));
    CHECK(evalx("  x  ", 7.0) == 7.0);
}

TEST_CASE("number forms")
{
    CHECK(evalx("1.0", 0.0) == 1.0);
    CHECK(evalx(".5 + 2", 0.0) == 2.5);
    CHECK(evalx("2.5e2", 0.0) == 250.0);
}

TEST_CASE("division is protected")
{
    CHECK(protected_div(4.0, 2.0) == 2.0);
    CHECK(protected_div(1.0, 0.0) == 1.0);
    CHECK(protected_div(0.0, 0.0) == 1.0);
    CHECK(protected_div(5.0, 1e-10) == 1.0);
    CHECK(protected_div(5.0, -1e-10) == 1.0);
    CHECK(protected_div(5.0, 2e-9) == doctest::Approx(2.5e9));

    CHECK(evalx("x / 0.0", 42.0) == 1.0);
    CHECK(evalx("1.0 / (x - x)", 9.0) == 1.0);
}

TEST_CASE("arithmetic rejects malformed text")
{
    CHECK_THROWS_AS(evalx("", 0.0), MalformedPhenotype);
    CHECK_THROWS_AS(evalx("x +", 0.0), MalformedPhenotype);
    CHECK_THROWS_AS(evalx("x x", 0.0), MalformedPhenotype);
    CHECK_THROWS_AS(evalx("(x", 0.0), MalformedPhenotype);
    CHECK_THROWS_AS(evalx("x % x", 0.0), MalformedPhenotype);
    CHECK_THROWS_AS(evalx("-x", 0.0), MalformedPhenotype); // no unary minus
    CHECK_THROWS_AS(evalx("y", 0.0), MalformedPhenotype);  // unknown variable
    CHECK_THROWS_AS(evalx("and(x, x)", 0.0), MalformedPhenotype);
}

TEST_CASE("boolean connectives")
{
    CHECK(evalb("b0", {1, 0, 0}));
    CHECK_FALSE(evalb("b0", {0, 1, 1}));
    CHECK(evalb("and(b0, not(b1))", {1, 0, 0}));
    CHECK_FALSE(evalb("and(b0, not(b1))", {1, 1, 0}));
    CHECK(evalb("or(b0, b1)", {0, 1, 0}));
    CHECK_FALSE(evalb("or(b0, b1)", {0, 0, 1}));
    CHECK(evalb("if(b0, b1, b2)", {1, 1, 0}));
    CHECK_FALSE(evalb("if(b0, b1, b2)", {1, 0, 1}));
    CHECK(evalb("if(b0, b1, b2)", {0, 0, 1}));
    CHECK(evalb("not(and(b0, or(b1, b2)))", {1, 0, 0}));
}

TEST_CASE("boolean arity and vocabulary are enforced")
{
    CHECK_THROWS_AS(evalb("not(b0, b1)", {0, 0, 0}), MalformedPhenotype);
    CHECK_THROWS_AS(evalb("and(b0)", {0, 0, 0}), MalformedPhenotype);
    CHECK_THROWS_AS(evalb("xor(b0, b1)", {0, 0, 0}), MalformedPhenotype);
    CHECK_THROWS_AS(evalb("b7", {0, 0, 0}), MalformedPhenotype);
    CHECK_THROWS_AS(evalb("and(b0, )", {0, 0, 0}), MalformedPhenotype);
}

TEST_CASE("ant programs parse into action trees")
{
    const std::vector<std::string> none;
    const ExprNode move = parse_phenotype(PhenotypeKind::AntProgram, "move", none);
    CHECK(move.op == ExprNode::Op::Move);
    CHECK(move.children.empty());

    const ExprNode prog =
        parse_phenotype(PhenotypeKind::AntProgram, "if_food_ahead(move, progn2(left, right))", none);
    CHECK(prog.op == ExprNode::Op::IfFoodAhead);
    REQUIRE(prog.children.size() == 2);
    CHECK(prog.children[0].op == ExprNode::Op::Move);
    CHECK(prog.children[1].op == ExprNode::Op::Progn2);
    REQUIRE(prog.children[1].children.size() == 2);
    CHECK(prog.children[1].children[0].op == ExprNode::Op::Left);
    CHECK(prog.children[1].children[1].op == ExprNode::Op::Right);

    const ExprNode three = parse_phenotype(PhenotypeKind::AntProgram, "progn3(move, left, move)", none);
    CHECK(three.op == ExprNode::Op::Progn3);
    CHECK(three.children.size() == 3);
}

TEST_CASE("ant vocabulary is enforced")
{
    const std::vector<std::string> none;
    CHECK_THROWS_AS(parse_phenotype(PhenotypeKind::AntProgram, "jump", none), MalformedPhenotype);
    CHECK_THROWS_AS(parse_phenotype(PhenotypeKind::AntProgram, "progn2(move)", none), MalformedPhenotype);
    CHECK_THROWS_AS(parse_phenotype(PhenotypeKind::AntProgram, "progn2(1.0, move)", none), MalformedPhenotype);
    CHECK_THROWS_AS(parse_phenotype(PhenotypeKind::AntProgram, "move left", none), MalformedPhenotype);
}

TEST_CASE("evaluators reject foreign nodes")
{
    ExprNode constant;
    constant.op = ExprNode::Op::Const;
    constant.value = 1.0;
    CHECK_THROWS_AS(eval_boolean_expr(constant, {}), MalformedPhenotype);

    ExprNode move;
    move.op = ExprNode::Op::Move;
    CHECK_THROWS_AS(eval_arithmetic(move, {}), MalformedPhenotype);
}
