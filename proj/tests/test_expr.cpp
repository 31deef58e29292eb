#include "doctest.h"
#include "helpers.hpp"

using namespace arithlab;
using namespace arithlab::testing;

TEST_CASE("matrix literal") {
  const ExprAst ast = parse_expression("[[0, 1/z],[0, 0]]");
  CHECK(ast.kind == ExprKind::Matrix);
  CHECK(ast.children.size() == 2);
  const auto m = eval_matrix(ast);
  CHECK(m.rows() == 2);
  CHECK(m(0, 1) == qrf("1/z"));
}

TEST_CASE("rational-coefficient polynomial") {
  const auto f = parse_ratfunc("1/2*z^2 - 3");
  CHECK(f.is_polynomial());
  CHECK(f.num().coeff(2) == Rational(1, 2));
  CHECK(f.num().coeff(0) == -3);
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_ratfunc("-z^2") == qrf("0 - z*z"));
  CHECK(parse_ratfunc("8/4/2") == qrf("1"));
  CHECK(parse_ratfunc("5 - 2 - 1") == qrf("2"));
  CHECK(parse_ratfunc("2*z + 3*z") == qrf("5*z"));
  CHECK(parse_ratfunc("  ( z + 1 ) ^ (2)") == qrf("z^2 + 2*z + 1"));
}

TEST_CASE("syntax errors carry byte offsets") {
  try {
    parse_expression("z^(1/2)");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
    CHECK(e.expected() == "')'");
  }
  try {
    parse_expression("1 + ");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_expression("[[1, 2],[3]]"), SyntaxError);
  CHECK_THROWS_AS(parse_ratfunc("x + 1"), SyntaxError);
  CHECK_THROWS_AS(parse_ratfunc("1/(z - z)"), Error);
}

TEST_CASE("bivariate relations") {
  const auto p = parse_bivariate("X*Y^2 - Y + 1");
  REQUIRE(p.size() == 3);
  CHECK(p[0] == QPoly::constant(RationalField{}, 1));
  CHECK(p[1] == QPoly::constant(RationalField{}, -1));
  CHECK(p[2] == QPoly::variable(RationalField{}));
}

TEST_CASE("property: render(parse(t)) reparses to the same AST") {
  const std::vector<std::string> atoms = {"z", "1", "2", "13", "(z + 1)", "z^3", "-z", "(2 - z)^2"};
  const std::vector<std::string> ops = {" + ", " - ", "*", "/"};
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::string t = atoms[rng.uniform(0, atoms.size() - 1)];
    const int len = static_cast<int>(rng.uniform(1, 5));
    for (int k = 0; k < len; ++k) {
      std::string rhs = atoms[rng.uniform(0, atoms.size() - 1)];
      if (rng.coin()) rhs = "-" + rhs;
      t = rng.coin() ? t + ops[rng.uniform(0, 3)] + rhs : "(" + t + ")" + ops[rng.uniform(0, 3)] + rhs;
    }
    const ExprAst a = parse_expression(t);
    const std::string r = render_expression(a);
    CHECK_MESSAGE(parse_expression(r) == a, t << " -> " << r);
    CHECK(render_expression(parse_expression(r)) == r);
  }
  const ExprAst m = parse_expression("[[1, -z^2],[(z-1)/(z+1), 0]]");
  CHECK(parse_expression(render_expression(m)) == m);
}
