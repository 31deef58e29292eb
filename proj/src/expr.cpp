#include "arithlab/expr.hpp"

#include <cctype>

namespace arithlab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprAst parse_top() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "expression");
    ExprAst out = peek() == '[' ? parse_matrix() : parse_expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "end of input");
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c, const char* what) {
    if (peek() != c) throw SyntaxError(pos_, what);
    ++pos_;
  }

  ExprAst parse_matrix() {
    ExprAst m{ExprKind::Matrix, {}, {}, pos_};
    expect('[', "'['");
    do {
      ExprAst row{ExprKind::Row, {}, {}, pos_};
      expect('[', "'['");
      do {
        row.children.push_back(parse_expr());
      } while (peek() == ',' && ++pos_);
      expect(']', "',' or ']'");
      if (!m.children.empty() && m.children.front().children.size() != row.children.size()) {
        throw SyntaxError(row.offset, "row of length " + std::to_string(m.children.front().children.size()));
      }
      m.children.push_back(std::move(row));
    } while (peek() == ',' && ++pos_);
    expect(']', "',' or ']'");
    return m;
  }

  ExprAst parse_expr() {
    ExprAst lhs = parse_term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      std::size_t at = pos_++;
      ExprAst rhs = parse_term();
      lhs = ExprAst{c == '+' ? ExprKind::Add : ExprKind::Sub, {}, {std::move(lhs), std::move(rhs)}, at};
    }
  }

  ExprAst parse_term() {
    ExprAst lhs = parse_unary();
    while (true) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      std::size_t at = pos_++;
      ExprAst rhs = parse_unary();
      lhs = ExprAst{c == '*' ? ExprKind::Mul : ExprKind::Div, {}, {std::move(lhs), std::move(rhs)}, at};
    }
  }

  ExprAst parse_unary() {
    if (peek() == '-') {
      std::size_t at = pos_++;
      return ExprAst{ExprKind::Neg, {}, {parse_unary()}, at};
    }
    return parse_power();
  }

  ExprAst parse_power() {
    ExprAst base = parse_primary();
    if (peek() != '^') return base;
    std::size_t at = pos_++;
    std::string digits;
    if (peek() == '(') {
      ++pos_;
      digits = parse_digits();
      expect(')', "')'");
    } else {
      digits = parse_digits();
    }
    return ExprAst{ExprKind::Pow, digits, {std::move(base)}, at};
  }

  std::string parse_digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "nonnegative integer exponent");
    return canonical_digits(s_.substr(start, pos_ - start));
  }

  static std::string canonical_digits(std::string_view d) {
    std::size_t nz = d.find_first_not_of('0');
    return nz == std::string_view::npos ? "0" : std::string(d.substr(nz));
  }

  ExprAst parse_primary() {
    char c = peek();
    std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ExprAst{ExprKind::Number, canonical_digits(s_.substr(at, pos_ - at)), {}, at};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return ExprAst{ExprKind::Variable, std::string(s_.substr(at, pos_ - at)), {}, at};
    }
    if (c == '(') {
      ++pos_;
      ExprAst inner = parse_expr();
      expect(')', "')'");
      return inner;
    }
    throw SyntaxError(pos_, "integer, identifier or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Neg: return 3;
    case ExprKind::Pow: return 4;
    default: return 5;
  }
}

std::string render_node(const ExprAst& a);

std::string render_child(const ExprAst& child, int min_prec) {
  std::string s = render_node(child);
  return precedence(child.kind) < min_prec ? "(" + s + ")" : s;
}

std::string render_node(const ExprAst& a) {
  switch (a.kind) {
    case ExprKind::Number:
    case ExprKind::Variable: return a.text;
    case ExprKind::Neg: return "-" + render_child(a.children[0], precedence(ExprKind::Neg));
    case ExprKind::Pow: return render_child(a.children[0], 5) + "^" + a.text;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      const int p = precedence(a.kind);
      const char* op = a.kind == ExprKind::Add ? " + " : a.kind == ExprKind::Sub ? " - " : a.kind == ExprKind::Mul ? "*" : "/";
      // Left association: the right operand needs strictly higher precedence.
      return render_child(a.children[0], p) + op + render_child(a.children[1], p + 1);
    }
    case ExprKind::Row:
    case ExprKind::Matrix: {
      std::string s = "[";
      for (std::size_t i = 0; i < a.children.size(); ++i) s += (i ? ", " : "") + render_node(a.children[i]);
      return s + "]";
    }
  }
  return {};
}

// Generic evaluator; Algebra supplies number/variable/+/-/*/÷/pow.
template <class Algebra>
typename Algebra::value_type evaluate(const ExprAst& a, const Algebra& alg) {
  switch (a.kind) {
    case ExprKind::Number: return alg.number(Integer(a.text));
    case ExprKind::Variable: return alg.variable(a.text, a.offset);
    case ExprKind::Neg: return alg.neg(evaluate(a.children[0], alg));
    case ExprKind::Add: return alg.add(evaluate(a.children[0], alg), evaluate(a.children[1], alg));
    case ExprKind::Sub: return alg.sub(evaluate(a.children[0], alg), evaluate(a.children[1], alg));
    case ExprKind::Mul: return alg.mul(evaluate(a.children[0], alg), evaluate(a.children[1], alg));
    case ExprKind::Div: return alg.div(evaluate(a.children[0], alg), evaluate(a.children[1], alg), a.offset);
    case ExprKind::Pow: {
      Integer e(a.text);
      if (e > 100000) throw SyntaxError(a.offset, "exponent at most 100000");
      return alg.pow(evaluate(a.children[0], alg), e.get_ui());
    }
    case ExprKind::Matrix:
    case ExprKind::Row: throw SyntaxError(a.offset, "scalar expression");
  }
  throw SyntaxError(a.offset, "expression");
}

struct RatFuncAlgebra {
  using value_type = QRatFunc;
  std::string var;
  RationalField Q;
  value_type number(const Integer& n) const { return QRatFunc::constant(Q, Rational(n)); }
  value_type variable(const std::string& name, std::size_t at) const {
    if (name != var) throw SyntaxError(at, "variable '" + var + "'");
    return QRatFunc::variable(Q);
  }
  value_type neg(const value_type& a) const { return -a; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b, std::size_t at) const {
    if (b.is_zero()) throw Error(ErrorKind::ParameterError, "division by zero at offset " + std::to_string(at));
    return a / b;
  }
  value_type pow(const value_type& a, unsigned long e) const { return a.pow(e); }
};

struct ConstantAlgebra {
  using value_type = Rational;
  value_type number(const Integer& n) const { return Rational(n); }
  value_type variable(const std::string&, std::size_t at) const { throw SyntaxError(at, "rational constant"); }
  value_type neg(const value_type& a) const { return -a; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b, std::size_t at) const {
    if (b == 0) throw Error(ErrorKind::ParameterError, "division by zero at offset " + std::to_string(at));
    return a / b;
  }
  value_type pow(const value_type& a, unsigned long e) const {
    Rational r = 1;
    for (unsigned long i = 0; i < e; ++i) r *= a;
    return r;
  }
};

struct BivariateAlgebra {
  using value_type = BivariatePoly;
  std::string xvar, yvar;
  RationalField Q;

  static value_type trimmed(value_type v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    return v;
  }
  value_type number(const Integer& n) const { return trimmed({QPoly::constant(Q, Rational(n))}); }
  value_type variable(const std::string& name, std::size_t at) const {
    if (name == xvar) return {QPoly::variable(Q)};
    if (name == yvar) return {QPoly(Q), QPoly::constant(Q, 1)};
    throw SyntaxError(at, "variable '" + xvar + "' or '" + yvar + "'");
  }
  value_type neg(const value_type& a) const {
    value_type r;
    for (const auto& c : a) r.push_back(-c);
    return r;
  }
  value_type add(const value_type& a, const value_type& b) const {
    value_type r(std::max(a.size(), b.size()), QPoly(Q));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return trimmed(std::move(r));
  }
  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }
  value_type mul(const value_type& a, const value_type& b) const {
    if (a.empty() || b.empty()) return {};
    value_type r(a.size() + b.size() - 1, QPoly(Q));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return trimmed(std::move(r));
  }
  value_type div(const value_type& a, const value_type& b, std::size_t at) const {
    if (b.size() != 1 || b[0].degree() != 0) throw SyntaxError(at, "division by a nonzero constant");
    value_type r;
    for (const auto& c : a) r.push_back(c.scaled(1 / b[0].coeff(0)));
    return r;
  }
  value_type pow(const value_type& a, unsigned long e) const {
    value_type r = number(1);
    for (unsigned long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
};

}  // namespace

ExprAst parse_expression(std::string_view text) { return Parser(text).parse_top(); }

std::string render_expression(const ExprAst& ast) { return render_node(ast); }

QRatFunc eval_ratfunc(const ExprAst& ast, const std::string& var) { return evaluate(ast, RatFuncAlgebra{var, {}}); }

Rational eval_constant(const ExprAst& ast) { return evaluate(ast, ConstantAlgebra{}); }

RfMat<RationalField> eval_matrix(const ExprAst& ast, const std::string& var) {
  if (ast.kind != ExprKind::Matrix) return RfMat<RationalField>(1, 1, std::vector<QRatFunc>{eval_ratfunc(ast, var)});
  const std::size_t rows = ast.children.size();
  const std::size_t cols = ast.children.front().children.size();
  std::vector<QRatFunc> entries;
  entries.reserve(rows * cols);
  for (const auto& row : ast.children)
    for (const auto& e : row.children) entries.push_back(eval_ratfunc(e, var));
  return RfMat<RationalField>(rows, cols, std::move(entries));
}

BivariatePoly eval_bivariate(const ExprAst& ast, const std::string& xvar, const std::string& yvar) {
  return evaluate(ast, BivariateAlgebra{xvar, yvar, {}});
}

QRatFunc parse_ratfunc(std::string_view text, const std::string& var) {
  return eval_ratfunc(parse_expression(text), var);
}

RfMat<RationalField> parse_matrix(std::string_view text, const std::string& var) {
  return eval_matrix(parse_expression(text), var);
}

BivariatePoly parse_bivariate(std::string_view text) { return eval_bivariate(parse_expression(text)); }

}  // namespace arithlab
