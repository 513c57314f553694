#include "gq/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace gq {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt };

struct ExprNode {
  Op op;
  Complex value{};       // Const
  int slot = -1;         // Var
  std::string var_name;  // Var (for printing)
  int ipow = 0;          // Pow
  ExprPtr a, b;
};

namespace {

ExprPtr mk_const(Complex c) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Const;
  n->value = c;
  return n;
}

ExprPtr mk_var(int slot, std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  n->slot = slot;
  n->var_name = std::move(name);
  return n;
}

ExprPtr mk1(Op op, ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  return n;
}

ExprPtr mk2(Op op, ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_const(const ExprPtr& e, Complex c) { return e->op == Op::Const && e->value == c; }
bool is_zero(const ExprPtr& e) { return is_const(e, Complex(0, 0)); }

// Simplifying constructors, used by diff() so derivative trees stay small.
ExprPtr add(ExprPtr a, ExprPtr b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (a->op == Op::Const && b->op == Op::Const) return mk_const(a->value + b->value);
  return mk2(Op::Add, std::move(a), std::move(b));
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  if (is_zero(b)) return a;
  if (a->op == Op::Const && b->op == Op::Const) return mk_const(a->value - b->value);
  if (is_zero(a)) return mk1(Op::Neg, std::move(b));
  return mk2(Op::Sub, std::move(a), std::move(b));
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (is_zero(a) || is_zero(b)) return mk_const(0);
  if (is_const(a, Complex(1, 0))) return b;
  if (is_const(b, Complex(1, 0))) return a;
  if (a->op == Op::Const && b->op == Op::Const) return mk_const(a->value * b->value);
  return mk2(Op::Mul, std::move(a), std::move(b));
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  if (is_zero(a)) return mk_const(0);
  if (is_const(b, Complex(1, 0))) return a;
  return mk2(Op::Div, std::move(a), std::move(b));
}

ExprPtr powi(ExprPtr a, int k) {
  if (k == 0) return mk_const(1);
  if (k == 1) return a;
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Pow;
  n->a = std::move(a);
  n->ipow = k;
  return n;
}

Complex pow_int(Complex base, int k) {
  if (k < 0) return Complex(1, 0) / pow_int(base, -k);
  Complex r(1, 0);
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

class Parser {
 public:
  Parser(const std::string& text, const VarTable& vars) : text_(text), vars_(vars) {}

  ExprPtr parse() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& text_;
  const VarTable& vars_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_expr() {
    auto e = parse_term();
    for (;;) {
      if (eat('+'))
        e = mk2(Op::Add, e, parse_term());
      else if (eat('-'))
        e = mk2(Op::Sub, e, parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    auto e = parse_unary();
    for (;;) {
      if (eat('*'))
        e = mk2(Op::Mul, e, parse_unary());
      else if (eat('/'))
        e = mk2(Op::Div, e, parse_unary());
      else
        return e;
    }
  }

  ExprPtr parse_unary() {
    if (eat('-')) return mk1(Op::Neg, parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    auto e = parse_atom();
    while (eat('^')) e = powi(e, parse_int_exponent());
    return e;
  }

  int parse_int_exponent() {
    skip_ws();
    bool neg = false;
    bool paren = eat('(');
    if (eat('-')) neg = true;
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected integer exponent", start);
    int k = std::stoi(text_.substr(start, pos_ - start));
    if (paren && !eat(')')) throw ParseError("expected ')'", pos_);
    return neg ? -k : k;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = parse_expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  ExprPtr parse_number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    try {
      return mk_const(Complex(std::stod(text_.substr(start, pos_ - start)), 0));
    } catch (const std::exception&) {
      throw ParseError("malformed number", start);
    }
  }

  ExprPtr parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "pi") return mk_const(Complex(kPi, 0));
    if (name == "i") return mk_const(Complex(0, 1));
    if (peek() == '(') {
      Op op;
      if (name == "sin")
        op = Op::Sin;
      else if (name == "cos")
        op = Op::Cos;
      else if (name == "exp")
        op = Op::Exp;
      else if (name == "sqrt")
        op = Op::Sqrt;
      else
        throw ParseError("unknown function '" + name + "'", start);
      eat('(');
      auto arg = parse_expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return mk1(op, arg);
    }
    int slot = vars_.slot(name);
    if (slot < 0) throw ParseError("unknown identifier '" + name + "'", start);
    return mk_var(slot, name);
  }
};

Complex eval_node(const ExprNode* n, std::span<const double> env) {
  switch (n->op) {
    case Op::Const:
      return n->value;
    case Op::Var:
      if (n->slot >= static_cast<int>(env.size())) throw EvalError("unbound variable " + n->var_name);
      return Complex(env[n->slot], 0);
    case Op::Add:
      return eval_node(n->a.get(), env) + eval_node(n->b.get(), env);
    case Op::Sub:
      return eval_node(n->a.get(), env) - eval_node(n->b.get(), env);
    case Op::Mul:
      return eval_node(n->a.get(), env) * eval_node(n->b.get(), env);
    case Op::Div: {
      Complex d = eval_node(n->b.get(), env);
      if (d == Complex(0, 0)) throw EvalError("division by zero in " + Expr(n->b).to_string());
      return eval_node(n->a.get(), env) / d;
    }
    case Op::Pow:
      return pow_int(eval_node(n->a.get(), env), n->ipow);
    case Op::Neg:
      return -eval_node(n->a.get(), env);
    case Op::Sin:
      return std::sin(eval_node(n->a.get(), env));
    case Op::Cos:
      return std::cos(eval_node(n->a.get(), env));
    case Op::Exp:
      return std::exp(eval_node(n->a.get(), env));
    case Op::Sqrt:
      return std::sqrt(eval_node(n->a.get(), env));
  }
  throw EvalError("corrupt expression node");
}

ExprPtr diff_node(const ExprPtr& n, int var) {
  switch (n->op) {
    case Op::Const:
      return mk_const(0);
    case Op::Var:
      return mk_const(n->slot == var ? 1 : 0);
    case Op::Add:
      return add(diff_node(n->a, var), diff_node(n->b, var));
    case Op::Sub:
      return sub(diff_node(n->a, var), diff_node(n->b, var));
    case Op::Mul:
      return add(mul(diff_node(n->a, var), n->b), mul(n->a, diff_node(n->b, var)));
    case Op::Div:
      // (a/b)' = a'/b - a b'/b^2
      return sub(div(diff_node(n->a, var), n->b),
                 div(mul(n->a, diff_node(n->b, var)), powi(n->b, 2)));
    case Op::Pow:
      return mul(mul(mk_const(Complex(n->ipow, 0)), powi(n->a, n->ipow - 1)), diff_node(n->a, var));
    case Op::Neg:
      return mk1(Op::Neg, diff_node(n->a, var));
    case Op::Sin:
      return mul(mk1(Op::Cos, n->a), diff_node(n->a, var));
    case Op::Cos:
      return mk1(Op::Neg, mul(mk1(Op::Sin, n->a), diff_node(n->a, var)));
    case Op::Exp:
      return mul(mk1(Op::Exp, n->a), diff_node(n->a, var));
    case Op::Sqrt:
      return div(diff_node(n->a, var), mul(mk_const(Complex(2, 0)), mk1(Op::Sqrt, n->a)));
  }
  throw Error("corrupt expression node");
}

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_node(const ExprNode* n, std::ostringstream& out, int parent_prec) {
  int prec = precedence(n->op);
  bool paren = prec < parent_prec;
  if (paren) out << '(';
  switch (n->op) {
    case Op::Const: {
      if (n->value.imag() == 0) {
        out << n->value.real();
      } else if (n->value.real() == 0 && n->value.imag() == 1) {
        out << 'i';
      } else if (n->value.real() == 0) {
        out << n->value.imag() << "*i";
      } else {
        out << '(' << n->value.real() << '+' << n->value.imag() << "*i)";
      }
      break;
    }
    case Op::Var:
      out << n->var_name;
      break;
    case Op::Add:
      print_node(n->a.get(), out, prec);
      out << '+';
      print_node(n->b.get(), out, prec);
      break;
    case Op::Sub:
      print_node(n->a.get(), out, prec);
      out << '-';
      print_node(n->b.get(), out, prec + 1);
      break;
    case Op::Mul:
      print_node(n->a.get(), out, prec);
      out << '*';
      print_node(n->b.get(), out, prec);
      break;
    case Op::Div:
      print_node(n->a.get(), out, prec);
      out << '/';
      print_node(n->b.get(), out, prec + 1);
      break;
    case Op::Pow:
      print_node(n->a.get(), out, prec + 1);
      out << '^';
      if (n->ipow < 0)
        out << '(' << n->ipow << ')';
      else
        out << n->ipow;
      break;
    case Op::Neg:
      out << '-';
      print_node(n->a.get(), out, prec);
      break;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Sqrt: {
      const char* f = n->op == Op::Sin    ? "sin"
                      : n->op == Op::Cos  ? "cos"
                      : n->op == Op::Exp  ? "exp"
                                          : "sqrt";
      out << f << '(';
      print_node(n->a.get(), out, 0);
      out << ')';
      break;
    }
  }
  if (paren) out << ')';
}

}  // namespace

VarTable VarTable::for_dimension(int n) {
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back("x" + std::to_string(k));
  for (int k = 1; k <= n; ++k) names.push_back("th" + std::to_string(k));
  names.push_back("s");
  return VarTable(std::move(names));
}

int VarTable::slot(const std::string& name) const {
  for (size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return static_cast<int>(k);
  return -1;
}

Expr Expr::parse(const std::string& text, const VarTable& vars) {
  Parser p(text, vars);
  return Expr(p.parse());
}

Expr Expr::constant(Complex c) { return Expr(mk_const(c)); }

Complex Expr::eval(std::span<const double> env) const {
  if (!root_) throw EvalError("empty expression");
  return eval_node(root_.get(), env);
}

Expr Expr::diff(int var_slot) const {
  if (!root_) throw Error("empty expression");
  return Expr(diff_node(root_, var_slot));
}

std::string Expr::to_string() const {
  if (!root_) return "<empty>";
  std::ostringstream out;
  out.precision(17);
  print_node(root_.get(), out, 0);
  return out.str();
}

bool Expr::is_zero() const { return root_ && gq::is_zero(root_); }

}  // namespace gq
