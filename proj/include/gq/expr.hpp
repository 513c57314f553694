#pragma once

// Small arithmetic expression language used by field definitions in config
// files: variables x1..xn, th1..thn, s; constants; + - * / ^(integer);
// sin, cos, exp, sqrt; literals `i` and `pi`. Supports exact symbolic
// differentiation, which keeps curvature and integrability formulas free of
// finite-difference noise when fields come from config strings.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gq/common.hpp"

namespace gq {

// Declared variable table; slot order is the binding order for eval().
class VarTable {
 public:
  // x1..xn, th1..thn, s
  static VarTable for_dimension(int n);
  explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {}
  int slot(const std::string& name) const;  // -1 if unknown
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int slot) const { return names_[slot]; }

 private:
  std::vector<std::string> names_;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ParseError : ConfigError {
  ParseError(const std::string& msg, size_t offset)
      : ConfigError(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  size_t offset;
};

struct EvalError : Error {
  using Error::Error;
};

class Expr {
 public:
  Expr() = default;
  explicit Expr(ExprPtr root) : root_(std::move(root)) {}

  static Expr parse(const std::string& text, const VarTable& vars);
  static Expr constant(Complex c);

  Complex eval(std::span<const double> env) const;
  Expr diff(int var_slot) const;
  std::string to_string() const;
  bool is_zero() const;

  const ExprPtr& root() const { return root_; }

 private:
  ExprPtr root_;
};

}  // namespace gq
