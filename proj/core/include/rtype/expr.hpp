#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rtype/germ.hpp"

namespace rtype {

/// Parse failure with 1-based source location.
struct ParseError : std::runtime_error {
  int line, column;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg) + " at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_)),
        line(line_),
        column(col_) {}
};

/// Expression tree for defining functions over moduli and log-moduli of the
/// coordinates. Coordinates appear only inside |...| or log|...| atoms.
struct ExprNode {
  enum class Kind { Const, Modulus, LogModulus, Add, Sub, Mul, Pow };
  Kind kind;
  Rational value;           // Const
  std::vector<int> coords;  // Modulus / LogModulus: 1-based indices, repetition allowed
  std::shared_ptr<const ExprNode> lhs, rhs;
  long exponent = 0;  // Pow
};

using ExprAst = std::shared_ptr<const ExprNode>;

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' INT)?
///   base   := RATIONAL | '(' expr ')' | '|' prod '|' | 'log' '|' prod '|'
///   prod   := COORD ('*' COORD)*     COORD := 'z' INT
/// RATIONAL is INT or INT '/' INT with optional sign; whitespace ignored.
/// A coordinate outside a modulus or log atom is rejected (with a dedicated
/// message), as is an index above n.
ExprAst parse_expr(const std::string& text, int n);

/// Expands an AST into the canonical monomial-sum germ. The AST must be
/// homogeneous in model: all atoms log-moduli (LOG), or all plain moduli
/// with even per-coordinate powers after expansion (MOD). The coordinate
/// count comes from the base point when given, else from `n`, else from the
/// highest index used.
Germ to_germ(const ExprAst& ast, std::vector<Complex> base_point = {}, int n = 0);
inline Germ to_germ_n(const ExprAst& ast, int n) { return to_germ(ast, {}, n); }

/// Evaluates the AST exactly. For MOD the point is given in |z_j| units
/// (compare against the germ evaluated at t_j = x_j^2); for LOG, x_j = u_j.
Rational eval_ast(const ExprAst& ast, Model model, const std::vector<Rational>& x);

}  // namespace rtype
