#include "rtype/expr.hpp"

#include <cctype>
#include <map>

namespace rtype {

namespace {

struct Token {
  enum class Kind { Int, Slash, Plus, Minus, Star, Caret, LParen, RParen, Bar, Log, Coord, End };
  Kind kind;
  std::string text;  // Int digits; Coord index digits
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= s_.size()) return {Token::Kind::End, "", line, col};
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits += s_[pos_];
        advance();
      }
      return {Token::Kind::Int, digits, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
        word += s_[pos_];
        advance();
      }
      if (word == "log") return {Token::Kind::Log, word, line, col};
      if (word.size() >= 2 && word[0] == 'z') {
        std::string idx = word.substr(1);
        for (char d : idx)
          if (!std::isdigit(static_cast<unsigned char>(d)))
            throw ParseError("unexpected identifier '" + word + "'", line, col);
        return {Token::Kind::Coord, idx, line, col};
      }
      throw ParseError("unexpected identifier '" + word + "'", line, col);
    }
    advance();
    switch (c) {
      case '/': return {Token::Kind::Slash, "/", line, col};
      case '+': return {Token::Kind::Plus, "+", line, col};
      case '-': return {Token::Kind::Minus, "-", line, col};
      case '*': return {Token::Kind::Star, "*", line, col};
      case '^': return {Token::Kind::Caret, "^", line, col};
      case '(': return {Token::Kind::LParen, "(", line, col};
      case ')': return {Token::Kind::RParen, ")", line, col};
      case '|': return {Token::Kind::Bar, "|", line, col};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

ExprAst make_const(Rational v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Const;
  n->value = std::move(v);
  return n;
}

ExprAst make_atom(ExprNode::Kind kind, std::vector<int> coords) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->coords = std::move(coords);
  return n;
}

ExprAst make_binary(ExprNode::Kind kind, ExprAst a, ExprAst b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

ExprAst make_pow(ExprAst a, long e) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Pow;
  n->lhs = std::move(a);
  n->exponent = e;
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, int n) : lex_(text), n_(n) { cur_ = lex_.next(); }

  ExprAst parse() {
    ExprAst e = expr();
    expect(Token::Kind::End, "end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line, cur_.col); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.col);
  }

  void bump() { cur_ = lex_.next(); }

  void expect(Token::Kind k, const std::string& what) {
    if (cur_.kind != k) fail("expected " + what);
    bump();
  }

  ExprAst expr() {
    ExprAst acc = term();
    while (cur_.kind == Token::Kind::Plus || cur_.kind == Token::Kind::Minus) {
      auto kind = cur_.kind == Token::Kind::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
      bump();
      acc = make_binary(kind, acc, term());
    }
    return acc;
  }

  ExprAst term() {
    ExprAst acc = factor();
    while (cur_.kind == Token::Kind::Star) {
      bump();
      acc = make_binary(ExprNode::Kind::Mul, acc, factor());
    }
    return acc;
  }

  ExprAst factor() {
    ExprAst b = base();
    if (cur_.kind == Token::Kind::Caret) {
      bump();
      if (cur_.kind != Token::Kind::Int) fail("expected integer exponent after '^'");
      long e = std::stol(cur_.text);
      bump();
      return make_pow(b, e);
    }
    return b;
  }

  ExprAst base() {
    switch (cur_.kind) {
      case Token::Kind::Plus:
      case Token::Kind::Minus:
      case Token::Kind::Int:
        return rational_literal();
      case Token::Kind::LParen: {
        bump();
        ExprAst e = expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Bar: {
        bump();
        auto coords = coord_product();
        expect(Token::Kind::Bar, "closing '|'");
        return make_atom(ExprNode::Kind::Modulus, std::move(coords));
      }
      case Token::Kind::Log: {
        bump();
        expect(Token::Kind::Bar, "'|' after log");
        auto coords = coord_product();
        expect(Token::Kind::Bar, "closing '|'");
        return make_atom(ExprNode::Kind::LogModulus, std::move(coords));
      }
      case Token::Kind::Coord:
        fail("z" + cur_.text + " used outside |.| or log|.|");
      default:
        fail("expected a rational, '(', '|', or log");
    }
  }

  ExprAst rational_literal() {
    bool neg = false;
    while (cur_.kind == Token::Kind::Plus || cur_.kind == Token::Kind::Minus) {
      if (cur_.kind == Token::Kind::Minus) neg = !neg;
      bump();
    }
    if (cur_.kind != Token::Kind::Int) fail("expected integer");
    std::string num = cur_.text;
    bump();
    std::string den;
    if (cur_.kind == Token::Kind::Slash) {
      bump();
      if (cur_.kind != Token::Kind::Int) fail("expected denominator after '/'");
      den = cur_.text;
      bump();
    }
    Rational v = Rational::parse(den.empty() ? num : num + "/" + den);
    return make_const(neg ? -v : v);
  }

  std::vector<int> coord_product() {
    std::vector<int> coords;
    coords.push_back(coord());
    while (cur_.kind == Token::Kind::Star) {
      bump();
      coords.push_back(coord());
    }
    return coords;
  }

  int coord() {
    if (cur_.kind != Token::Kind::Coord) fail("expected a coordinate z<k>");
    Token t = cur_;
    int idx = std::stoi(t.text);
    if (idx < 1 || idx > n_)
      fail_at(t, "unknown coordinate z" + t.text + " (n = " + std::to_string(n_) + ")");
    bump();
    return idx;
  }

  Lexer lex_;
  Token cur_;
  int n_;
};

// ---------------------------------------------------------------------------
// Expansion into the canonical monomial sum.

// Polynomial over |z_j|-exponents (MOD, exponents in |z|-units) or
// u_j-exponents (LOG). The zero exponent vector carries the constant.
using Poly = std::map<Expo, Rational>;

void poly_add(Poly& a, const Poly& b, const Rational& scale) {
  for (const auto& [e, c] : b) {
    Rational v = a.count(e) ? a[e] + c * scale : c * scale;
    if (v.is_zero())
      a.erase(e);
    else
      a[e] = v;
  }
}

Poly poly_mul(const Poly& a, const Poly& b, int n) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Expo e(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) e[static_cast<size_t>(j)] = ea[static_cast<size_t>(j)] + eb[static_cast<size_t>(j)];
      Rational v = ca * cb;
      auto it = r.find(e);
      if (it == r.end()) {
        if (!v.is_zero()) r.emplace(std::move(e), std::move(v));
      } else {
        it->second += v;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

Poly poly_pow(Poly base, long e, int n) {
  Poly acc{{Expo(static_cast<size_t>(n)), Rational(1)}};
  while (e) {
    if (e & 1) acc = poly_mul(acc, base, n);
    base = poly_mul(base, base, n);
    e >>= 1;
  }
  return acc;
}

struct Expansion {
  Poly poly;
  bool has_mod = false;
  bool has_log = false;
};

int infer_n(const ExprAst& ast) {
  int n = 0;
  if (!ast) return n;
  for (int c : ast->coords) n = std::max(n, c);
  if (ast->lhs) n = std::max(n, infer_n(ast->lhs));
  if (ast->rhs) n = std::max(n, infer_n(ast->rhs));
  return n;
}

Expansion expand(const ExprAst& ast, int n) {
  Expansion out;
  switch (ast->kind) {
    case ExprNode::Kind::Const:
      if (!ast->value.is_zero()) out.poly[Expo(static_cast<size_t>(n))] = ast->value;
      return out;
    case ExprNode::Kind::Modulus: {
      out.has_mod = true;
      Expo e(static_cast<size_t>(n));
      for (int c : ast->coords) e[static_cast<size_t>(c - 1)] += 1;
      out.poly[e] = Rational(1);
      return out;
    }
    case ExprNode::Kind::LogModulus: {
      out.has_log = true;
      for (int c : ast->coords) {
        Expo e(static_cast<size_t>(n));
        e[static_cast<size_t>(c - 1)] += 1;
        poly_add(out.poly, Poly{{e, Rational(1)}}, Rational(1));
      }
      return out;
    }
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: {
      Expansion a = expand(ast->lhs, n), b = expand(ast->rhs, n);
      out = std::move(a);
      poly_add(out.poly, b.poly, Rational(ast->kind == ExprNode::Kind::Add ? 1 : -1));
      out.has_mod |= b.has_mod;
      out.has_log |= b.has_log;
      return out;
    }
    case ExprNode::Kind::Mul: {
      Expansion a = expand(ast->lhs, n), b = expand(ast->rhs, n);
      out.poly = poly_mul(a.poly, b.poly, n);
      out.has_mod = a.has_mod || b.has_mod;
      out.has_log = a.has_log || b.has_log;
      return out;
    }
    case ExprNode::Kind::Pow: {
      Expansion a = expand(ast->lhs, n);
      out.poly = poly_pow(a.poly, ast->exponent, n);
      out.has_mod = a.has_mod;
      out.has_log = a.has_log;
      return out;
    }
  }
  throw DomainError("unreachable expression kind");
}

}  // namespace

ExprAst parse_expr(const std::string& text, int n) {
  if (text.empty()) throw ParseError("empty expression", 1, 1);
  return Parser(text, n).parse();
}

Germ to_germ(const ExprAst& ast, std::vector<Complex> base_point, int n_hint) {
  int n = base_point.empty() ? std::max(n_hint, infer_n(ast))
                             : static_cast<int>(base_point.size());
  Expansion ex = expand(ast, n);
  if (ex.has_mod && ex.has_log)
    throw DomainError("mixed-model expression: modulus and log atoms cannot be combined");
  if (!ex.has_mod && !ex.has_log)
    throw DomainError("expression contains no coordinate atoms");
  Germ g;
  g.model = ex.has_log ? Model::LOG : Model::MOD;
  g.n = n;
  g.base_point = std::move(base_point);
  Expo zero(static_cast<size_t>(n));
  for (const auto& [e, c] : ex.poly) {
    if (e == zero) {
      g.constant = c;
      continue;
    }
    if (g.model == Model::MOD) {
      Expo half(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) {
        int ej = e[static_cast<size_t>(j)];
        if (ej % 2 != 0)
          throw DomainError("odd modulus power |z" + std::to_string(j + 1) +
                            "|^" + std::to_string(ej) + " is not smooth in t");
        half[static_cast<size_t>(j)] = ej / 2;
      }
      g.support[half] = c;
    } else {
      g.support[e] = c;
    }
  }
  return g;
}

Rational eval_ast(const ExprAst& ast, Model model, const std::vector<Rational>& x) {
  switch (ast->kind) {
    case ExprNode::Kind::Const:
      return ast->value;
    case ExprNode::Kind::Modulus: {
      // x carries |z_j| values here, so the atom is a plain product.
      if (model != Model::MOD) throw DomainError("modulus atom in log-model evaluation");
      Rational acc(1);
      for (int c : ast->coords) acc *= x[static_cast<size_t>(c - 1)];
      return acc;
    }
    case ExprNode::Kind::LogModulus: {
      if (model != Model::LOG) throw DomainError("log atom in modulus-model evaluation");
      Rational acc(0);
      for (int c : ast->coords) acc += x[static_cast<size_t>(c - 1)];
      return acc;
    }
    case ExprNode::Kind::Add:
      return eval_ast(ast->lhs, model, x) + eval_ast(ast->rhs, model, x);
    case ExprNode::Kind::Sub:
      return eval_ast(ast->lhs, model, x) - eval_ast(ast->rhs, model, x);
    case ExprNode::Kind::Mul:
      return eval_ast(ast->lhs, model, x) * eval_ast(ast->rhs, model, x);
    case ExprNode::Kind::Pow:
      return eval_ast(ast->lhs, model, x).pow(ast->exponent);
  }
  throw DomainError("unreachable expression kind");
}

}  // namespace rtype
