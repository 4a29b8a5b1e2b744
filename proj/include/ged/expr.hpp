#ifndef GED_EXPR_HPP
#define GED_EXPR_HPP

// Arithmetic expressions over complex coordinates, for metric entries and
// map components given as text. Evaluation is generic in the scalar type, so
// parsed expressions feed the differentiation engine like compiled rules.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'i' | variable | func '(' expr ')' | '(' expr ')' | '|' expr '|'
//   func    := exp | log | conj | abs2 | re | im
//
// Variables are z1, z2, ... (complex) or x1, x2, ... (real); |e| is only
// accepted as |e|^2.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ged/field.hpp"
#include "ged/scalar.hpp"

namespace ged {

class ExprError : public Error {
 public:
  ExprError(const std::string& msg, std::size_t pos)
      : Error("expression error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
  std::size_t position;
};

class Expr {
 public:
  enum class Op { number, variable, neg, add, sub, mul, div, ipow, pow, exp, log, conj, abs2, re, im };

  Expr() = default;

  struct VarGroup {
    char prefix;
    int count;
  };

  // Parses `text` with variables `prefix`1 .. `prefix``count`.
  static Expr parse(const std::string& text, char prefix, int count) { return parse(text, {{prefix, count}}); }

  // Several groups, e.g. {{'z', m}, {'w', m}}: variables are numbered in
  // group order, so w1 follows zm.
  static Expr parse(const std::string& text, std::vector<VarGroup> groups) {
    Parser p{text, std::move(groups)};
    Expr e;
    e.root_ = p.parse_all();
    e.text_ = text;
    return e;
  }

  const std::string& text() const { return text_; }

  template <class T>
  Cplx<T> eval(std::span<const Cplx<T>> vars) const {
    return eval_node<T>(*root_, vars);
  }

 private:
  struct Node {
    Op op = Op::number;
    std::complex<double> value;
    int index = 0;  // variable index or integer exponent
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  static NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  struct Parser {
    const std::string& s;
    std::vector<VarGroup> groups;
    std::size_t pos = 0;

    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool accept(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    void expect(char c) {
      if (!accept(c)) throw ExprError(std::string("expected '") + c + "'", pos);
    }

    NodePtr parse_all() {
      NodePtr e = expr();
      skip();
      if (pos != s.size()) throw ExprError("unexpected '" + std::string(1, s[pos]) + "'", pos);
      return e;
    }

    NodePtr expr() {
      NodePtr l = term();
      while (true) {
        if (accept('+'))
          l = make(Op::add, l, term());
        else if (accept('-'))
          l = make(Op::sub, l, term());
        else
          return l;
      }
    }

    NodePtr term() {
      NodePtr l = unary();
      while (true) {
        if (accept('*'))
          l = make(Op::mul, l, unary());
        else if (accept('/'))
          l = make(Op::div, l, unary());
        else
          return l;
      }
    }

    NodePtr unary() {
      if (accept('-')) return make(Op::neg, unary());
      if (accept('+')) return unary();
      return power();
    }

    NodePtr power() {
      NodePtr base = primary();
      if (!accept('^')) return base;
      skip();
      const std::size_t at = pos;
      NodePtr ex = unary();
      // Integer exponents (possibly negated) use repeated multiplication.
      const Node* e = ex.get();
      bool negated = false;
      if (e->op == Op::neg) {
        negated = true;
        e = e->a.get();
      }
      if (e->op == Op::number && e->value.imag() == 0.0 && std::floor(e->value.real()) == e->value.real() &&
          std::abs(e->value.real()) <= 64) {
        auto n = std::make_shared<Node>();
        n->op = Op::ipow;
        n->a = base;
        n->index = static_cast<int>(e->value.real()) * (negated ? -1 : 1);
        return n;
      }
      if (e->op != Op::number || e->value.imag() != 0.0)
        throw ExprError("exponent must be a real constant", at);
      auto n = std::make_shared<Node>();
      n->op = Op::pow;
      n->a = base;
      n->value = e->value.real() * (negated ? -1.0 : 1.0);
      return n;
    }

    NodePtr primary() {
      skip();
      if (pos >= s.size()) throw ExprError("unexpected end of expression", pos);
      const char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
      if (accept('(')) {
        NodePtr e = expr();
        expect(')');
        return e;
      }
      if (accept('|')) {
        NodePtr e = expr();
        expect('|');
        const std::size_t at = pos;
        if (!(accept('^') && accept('2'))) throw ExprError("|e| must be written as |e|^2", at);
        return make(Op::abs2, e);
      }
      if (std::isalpha(static_cast<unsigned char>(c))) return word();
      throw ExprError("unexpected '" + std::string(1, c) + "'", pos);
    }

    NodePtr number() {
      const std::size_t start = pos;
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s.substr(pos), &used);
      } catch (const std::exception&) {
        throw ExprError("malformed number", start);
      }
      pos += used;
      auto n = std::make_shared<Node>();
      n->op = Op::number;
      n->value = v;
      return n;
    }

    NodePtr word() {
      const std::size_t start = pos;
      while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
      const std::string w = s.substr(start, pos - start);
      if (w == "i") {
        auto n = std::make_shared<Node>();
        n->op = Op::number;
        n->value = {0.0, 1.0};
        return n;
      }
      static const std::pair<const char*, Op> funcs[] = {{"exp", Op::exp},   {"log", Op::log}, {"conj", Op::conj},
                                                         {"abs2", Op::abs2}, {"re", Op::re},   {"im", Op::im}};
      for (const auto& [name, op] : funcs)
        if (w == name) {
          expect('(');
          NodePtr e = expr();
          expect(')');
          return make(op, e);
        }
      int offset = 0;
      for (const auto& g : groups) {
        if (w.size() >= 2 && w[0] == g.prefix &&
            std::all_of(w.begin() + 1, w.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
          const int k = std::stoi(w.substr(1));
          if (k < 1 || k > g.count)
            throw ExprError("variable '" + w + "' out of range (1.." + std::to_string(g.count) + ")", start);
          auto n = std::make_shared<Node>();
          n->op = Op::variable;
          n->index = offset + k - 1;
          return n;
        }
        offset += g.count;
      }
      throw ExprError("unknown name '" + w + "'", start);
    }
  };

  template <class T>
  static Cplx<T> eval_node(const Node& n, std::span<const Cplx<T>> v) {
    switch (n.op) {
      case Op::number: return Cplx<T>(T(n.value.real()), T(n.value.imag()));
      case Op::variable: return v[static_cast<std::size_t>(n.index)];
      case Op::neg: return -eval_node<T>(*n.a, v);
      case Op::add: return eval_node<T>(*n.a, v) + eval_node<T>(*n.b, v);
      case Op::sub: return eval_node<T>(*n.a, v) - eval_node<T>(*n.b, v);
      case Op::mul: return eval_node<T>(*n.a, v) * eval_node<T>(*n.b, v);
      case Op::div: return eval_node<T>(*n.a, v) / eval_node<T>(*n.b, v);
      case Op::ipow: return ipow(eval_node<T>(*n.a, v), n.index);
      case Op::pow: return cpow(eval_node<T>(*n.a, v), n.value.real());
      case Op::exp: return exp(eval_node<T>(*n.a, v));
      case Op::log: return log(eval_node<T>(*n.a, v));
      case Op::conj: return conj(eval_node<T>(*n.a, v));
      case Op::abs2: return Cplx<T>(norm2(eval_node<T>(*n.a, v)), T(0.0));
      case Op::re: return Cplx<T>(eval_node<T>(*n.a, v).re, T(0.0));
      case Op::im: return Cplx<T>(eval_node<T>(*n.a, v).im, T(0.0));
    }
    return Cplx<T>(T(0.0));
  }

  NodePtr root_;
  std::string text_;
};

}  // namespace ged

#endif  // GED_EXPR_HPP
