#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coefx/bracket.hpp"
#include "coefx/errors.hpp"
#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx {

enum class ExprKind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Apply };
enum class Func { Exp, Log, Theta, D };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::Num;
  Rational value;        // Num
  std::string name;      // Var
  int exponent = 0;      // Pow
  Func func = Func::Exp;  // Apply
  std::vector<ExprPtr> args;
};

inline const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Theta: return "theta";
    case Func::D: return "D";
  }
  return "?";
}

// Constructor-style rendering, e.g. Div(1, Sub(2, z)).
inline std::string to_string(const Expr& e) {
  auto bin = [&](const char* tag) { return std::string(tag) + "(" + to_string(*e.args[0]) + ", " + to_string(*e.args[1]) + ")"; };
  switch (e.kind) {
    case ExprKind::Num: return e.value.str();
    case ExprKind::Var: return e.name;
    case ExprKind::Add: return bin("Add");
    case ExprKind::Sub: return bin("Sub");
    case ExprKind::Mul: return bin("Mul");
    case ExprKind::Div: return bin("Div");
    case ExprKind::Neg: return "Neg(" + to_string(*e.args[0]) + ")";
    case ExprKind::Pow: return "Pow(" + to_string(*e.args[0]) + ", " + std::to_string(e.exponent) + ")";
    case ExprKind::Apply: return std::string("Apply(") + func_name(e.func) + ", " + to_string(*e.args[0]) + ")";
  }
  return "?";
}

// ------------------------------------------------------------------ parser

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  ExprPtr parse() {
    ExprPtr e = expr();
    if (tok_.kind != Tok::End) fail({"operator", "end of input"});
    return e;
  }

 private:
  enum class Tok { Int, Ident, Sym, End };
  struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t pos = 0;
  };

  void advance() {
    while (cur_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[cur_]))) ++cur_;
    tok_.pos = cur_;
    tok_.text.clear();
    if (cur_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = text_[cur_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Tok::Int;
      while (cur_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[cur_]))) tok_.text += text_[cur_++];
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      tok_.kind = Tok::Ident;
      while (cur_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[cur_]))) tok_.text += text_[cur_++];
    } else {
      tok_.kind = Tok::Sym;
      tok_.text = std::string(1, c);
      ++cur_;
    }
  }

  std::string describe() const {
    if (tok_.kind == Tok::End) return "end of input";
    return "'" + tok_.text + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(tok_.pos, std::move(expected), describe());
  }

  bool is_sym(char c) const { return tok_.kind == Tok::Sym && tok_.text[0] == c; }

  void expect_sym(char c) {
    if (!is_sym(c)) fail({std::string("'") + c + "'"});
    advance();
  }

  static ExprPtr node(ExprKind k, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = std::move(args);
    return e;
  }

  bool starts_atom() const {
    return tok_.kind == Tok::Int || tok_.kind == Tok::Ident || is_sym('(');
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (is_sym('+') || is_sym('-')) {
      ExprKind k = is_sym('+') ? ExprKind::Add : ExprKind::Sub;
      advance();
      lhs = node(k, {lhs, term()});
    }
    return lhs;
  }

  // Juxtaposition is multiplication, so "1/4 z" reads as (1/4)*z.
  ExprPtr term() {
    ExprPtr lhs = factor();
    while (true) {
      if (is_sym('*') || is_sym('/')) {
        ExprKind k = is_sym('*') ? ExprKind::Mul : ExprKind::Div;
        advance();
        lhs = node(k, {lhs, factor()});
      } else if (starts_atom()) {
        lhs = node(ExprKind::Mul, {lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    if (is_sym('-')) {
      advance();
      return node(ExprKind::Neg, {factor()});
    }
    ExprPtr base = atom();
    if (!is_sym('^')) return base;
    advance();
    bool paren = is_sym('(');
    if (paren) advance();
    bool negative = is_sym('-');
    if (negative) advance();
    if (tok_.kind != Tok::Int) fail({"integer exponent"});
    long value = to_int(tok_.text);
    advance();
    if (paren) expect_sym(')');
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Pow;
    e->exponent = static_cast<int>(negative ? -value : value);
    e->args = {base};
    return e;
  }

  long to_int(const std::string& digits) const {
    if (digits.size() > 9) throw ParseError(tok_.pos, {"integer below 10^9"}, "'" + digits + "'");
    return std::stol(digits);
  }

  ExprPtr atom() {
    if (tok_.kind == Tok::Int) {
      mpz_class num(tok_.text);
      advance();
      // Longest match: "p/q" is a single literal when q is a positive integer.
      if (is_sym('/')) {
        std::size_t save_cur = cur_;
        Token save_tok = tok_;
        advance();
        if (tok_.kind == Tok::Int && mpz_class(tok_.text) != 0) {
          mpz_class den(tok_.text);
          advance();
          return literal(Rational(num, den));
        }
        cur_ = save_cur;
        tok_ = save_tok;
      }
      return literal(Rational(mpq_class(num)));
    }
    if (tok_.kind == Tok::Ident) {
      std::string id = tok_.text;
      if (id == "z" || id == "w") {
        advance();
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Var;
        e->name = id;
        return e;
      }
      static const std::map<std::string, Func> funcs = {
          {"exp", Func::Exp}, {"log", Func::Log}, {"theta", Func::Theta}, {"D", Func::D}};
      auto it = funcs.find(id);
      if (it == funcs.end()) fail({"number", "variable z or w", "exp", "log", "theta", "D", "'('"});
      advance();
      expect_sym('(');
      ExprPtr arg = expr();
      expect_sym(')');
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::Apply;
      e->func = it->second;
      e->args = {arg};
      return e;
    }
    if (is_sym('(')) {
      advance();
      ExprPtr e = expr();
      expect_sym(')');
      return e;
    }
    fail({"number", "variable", "function", "'('"});
  }

  static ExprPtr literal(Rational v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Num;
    e->value = std::move(v);
    return e;
  }

  std::string_view text_;
  std::size_t cur_ = 0;
  Token tok_;
};

inline void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind == ExprKind::Var) out.insert(e.name);
  for (const auto& a : e.args) collect_variables(*a, out);
}

inline std::string single_variable(const std::set<std::string>& vars) {
  if (vars.size() > 1) throw VariableMismatch("expression mixes variables " + *vars.begin() + " and " + *vars.rbegin());
  return vars.empty() ? "z" : *vars.begin();
}

// Expands e as an L-series in var known through roughly `work`. With
// mirrored set, every occurrence of var stands for 1/var, giving F(1/x).
inline LSeries eval_node(const Expr& e, const std::string& var, int work, bool mirrored) {
  auto arg = [&](std::size_t i) { return eval_node(*e.args[i], var, work, mirrored); };
  switch (e.kind) {
    case ExprKind::Num: return LSeries::constant(var, e.value, work);
    case ExprKind::Var: return LSeries::monomial(var, Rational(1), mirrored ? -1 : 1, work);
    case ExprKind::Add: return arg(0) + arg(1);
    case ExprKind::Sub: return arg(0) - arg(1);
    case ExprKind::Mul: return arg(0) * arg(1);
    case ExprKind::Div: return div(arg(0), arg(1));
    case ExprKind::Neg: return -arg(0);
    case ExprKind::Pow: return pow(arg(0), e.exponent);
    case ExprKind::Apply: {
      LSeries a = arg(0);
      switch (e.func) {
        case Func::Exp: return exp_series(a);
        case Func::Log: return log_series(a);
        // theta_x F(x) at x = 1/u is -theta_u of F(1/u).
        case Func::Theta: return mirrored ? -theta(a) : theta(a);
        // F'(x) at x = 1/u is -u^2 d/du F(1/u).
        case Func::D: return mirrored ? -shift(derivative(a), 2) : derivative(a);
      }
    }
  }
  throw InvalidArgument("malformed expression");
}

// Calls attempt(work) with a growing working order until it succeeds.
template <class F>
auto with_widening(int start, F attempt) {
  int work = std::max(start, 1);
  for (int round = 0;; ++round) {
    try {
      if (auto r = attempt(work)) return *r;
    } catch (const InsufficientPrecision&) {
      if (round >= 6) throw;
    }
    if (round >= 6) throw InsufficientPrecision("no working order up to " + std::to_string(work) + " suffices");
    work = 2 * work + 8;
  }
}

inline void flatten_sum(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == ExprKind::Add) {
    flatten_sum(e->args[0], out);
    flatten_sum(e->args[1], out);
  } else if (e->kind == ExprKind::Sub) {
    flatten_sum(e->args[0], out);
    out.push_back(e->args[1]);
  } else {
    out.push_back(e);
  }
}

// A quantity that gets inverted inside a bracket argument must be written
// with its dominant term (as |x| grows) first: "x - 1" is accepted, "1 - x"
// is not, even though both have an expansion in descending powers. This
// keeps "1/(1-x)" from silently meaning the series of -1/x/(1-1/x).
inline void check_inverted(const ExprPtr& d, const std::string& var, int work) {
  switch (d->kind) {
    case ExprKind::Add:
    case ExprKind::Sub: {
      std::vector<ExprPtr> terms;
      flatten_sum(d, terms);
      int whole = eval_node(*d, var, work, true).valuation();
      int lead = eval_node(*terms.front(), var, work, true).valuation();
      if (lead != whole)
        throw UnsafeBracket("the inverted sum " + to_string(*d) + " does not lead with its dominant term; " +
                            "as an expansion inside a bracket it would need infinitely many positive powers");
      for (const auto& t : terms) check_inverted(t, var, work);
      break;
    }
    case ExprKind::Neg: check_inverted(d->args[0], var, work); break;
    case ExprKind::Mul:
      check_inverted(d->args[0], var, work);
      check_inverted(d->args[1], var, work);
      break;
    case ExprKind::Div: check_inverted(d->args[0], var, work); break;
    case ExprKind::Pow:
      if (d->exponent > 0) check_inverted(d->args[0], var, work);
      break;
    default: break;
  }
}

inline void check_bracket_argument(const ExprPtr& e, const std::string& var, int work) {
  if (e->kind == ExprKind::Div) check_inverted(e->args[1], var, work);
  if (e->kind == ExprKind::Pow && e->exponent < 0) check_inverted(e->args[0], var, work);
  for (const auto& a : e->args) check_bracket_argument(a, var, work);
}

}  // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string expression_variable(const Expr& e) {
  std::set<std::string> vars;
  detail::collect_variables(e, vars);
  return detail::single_variable(vars);
}

// The expansion of e through x^order, widening the internal working order
// as far as cancellations and divisions require.
inline LSeries eval_lseries(const Expr& e, int order) {
  const std::string var = expression_variable(e);
  return detail::with_widening(order, [&](int work) -> std::optional<LSeries> {
    LSeries s = detail::eval_node(e, var, work, false);
    if (s.order() < order) return std::nullopt;
    return truncate(s, order);
  });
}

inline LSeries eval_lseries(std::string_view text, int order) { return eval_lseries(*parse(text), order); }

// F(x) as an R-series, by expanding F(1/x) and mirroring. `low_order` is the
// lowest exponent that must be known.
inline RSeries eval_rseries(const ExprPtr& f, const std::string& var, int low_order) {
  try {
    detail::check_bracket_argument(f, var, std::max(-low_order, 1));
    return detail::with_widening(-low_order, [&](int work) -> std::optional<RSeries> {
      LSeries m = detail::eval_node(*f, var, work, true);
      if (m.order() < -low_order) return std::nullopt;
      return RSeries(m);
    });
  } catch (const CompositionValuationError& err) {
    throw UnsafeBracket(std::string("bracket argument has no expansion in descending powers (") + err.what() + ")");
  }
}

// [F(x)] G(x) with both operands given as expressions.
inline Rational eval_bracket(std::string_view f_text, std::string_view g_text, int order) {
  ExprPtr f = parse(f_text);
  ExprPtr g = parse(g_text);
  std::set<std::string> vars;
  detail::collect_variables(*f, vars);
  detail::collect_variables(*g, vars);
  const std::string var = detail::single_variable(vars);

  int f_low = -std::max(order, 1);
  int g_order = std::max(order, 1);
  for (int round = 0; round < 8; ++round) {
    RSeries fs = eval_rseries(f, var, f_low);
    LSeries gs = detail::with_widening(g_order, [&](int work) -> std::optional<LSeries> {
      LSeries s = detail::eval_node(*g, var, work, false);
      if (s.order() < g_order) return std::nullopt;
      return s;
    });
    bool low_ok = fs.low_order() <= gs.valuation();
    bool high_ok = gs.order() >= fs.top();
    if (low_ok && high_ok) return bracket(fs, gs);
    if (!low_ok) f_low = std::min(gs.valuation(), 2 * f_low);
    if (!high_ok) g_order = std::max(fs.top(), 2 * g_order);
  }
  throw InsufficientPrecision("bracket operands could not be resolved on a common window");
}

// ------------------------------------------------------ Laurent polynomials

using LaurentPoly = std::map<int, Rational>;

namespace detail {
inline void lp_trim(LaurentPoly& p) {
  for (auto it = p.begin(); it != p.end();) it = it->second.is_zero() ? p.erase(it) : std::next(it);
}

inline LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
  lp_trim(r);
  return r;
}

inline std::pair<int, Rational> lp_monomial(const LaurentPoly& p, const char* what) {
  if (p.size() != 1) throw InvalidArgument(std::string(what) + " must be a single monomial in a Laurent polynomial");
  return *p.begin();
}

inline LaurentPoly lp_eval(const Expr& e) {
  auto arg = [&](std::size_t i) { return lp_eval(*e.args[i]); };
  switch (e.kind) {
    case ExprKind::Num: {
      LaurentPoly p;
      if (!e.value.is_zero()) p[0] = e.value;
      return p;
    }
    case ExprKind::Var: return {{1, Rational(1)}};
    case ExprKind::Add:
    case ExprKind::Sub: {
      LaurentPoly r = arg(0);
      Rational s(e.kind == ExprKind::Add ? 1 : -1);
      for (const auto& [k, c] : arg(1)) r[k] += s * c;
      lp_trim(r);
      return r;
    }
    case ExprKind::Neg: {
      LaurentPoly r = arg(0);
      for (auto& [k, c] : r) c = -c;
      return r;
    }
    case ExprKind::Mul: return lp_mul(arg(0), arg(1));
    case ExprKind::Div: {
      auto [k, c] = lp_monomial(arg(1), "a divisor");
      LaurentPoly r;
      for (const auto& [e2, c2] : arg(0)) r[e2 - k] = c2 / c;
      return r;
    }
    case ExprKind::Pow: {
      LaurentPoly base = arg(0);
      if (e.exponent < 0) {
        auto [k, c] = lp_monomial(base, "a base raised to a negative power");
        return {{k * e.exponent, pow(c, e.exponent)}};
      }
      LaurentPoly r{{0, Rational(1)}};
      for (int i = 0; i < e.exponent; ++i) r = lp_mul(r, base);
      return r;
    }
    case ExprKind::Apply: throw InvalidArgument(std::string(func_name(e.func)) + "(...) is not a Laurent polynomial");
  }
  throw InvalidArgument("malformed expression");
}
}  // namespace detail

// Exact evaluation of an expression that denotes a Laurent polynomial.
inline LaurentPoly eval_laurent_polynomial(const Expr& e) {
  expression_variable(e);
  return detail::lp_eval(e);
}

}  // namespace coefx
