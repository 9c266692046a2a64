#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coefx/coefx.hpp"
#include "json_io.hpp"

using nlohmann::json;

namespace {

struct Options {
  bool json = false;
  std::string expr;
  std::string f, g;
  int order = 16;
  int n = 0;
  std::string num = "1";
  std::string poles;
  int shift = 0;
  std::string inner = "0";
  std::string outer = "inf";
  int from = -5, to = 5;
  int max = 3;
  std::string probs;
  std::string method = "all";
};

void emit_series(const Options& o, const coefx::LSeries& s) {
  if (o.json)
    std::cout << coefx::io::to_json(s).dump() << "\n";
  else
    std::cout << coefx::format_series(s) << "\n";
}

void emit_rational(const Options& o, const coefx::Rational& r) {
  if (o.json)
    std::cout << coefx::io::to_json(r).dump() << "\n";
  else
    std::cout << r << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "2^1,-1/2^3,3" -> poles; a missing ^m means a simple pole.
std::vector<coefx::Pole> parse_poles(const std::string& text) {
  std::vector<coefx::Pole> out;
  for (const auto& item : split(text, ',')) {
    auto caret = item.rfind('^');
    coefx::Pole p;
    p.root = coefx::Rational::parse(item.substr(0, caret));
    if (caret != std::string::npos) {
      try {
        p.multiplicity = std::stoi(item.substr(caret + 1));
      } catch (const std::exception&) {
        throw coefx::InvalidArgument("bad multiplicity in pole '" + item + "'");
      }
    }
    out.push_back(p);
  }
  return out;
}

int run_expand_rational(const Options& o) {
  coefx::FactoredRational f;
  f.numerator = coefx::eval_laurent_polynomial(*coefx::parse(o.num));
  f.poles = parse_poles(o.poles);
  f.shift = o.shift;
  coefx::AnnulusSpec a{coefx::Rational::parse(o.inner), std::nullopt};
  if (o.outer != "inf") a.outer = coefx::Rational::parse(o.outer);
  auto e = coefx::expand_in_annulus(f, a);
  if (o.json) {
    json coeffs = json::array();
    for (int n = o.from; n <= o.to; ++n) coeffs.push_back(coefx::io::to_json(e.coefficient(n)));
    std::cout << json{{"from", o.from}, {"to", o.to}, {"coefficients", coeffs}}.dump() << "\n";
  } else {
    for (int n = o.from; n <= o.to; ++n) std::cout << n << " " << e.coefficient(n) << "\n";
  }
  return 0;
}

json values(std::initializer_list<coefx::Rational> rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back(coefx::io::to_json(r));
  return out;
}

int report(const Options& o, const std::string& name, int checked, const json& failures) {
  if (o.json) {
    std::cout << json{{"checked", checked}, {"failures", failures}}.dump() << "\n";
  } else {
    std::cout << name << ": checked " << checked << " cases over [0," << o.max << "], " << failures.size()
              << " failures\n";
    for (const auto& f : failures) std::cout << "  " << f.dump() << "\n";
  }
  return failures.empty() ? 0 : 1;
}

int run_identity(const Options& o, const std::string& which) {
  if (o.max < 0) throw coefx::InvalidArgument("--max must be >= 0");
  const int M = o.max;
  json failures = json::array();
  int checked = 0;
  if (which == "saalschutz") {
    for (int k = 0; k <= M; ++k)
      for (int l = 0; l <= M; ++l)
        for (int m = 0; m <= M; ++m)
          for (int n = 0; n <= M; ++n) {
            auto r = coefx::saalschutz(k, l, m, n);
            ++checked;
            if (!r.equal)
              failures.push_back({{"k", k}, {"l", l}, {"m", m}, {"n", n},
                                  {"values", values({r.sum_side, r.middle_line, r.product_side})}});
          }
  } else if (which == "dixon") {
    for (int l = 0; l <= M; ++l)
      for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) {
          auto r = coefx::dixon(l, m, n);
          ++checked;
          if (!r.equal)
            failures.push_back({{"l", l}, {"m", m}, {"n", n},
                                {"values", values({r.bracket_side, r.sum_side, r.closed_form})}});
        }
  } else {
    auto base = coefx::gessel_stanton_check(0, 0, {}, 0);
    ++checked;
    if (!base.equal || base.lhs != coefx::Rational(1))
      failures.push_back({{"case", "base"}, {"values", values({base.lhs, base.rhs})}});
    for (int k = 0; k <= M; ++k)
      for (int l = 0; l <= M; ++l)
        for (int m = 0; m <= M; ++m)
          for (int n = 0; n <= M; ++n) {
            auto r = coefx::gessel_stanton_check(k, l, coefx::saalschutz_kernel(m, n), std::max(k, l));
            auto expect = coefx::saalschutz(k, l, m, n).sum_side;
            ++checked;
            if (!r.equal || r.lhs != expect)
              failures.push_back({{"case", "saalschutz"}, {"k", k}, {"l", l}, {"m", m}, {"n", n},
                                  {"values", values({r.lhs, r.rhs, expect})}});
          }
    for (int l = 0; l <= M; ++l)
      for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) {
          auto r = coefx::gessel_stanton_check(l + n, m + n, coefx::dixon_kernel(l, m), std::max(l, m) + n);
          auto expect = coefx::dixon(l, m, n).closed_form;
          ++checked;
          if (!r.equal || r.lhs != expect)
            failures.push_back({{"case", "dixon"}, {"l", l}, {"m", m}, {"n", n},
                                {"values", values({r.lhs, r.rhs, expect})}});
        }
  }
  return report(o, which, checked, failures);
}

int run_coupon(const Options& o) {
  coefx::CouponProblem p;
  for (const auto& s : split(o.probs, ',')) p.probabilities.push_back(coefx::Rational::parse(s));
  p.target = o.n;
  std::vector<coefx::Rational> results;
  if (o.method == "formula" || o.method == "all") results.push_back(coefx::expected_trials_formula(p));
  if (o.method == "bracket" || o.method == "all") results.push_back(coefx::expected_trials_bracket(p));
  if (o.method == "oracle" || (o.method == "all" && p.probabilities.size() <= coefx::kMaxCouponsOracle))
    results.push_back(coefx::markov_oracle(p));
  if (results.empty()) throw coefx::InvalidArgument("unknown method '" + o.method + "'");
  bool agree = true;
  for (const auto& r : results) agree = agree && r == results.front();
  std::cout << json{{"expected", coefx::io::to_json(results.front())}, {"methods_agree", agree}}.dump() << "\n";
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact formal Laurent series and the bracket coefficient operator"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* series = app.add_subcommand("series", "Expand an expression as a Laurent series");
  series->add_option("expr", o.expr)->required();
  series->add_option("--order", o.order, "Highest exponent to report");

  auto* coeff = app.add_subcommand("coeff", "Coefficient of z^n in an expression");
  coeff->add_option("expr", o.expr)->required();
  coeff->add_option("--n", o.n)->required();
  auto* coeff_order = coeff->add_option("--order", o.order);

  auto* br = app.add_subcommand("bracket", "[F(z)] G(z) with F read in descending powers");
  br->add_option("--f", o.f)->required();
  br->add_option("--g", o.g)->required();
  br->add_option("--order", o.order, "Initial working order");

  auto* rev = app.add_subcommand("revert", "Compositional inverse of a series with valuation 1");
  rev->add_option("expr", o.expr)->required();
  rev->add_option("--order", o.order);

  auto* er = app.add_subcommand("expand-rational", "Two-sided expansion of a rational function in an annulus");
  er->add_option("--num", o.num, "Numerator Laurent polynomial");
  er->add_option("--poles", o.poles, "Comma-separated root^multiplicity list")->required();
  er->add_option("--shift", o.shift, "Overall power of z");
  er->add_option("--inner", o.inner);
  er->add_option("--outer", o.outer, "Outer radius or inf");
  er->add_option("--from", o.from);
  er->add_option("--to", o.to);

  auto* id = app.add_subcommand("identity", "Exhaustive checks of the binomial identities");
  id->require_subcommand(1);
  std::string which;
  for (const char* name : {"saalschutz", "dixon", "gessel-stanton"}) {
    auto* sub = id->add_subcommand(name);
    sub->add_option("--max", o.max, "Grid bound");
    sub->callback([&which, name] { which = name; });
  }

  auto* cp = app.add_subcommand("coupon", "Expected trials of the coupon collector");
  cp->add_option("--probs", o.probs)->required();
  cp->add_option("--n", o.n)->required();
  cp->add_option("--method", o.method)->check(CLI::IsMember({"formula", "bracket", "oracle", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*series) {
      emit_series(o, coefx::eval_lseries(o.expr, o.order));
    } else if (*coeff) {
      int order = coeff_order->count() ? o.order : std::max(o.order, o.n);
      emit_rational(o, coefx::eval_lseries(o.expr, order).coefficient(o.n));
    } else if (*br) {
      emit_rational(o, coefx::eval_bracket(o.f, o.g, o.order));
    } else if (*rev) {
      emit_series(o, coefx::revert(coefx::eval_lseries(o.expr, o.order), o.order));
    } else if (*er) {
      return run_expand_rational(o);
    } else if (*id) {
      return run_identity(o, which);
    } else if (*cp) {
      return run_coupon(o);
    }
  } catch (const coefx::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const coefx::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
