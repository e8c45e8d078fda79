#include <gtest/gtest.h>

#include "rtp/expr.hpp"
#include "rtp/series.hpp"

using namespace rtp;
using S = Series<Rational>;

namespace {

S geometric(std::size_t n) { return S(std::vector<Rational>(n + 1, Rational(1))); }

}  // namespace

TEST(SeriesOps, AddMulDerivative) {
  S a({1, 1, 0, 0, 0, 0});
  S b({1, -1, 0, 0, 0, 0});
  EXPECT_EQ(a * b, S({1, 0, -1, 0, 0, 0}));
  EXPECT_EQ(derivative(S({0, 0, 0, 1})), S({0, 0, 3}));
  S logs({0, 1, make_rational(1, 2), make_rational(1, 3), make_rational(1, 4)});
  EXPECT_EQ(derivative(logs), S({1, 1, 1, 1}));
}

TEST(SeriesOps, Division) {
  EXPECT_EQ(div(S::constant(1, 4), S({1, -1, 0, 0, 0})), geometric(4));
  EXPECT_EQ(div(S::t(3), S({1, -1, 0, 0})), S({0, 1, 1, 1}));
  EXPECT_THROW(div(S::t(3), S::t(3)), domain_error);

  VarList v{"q"};
  Poly q = Poly::variable("q", v);
  Series<Poly> den({Poly(1), -q, Poly(0)});
  Series<Poly> r = div(Series<Poly>::constant(Poly(1), 2), den);
  EXPECT_EQ(r[1], q);
  EXPECT_EQ(r[2], q * q);
}

TEST(SeriesOps, Compose) {
  S e = exp_t(6);
  EXPECT_EQ(compose(e, S(6)), S::constant(1, 6));
  S inner = div(S::t(3), S({1, 1, 0, 0}));
  EXPECT_EQ(compose(geometric(3), inner), S({1, 1, 0, 0}));
  S f({0, 1, 1, 0, 0, 0, 0});
  EXPECT_EQ(compose(f, revert(f)), S::t(6));
  EXPECT_THROW(compose(e, e), domain_error);
}

TEST(SeriesOps, Revert) {
  EXPECT_EQ(revert(S::t(5)), S::t(5));
  S f = div(S::t(6), S({1, -1, 0, 0, 0, 0, 0}));
  S g = div(S::t(6), S({1, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(revert(f), g);
  EXPECT_EQ(revert(revert(f)), f);
  EXPECT_THROW(revert(S({1, 1})), domain_error);
  EXPECT_THROW(revert(S({0, 0, 1})), domain_error);
}

TEST(SeriesOps, LambertCoefficients) {
  const std::size_t n = 12;
  S w = revert(S::t(n) * exp_t(n));
  for (std::size_t k = 1; k <= n; ++k) {
    Rational expected = pow_int(Rational(-static_cast<long>(k)), static_cast<unsigned>(k - 1)) / Rational(factorial(static_cast<unsigned>(k)));
    EXPECT_EQ(w[k], expected) << "k=" << k;
  }
  EXPECT_EQ(egf_coeff(w, 3), 9);
}

TEST(SeriesOps, ExpLogPow) {
  EXPECT_EQ(exp_series(S::t(3)), S({1, 1, make_rational(1, 2), make_rational(1, 6)}));
  EXPECT_EQ(log_series(S({1, 1, 0, 0})), S({0, 1, make_rational(-1, 2), make_rational(1, 3)}));
  EXPECT_EQ(pow_rational(S({1, -2, 0}), make_rational(1, 2)), S({1, -1, make_rational(-1, 2)}));
  EXPECT_THROW(log_series(S({2, 1})), domain_error);
  EXPECT_THROW(exp_series(S({1, 1})), domain_error);

  S g({1, 3, -1, 4, 0, 2, 7});
  Rational a = make_rational(2, 3), b = make_rational(-5, 4);
  EXPECT_EQ(pow_rational(g, a) * pow_rational(g, b), pow_rational(g, a + b));
  EXPECT_EQ(exp_series(log_series(g)), g);
  // d/dt log g = g'/g through order N-1
  EXPECT_EQ(derivative(log_series(g)), div(derivative(g), g.truncate(5)));
}

TEST(SeriesOps, EgfCoeff) {
  EXPECT_EQ(egf_coeff(exp_series(S::t(5)), 5), 1);
  EXPECT_EQ(egf_coeff(div(S::t(4), S({1, -1, 0, 0, 0})), 4), 24);
  EXPECT_THROW(egf_coeff(S::t(3), 4), domain_error);
}

TEST(Expr, ParsesGrammar) {
  Bindings b{{"a", ParamValue::bound(2)}, {"lambda", ParamValue::symbolic()}};
  auto s = parse_series("t/(1-t)", b, 5);
  EXPECT_EQ(to_rational_series(s), S({0, 1, 1, 1, 1, 1}));
  auto e = parse_series("exp(a*t)", b, 3);
  EXPECT_EQ(to_rational_series(e), S({1, 2, 2, make_rational(4, 3)}));
  auto r = parse_series("(1-2*t)^(1/2)", b, 2);
  EXPECT_EQ(to_rational_series(r), S({1, -1, make_rational(-1, 2)}));
  auto w = parse_series("revert(t*exp(t))", b, 3);
  EXPECT_EQ(to_rational_series(w), S({0, 1, -1, make_rational(3, 2)}));
  auto shift = parse_series("(exp(t)-1)/t", b, 3);
  EXPECT_EQ(to_rational_series(shift), S({1, make_rational(1, 2), make_rational(1, 6), make_rational(1, 24)}));
  auto inv = parse_series("(1-t)^-2", b, 3);
  EXPECT_EQ(to_rational_series(inv), S({1, 2, 3, 4}));

  auto sym = parse_series("exp(lambda*t)", b, 2);
  VarList v{"lambda"};
  Poly lam = Poly::variable("lambda", v);
  EXPECT_EQ(sym[1], lam);
  EXPECT_EQ(sym[2], lam * lam / Rational(2));
}

TEST(Expr, Errors) {
  Bindings b{{"x", ParamValue::symbolic()}};
  EXPECT_THROW(parse_series("t +", b, 3), parse_error);
  EXPECT_THROW(parse_series("y*t", b, 3), parse_error);
  EXPECT_THROW(parse_series("exp(1+t)", b, 3), domain_error);
  EXPECT_THROW(parse_series("1/x", b, 3), domain_error);
  EXPECT_THROW(parse_series("log(2+t)", b, 3), domain_error);
}
