#include <gtest/gtest.h>

#include "rtp/expr.hpp"
#include "rtp/riordan.hpp"

using namespace rtp;
using S = Series<Rational>;
using ERA = ExpRiordan<Rational>;

namespace {

S series(const std::string& text, std::size_t n, const Bindings& b = {}) {
  return to_rational_series(parse_series(text, b, n));
}

}  // namespace

TEST(Riordan, PascalAndIdentity) {
  ERA pascal(exp_t(6), S::t(6));
  auto p = pascal.triangle();
  for (std::size_t n = 0; n <= 6; ++n)
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(p(n, k), Rational(binomial(n, k)));
  ERA id(S::constant(1, 5), S::t(5));
  EXPECT_EQ(id.triangle(), RationalMatrix::identity(6));
}

TEST(Riordan, BesselSecondKindEntry) {
  ERA b(S::constant(1, 6), series("t + t^2/2", 6));
  EXPECT_EQ(b.triangle()(4, 2), 3);
  EXPECT_EQ(b.triangle()(4, 3), 6);
}

TEST(Riordan, RowPolys) {
  ERA lah(S::constant(1, 4), series("t/(1-t)", 4));
  auto rows = row_polys(lah.triangle());
  VarList v{"q"};
  Poly q = Poly::variable("q", v);
  EXPECT_EQ(rows[0], Poly(1).with_vars(v));
  EXPECT_EQ(rows[3], q * Rational(6) + q * q * Rational(6) + q.pow(3));
  ERA lag(series("1/(1-t)", 4), series("t/(1-t)", 4));
  EXPECT_EQ(row_polys(lag.triangle())[2], Poly(2).with_vars(v) + q * Rational(4) + q * q);
}

TEST(Riordan, GroupLaw) {
  ERA a(series("exp(2*t)", 8), series("t/(1-t)", 8));
  ERA b(series("1/(1-t)^3", 8), series("t*exp(t)", 8));
  ERA id(S::constant(1, 8), S::t(8));
  auto ab = multiply(a, b);
  EXPECT_EQ(ab.triangle(), a.triangle() * b.triangle());
  auto e = multiply(a, inverse(a));
  EXPECT_EQ(e.g(), id.g());
  EXPECT_EQ(e.f(), id.f());
  auto ai = multiply(a, id);
  EXPECT_EQ(ai.g(), a.g());
  EXPECT_EQ(ai.f(), a.f());
}

TEST(Riordan, IdempotentInverseIsTreeTriangle) {
  const std::size_t n = 8;
  ERA idem(S::constant(1, n), S::t(n) * exp_t(n));
  auto inv = inverse(idem);
  EXPECT_EQ(inv.f(), revert(idem.f()));
  auto tri = inv.triangle();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= i; ++k) {
      Rational expect = Rational(binomial(i - 1, k - 1)) * pow_int(Rational(static_cast<long>(i)), static_cast<unsigned>(i - k));
      if ((i - k) % 2) expect = -expect;
      EXPECT_EQ(tri(i, k), expect) << i << "," << k;
    }
}

TEST(Riordan, ZASequences) {
  ERA lag(series("1/(1-t)", 6), series("t/(1-t)", 6));
  auto za = za_sequences(lag);
  EXPECT_EQ(za.z, S({1, 1, 0, 0, 0, 0}));
  EXPECT_EQ(za.a, S({1, 2, 1, 0, 0, 0}));
  ERA id(S::constant(1, 4), S::t(4));
  auto zi = za_sequences(id);
  EXPECT_EQ(zi.z, S(3));
  EXPECT_EQ(zi.a, S::constant(1, 3));

  Bindings b{{"lambda", ParamValue::symbolic()}};
  ExpRiordan<Poly> el(parse_series("exp(lambda*t)", b, 5), parse_series("t", b, 5));
  auto zl = za_sequences(el);
  VarList v{"lambda"};
  EXPECT_EQ(zl.z[0], Poly::variable("lambda", v));
  EXPECT_TRUE(zl.z[1].is_zero());
  EXPECT_EQ(zl.a[0], Poly(1));

  // A(t) * fbar'(t) = 1
  ERA c(series("exp(t/2)", 7), series("t + t^2 + 3*t^3", 7));
  auto zc = za_sequences(c);
  EXPECT_EQ(zc.a * derivative(revert(c.f())), S::constant(1, 6));

  ERA improper(S::constant(1, 5), series("t^2", 5));
  EXPECT_FALSE(improper.proper());
  EXPECT_THROW(za_sequences(improper), domain_error);
  EXPECT_THROW(inverse(improper), domain_error);
  EXPECT_EQ(improper.triangle()(4, 2), 12);  // 4!/2! [t^4] t^4
}

TEST(Riordan, ProductionMatrix) {
  ERA lag(series("1/(1-t)", 6), series("t/(1-t)", 6));
  auto p = production_matrix(lag);
  EXPECT_EQ(p(0, 0), 1);
  EXPECT_EQ(p(0, 1), 1);
  EXPECT_EQ(p(1, 1), 3);
  EXPECT_EQ(p(2, 1), 4);
  EXPECT_EQ(p(2, 2), 5);
  EXPECT_EQ(p(0, 2), 0);
  EXPECT_TRUE(verify_production(lag));
  EXPECT_TRUE(verify_production(lag, true));

  ERA pascal(exp_t(6), S::t(6));
  EXPECT_TRUE(verify_production(pascal));
  auto pp = production_matrix(pascal);
  EXPECT_EQ(pp(3, 3), 1);
  EXPECT_EQ(pp(3, 4), 1);
  EXPECT_EQ(pp(3, 2), 0);

  ERA id(S::constant(1, 6), S::t(6));
  auto pi = production_matrix(id);
  EXPECT_EQ(pi(2, 3), 1);
  EXPECT_EQ(pi(2, 2), 0);
  EXPECT_TRUE(verify_production(id));

  // Scaled entries are z_{i-j} + j a_{i-j+1}.
  auto ps = scaled_production_matrix(lag);
  EXPECT_EQ(ps(2, 1), 2);
  EXPECT_EQ(ps(2, 2), 5);
}

TEST(Riordan, SymbolicProduction) {
  Bindings b{{"lambda", ParamValue::symbolic()}};
  ExpRiordan<Poly> r(parse_series("exp(lambda*t/(1-t))", b, 10), parse_series("t/(1-t)", b, 10));
  EXPECT_TRUE(verify_production(r));
  EXPECT_TRUE(verify_production(r, true));
}

TEST(Riordan, CycleIndexTriangle) {
  ERA pascal(exp_t(4), S::t(4));
  auto a = cycle_index_triangle(pascal.triangle());
  EXPECT_EQ(a(3, 0), make_rational(1, 6));
  EXPECT_EQ(a(3, 1), make_rational(1, 2));
  EXPECT_EQ(a(0, 0), 1);
  ERA lah(S::constant(1, 4), series("t/(1-t)", 4));
  auto l = cycle_index_triangle(lah.triangle());
  EXPECT_EQ(l(2, 1), 1);
  EXPECT_EQ(l(2, 2), make_rational(1, 2));
}
