#include <gtest/gtest.h>

#include "rtp/catalog.hpp"
#include "rtp/contfrac.hpp"
#include "rtp/positivity.hpp"

namespace rtp {
namespace {

const VarList kQL{"lambda", "q"};
Poly qv() { return Poly::variable("q", kQL); }
Poly lv() { return Poly::variable("lambda", kQL); }

TEST(Bsf, CatalanFromConstantSFraction) {
  BranchedSF<Rational> b{1, std::vector<Rational>(8, Rational(1))};
  Series<Rational> s = bsf_series(b, 8);
  const std::vector<long> catalan{1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(s[n], catalan[n]);
  std::vector<Rational> seq(s.coeffs().begin(), s.coeffs().end());
  RationalMatrix h = hankel(seq, 4);
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    EXPECT_EQ(det_exact(h.submatrix(idx, idx)), 1);
  }
}

TEST(Bsf, ScaledCatalan) {
  BranchedSF<Rational> b{1, std::vector<Rational>(5, Rational(3))};
  Series<Rational> s = bsf_series(b, 4);
  EXPECT_EQ(s[1], 3);
  EXPECT_EQ(s[2], 2 * 9);
  EXPECT_EQ(s[3], 5 * 27);
}

TEST(Bsf, ZeroCoefficientsGiveOne) {
  BranchedSF<Rational> b{2, std::vector<Rational>(20, Rational(0))};
  Series<Rational> s = bsf_series(b, 6);
  EXPECT_EQ(s, Series<Rational>::constant(1, 6));
  EXPECT_EQ(bsf_series_via_production<Rational>(0, 1, {1, 2}, 6), Series<Rational>::constant(1, 6));
}

TEST(Bsf, InsufficientCoefficients) {
  BranchedSF<Rational> b{2, std::vector<Rational>(3, Rational(1))};
  EXPECT_THROW(bsf_series(b, 6), domain_error);
  EXPECT_EQ(bsf_coefficients_needed(2, 6), 11u);
  EXPECT_THROW((BranchedSF<Rational>{0, {}}, bsf_series(BranchedSF<Rational>{0, {Rational(1)}}, 2)), domain_error);
}

TEST(Bsf, LahScheduleRowPolys) {
  auto b = schedule_lah<Poly>(1, Poly(1), Poly(1), Poly(0), qv(), 8);
  EXPECT_EQ(b.m, 2u);
  Series<Poly> s = bsf_series(b, 8);
  Poly q = qv();
  EXPECT_EQ(s[3], q * Rational(6) + q * q * Rational(6) + q * q * q);
  FamilySpec spec{"lah", {}, {}, 8};
  auto rows = build_family(spec, Realization::formula).row_polys();
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(s[n], rows[n]);
}

TEST(Schedules, ExactDisplays) {
  auto a = schedule_sheffer<Poly>(Poly(0), qv(), {Poly(1), Poly(1)}, 3);
  std::vector<Poly> expect{qv(), Poly(1), Poly(1), qv(), Poly(2)};
  ASSERT_EQ(a.alpha.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(a.alpha[i], expect[i]);
  Poly x1 = Poly(3), x2 = Poly(5);
  auto s = schedule_sheffer_star<Poly>(Poly(0), qv(), {x1, x2}, 3);
  std::vector<Poly> star{Poly(1), qv() * Rational(3), qv() * Rational(5), Poly(1), qv() * Rational(6)};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.alpha[i], star[i]);
  EXPECT_THROW(schedule_production<Rational>(1, 0, {}, 4), domain_error);
  auto h = schedule_hankel<Rational>(2, 3, {1}, 4);
  EXPECT_EQ(h.alpha, (std::vector<Rational>{2, 1, 5, 2}));
}

TEST(Equivalence, RecursionMatchesProduction) {
  struct Case {
    Rational nu, b;
    std::vector<Rational> xs;
  };
  for (const auto& c : std::vector<Case>{{1, 0, {1}},
                                         {2, 1, {1}},
                                         {make_rational(1, 2), 3, {2, 1}},
                                         {1, 1, {1, 1}},
                                         {3, 0, {1, 2, 3}},
                                         {1, 2, {make_rational(1, 3), 1, 2}}}) {
    auto sched = schedule_hankel<Rational>(c.nu, c.b, c.xs, 8);
    EXPECT_EQ(bsf_series(sched, 8), bsf_series_via_production(c.nu, c.b, c.xs, 8)) << c.xs.size();
  }
}

TEST(Equivalence, SymbolicRecursionMatchesProduction) {
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<Poly> xs;
    for (std::size_t i = 1; i <= m; ++i) xs.push_back(Poly(Rational(static_cast<unsigned long>(i))));
    Poly nu = lv() + qv();
    auto sched = schedule_hankel<Poly>(nu, lv(), xs, 8);
    EXPECT_EQ(bsf_series(sched, 8), bsf_series_via_production<Poly>(nu, lv(), xs, 8)) << m;
  }
}

// f = e^t - 1 has 1/fbar' = 1 + t; f = t/(1-t) has 1/fbar' = (1+t)^2.
TEST(Sheffer, EndToEndWithRiordan) {
  const std::size_t n = 7;
  Bindings b{{"lambda", ParamValue::symbolic()}, {"q", ParamValue::symbolic()}};
  struct Case {
    std::string f;
    std::vector<Poly> xs;
  };
  for (const auto& c : std::vector<Case>{{"exp(t)-1", {Poly(1)}}, {"t/(1-t)", {Poly(1), Poly(1)}}}) {
    Series<Poly> f = parse_series(c.f, b, n);
    Series<Poly> g = parse_series("exp(lambda*(" + c.f + "))", b, n);
    auto rows = row_polys(ExpRiordan<Poly>(g, f).triangle(n), "q");
    Series<Poly> cf = bsf_series(schedule_sheffer<Poly>(lv(), qv(), c.xs, n), n);
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(cf[k], rows[k]) << c.f << " n=" << k;
    Series<Poly> star = bsf_series(schedule_sheffer_star<Poly>(lv(), qv(), c.xs, n), n);
    auto rec = reciprocal_seq(rows, "q");
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(star[k], rec[k]) << c.f << " star n=" << k;
  }
}

TEST(Lah, ZerothColumnAtQZero) {
  const std::size_t n = 8;
  FamilySpec spec{"gen_lah", {{"a", ParamValue::bound(1)}, {"b", ParamValue::bound(1)}, {"c", ParamValue::bound(1)},
                              {"d", ParamValue::bound(0)}, {"lambda", ParamValue::bound(1)}},
                  {}, n};
  Triangle t = build_family(spec, Realization::era);
  Series<Rational> s = bsf_series(schedule_lah<Rational>(1, 1, 1, 1, 0, n), n);
  for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(s[k], t.entries(k, 0).constant_term());
}

TEST(Lah, GeneralAMatchesCatalogRows) {
  for (std::size_t a : {1u, 2u}) {
    const std::size_t n = 7;
    const Rational b = make_rational(1, 2), c = 3;
    FamilySpec spec{"gen_lah", {{"a", ParamValue::bound(Rational(static_cast<unsigned long>(a)))}, {"b", ParamValue::bound(b)},
                                {"c", ParamValue::bound(c)}, {"d", ParamValue::bound(0)}, {"lambda", ParamValue::symbolic()}},
                    {}, n};
    auto rows = build_family(spec, Realization::recurrence).row_polys();
    Series<Poly> s = bsf_series(schedule_lah<Poly>(a, Poly(b), Poly(c), lv(), qv(), n), n);
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(s[k], rows[k]) << "a=" << a << " n=" << k;
    Series<Poly> star = bsf_series(schedule_lah_star<Poly>(a, Poly(b), Poly(c), lv(), qv(), n), n);
    auto rec = reciprocal_seq(rows, "q");
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(star[k], rec[k]) << "a=" << a << " star n=" << k;
  }
}

}  // namespace
}  // namespace rtp
