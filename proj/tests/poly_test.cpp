#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "crinv/poly/hessian.hpp"
#include "crinv/poly/json.hpp"
#include "crinv/poly/line.hpp"
#include "crinv/poly/parse.hpp"
#include "crinv/poly/substitute.hpp"
#include "crinv/poly/weighted.hpp"
#include "oracles/finite_difference.hpp"

using namespace crinv;
using namespace crinv::poly;

namespace {

Monomial mono(std::vector<int> a, std::vector<int> b, int m = 0) { return {std::move(a), std::move(b), m}; }

Polynomial parse(const std::string& s, int n) { return parse_defining_equation(s, n); }

std::vector<Rational> weight(std::initializer_list<Rational> l) { return std::vector<Rational>(l); }

}  // namespace

TEST(Exact, RationalParsingAndPrinting) {
  EXPECT_EQ(parse_rational("15/7"), Rational(15, 7));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("4/2"), Rational(2));
  EXPECT_EQ(to_string(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
}

TEST(Exact, Rationalize) {
  EXPECT_EQ(*rationalize(2.0 / 7.0, 100, 1e-12), Rational(2, 7));
  EXPECT_EQ(*rationalize(-0.75, 100, 1e-12), Rational(-3, 4));
  EXPECT_FALSE(rationalize(std::sqrt(2.0), 100, 1e-12).has_value());
}

TEST(Parse, ModulusPower) {
  Polynomial p = parse("|z1|^4", 1);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coefficient(mono({2}, {2})), ExactComplex(1));
}

TEST(Parse, RealPartSugar) {
  Polynomial p = parse("2*Re(z1^3*Z2)", 2);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient(mono({3, 0}, {0, 1})), ExactComplex(1));
  EXPECT_EQ(p.coefficient(mono({0, 1}, {3, 0})), ExactComplex(1));
}

TEST(Parse, MixedUAndRationalCoefficient) {
  Polynomial p = parse("u^2*|z1|^2 + 1/2*z1", 1);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient(mono({1}, {1}, 2)), ExactComplex(1));
  EXPECT_EQ(p.coefficient(mono({1}, {0}, 0)), ExactComplex(Rational(1, 2)));
}

TEST(Parse, ImaginaryPartAndUnit) {
  // Im(z) = (z - zbar) / (2i)
  Polynomial p = parse("Im(z1)", 1);
  EXPECT_EQ(p.coefficient(mono({1}, {0})), ExactComplex(0, Rational(-1, 2)));
  EXPECT_EQ(p.coefficient(mono({0}, {1})), ExactComplex(0, Rational(1, 2)));
  EXPECT_EQ(parse("2*i*z1 - 0.5", 1),
            Polynomial::constant(1, ExactComplex(0, 2)) * Polynomial::z(1, 0) +
                Polynomial::constant(1, Rational(-1, 2)));
  EXPECT_EQ(parse("-(z1 + Z1)^2", 1), -(pow(Polynomial::z(1, 0) + Polynomial::zbar(1, 0), 2)));
}

TEST(Parse, Errors) {
  try {
    parse("|z1|^3", 1);
    FAIL() << "odd modulus power accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse("z3", 2), ParseError);
  EXPECT_THROW(parse("z0", 2), ParseError);
  EXPECT_THROW(parse("z1 +", 1), ParseError);
  EXPECT_THROW(parse("2z1", 1), ParseError);
  EXPECT_THROW(parse("Re(z1", 1), ParseError);
  EXPECT_THROW(parse("|u|^2", 1), ParseError);
  try {
    parse("z1 * * z1", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("column 6"), std::string::npos);
  }
}

TEST(Predicates, RealValued) {
  EXPECT_TRUE(is_real_valued(parse("|z1|^4", 1)));
  EXPECT_TRUE(is_real_valued(parse("z1^2*Z1 + z1*Z1^2", 1)));
  EXPECT_FALSE(is_real_valued(parse("z1^2*Z1", 1)));
  EXPECT_FALSE(is_real_valued(parse("i*|z1|^2", 1)));
}

TEST(Predicates, Pluriharmonic) {
  EXPECT_TRUE(is_pluriharmonic(parse("Re(z1^3)", 1)));
  EXPECT_FALSE(is_pluriharmonic(parse("|z1|^2", 1)));
  EXPECT_TRUE(is_pluriharmonic(Polynomial(1)));
  EXPECT_THROW(is_pluriharmonic(parse("u*Re(z1)", 1)), PreconditionError);
}

TEST(Weighted, Decomposition) {
  auto single = weighted_decomposition(parse("z1*Z1*z2*Z2", 2), weight({Rational(1, 4), Rational(1, 4)}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.begin()->first, Rational(1));

  Polynomial mixed = parse("|z1|^4 + |z2|^6", 2);
  auto both = weighted_decomposition(mixed, weight({Rational(1, 4), Rational(1, 6)}));
  ASSERT_EQ(both.size(), 1u);
  EXPECT_EQ(both.at(Rational(1)), mixed);

  auto with_u = weighted_decomposition(parse("u*|z1|^2", 2), weight({Rational(1, 4), Rational(1, 4)}));
  ASSERT_EQ(with_u.size(), 1u);
  EXPECT_EQ(with_u.begin()->first, Rational(3, 2));
}

TEST(Substitute, Scaling) {
  Substitution s = Substitution::identity(1);
  s.z[0] = ExactComplex(2) * Polynomial::z(1, 0);
  EXPECT_EQ(substitute(parse("|z1|^4", 1), s), parse("16*|z1|^4", 1));
}

TEST(Substitute, RotationMultipliesByPhase) {
  // z -> (1+i) z = sqrt(2) e^{i pi/4} z: the coefficient of z^j zbar^(4-j)
  // picks up |1+i|^4 e^{i(2j-4) pi/4}, so z zbar^3 -> -4i, z^3 zbar -> 4i.
  Polynomial p = parse("z1*Z1^3 + z1^3*Z1", 1);
  Substitution s = Substitution::identity(1);
  s.z[0] = ExactComplex(1, 1) * Polynomial::z(1, 0);
  Polynomial q = substitute(p, s);
  EXPECT_EQ(q.coefficient(mono({1}, {3})), ExactComplex(0, -4));
  EXPECT_EQ(q.coefficient(mono({3}, {1})), ExactComplex(0, 4));
  EXPECT_EQ(q.size(), 2u);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::complex<double> z(dist(rng), dist(rng));
    std::vector<std::complex<double>> w{std::complex<double>(1, 1) * z};
    std::vector<std::complex<double>> zz{z};
    auto expected = p.evaluate(w, 0.0);
    auto got = q.evaluate(zz, 0.0);
    EXPECT_NEAR(std::abs(expected - got), 0.0, 1e-9);
  }
}

TEST(Substitute, IdentityAndU) {
  Polynomial p = parse("|z1|^2*u + Re(z1^2*Z2) + u^3", 2);
  EXPECT_EQ(substitute(p, Substitution::identity(2)), p);
  Substitution s = Substitution::identity(2);
  s.u = ExactComplex(2) * Polynomial::u(2);
  EXPECT_EQ(substitute(parse("u^2*|z1|^2", 2), s), parse("4*u^2*|z1|^2", 2));
}

TEST(Line, AxisRestriction) {
  std::vector<std::complex<double>> c{1.0, 0.0};
  CircularForm f = restrict_to_line(parse("|z1|^4 + |z2|^4", 2), c);
  EXPECT_EQ(f.degree, 4);
  EXPECT_DOUBLE_EQ(f.a0, 1.0);
  EXPECT_TRUE(f.a.empty());
}

TEST(Line, DiagonalRestriction) {
  std::vector<std::complex<double>> c{1.0, 1.0};
  CircularForm f = restrict_to_line(parse("2*Re(z1^3*Z2)", 2), c);
  EXPECT_DOUBLE_EQ(f.a0, 0.0);
  EXPECT_NEAR(std::abs(f.coefficient(2) - 2.0), 0.0, 1e-15);
  // zeta-grid cross-check of P(zeta c)
  Polynomial p = parse("2*Re(z1^3*Z2)", 2);
  for (int i = 0; i < 16; ++i) {
    std::complex<double> zeta = std::polar(0.3 + 0.1 * i, 0.7 * i);
    std::vector<std::complex<double>> pt{zeta, zeta};
    EXPECT_NEAR(f.evaluate(zeta), p.evaluate(pt, 0.0).real(), 1e-12);
  }

  CircularForm g = restrict_to_line(parse("|z1|^4 + |z2|^4", 2), c);
  EXPECT_DOUBLE_EQ(g.a0, 2.0);
  EXPECT_TRUE(g.a.empty());
}

TEST(Line, Errors) {
  std::vector<std::complex<double>> c{1.0};
  EXPECT_THROW(restrict_to_line(parse("z1^2*Z1 + z1*Z1^2", 1), c), PreconditionError);
  EXPECT_THROW(restrict_to_line(parse("|z1|^2*u", 1), c), PreconditionError);
  std::vector<std::complex<double>> zero{0.0};
  EXPECT_THROW(restrict_to_line(parse("|z1|^4", 1), zero), DomainError);
}

TEST(Hessian, Quadratics) {
  std::vector<double> pt{0.3, -1.2, 0.5};
  auto h = real_hessian_eval(parse("|z1|^2", 1), pt);
  EXPECT_DOUBLE_EQ(h(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(h(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(h(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(h(2, 2), 0.0);
  auto g = real_hessian_eval(parse("Re(z1^2)", 1), pt);
  EXPECT_DOUBLE_EQ(g(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(g(1, 1), -2.0);
}

TEST(Hessian, QuarticAgainstFiniteDifferences) {
  Polynomial p = parse("|z1|^4", 1);
  std::vector<double> pt{1.0, 0.0, 0.0};
  auto h = real_hessian_eval(p, pt);
  EXPECT_DOUBLE_EQ(h(0, 0), 12.0);
  EXPECT_DOUBLE_EQ(h(1, 1), 4.0);
  auto fd = oracle::central_hessian([&](const std::vector<double>& x) { return oracle::evaluate_real(p, x); },
                                     pt, 1e-5);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_NEAR(h(a, b), fd[a][b], 1e-6 * std::max(1.0, std::abs(fd[a][b])) * 10);
}

TEST(Hessian, RejectsComplexValued) {
  std::vector<double> pt{0, 0, 0};
  EXPECT_THROW(real_hessian_eval(parse("z1^2*Z1", 1), pt), PreconditionError);
}

TEST(Json, RoundTrip) {
  Polynomial p = parse("3/2*|z1|^2*u - i*z1^2*Z2 + i*Z1^2*z2", 2);
  auto j = to_json(p);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(polynomial_from_json(j), p);
  EXPECT_THROW(polynomial_from_json(nlohmann::json{{"n", 2}, {"terms", {{{"alpha", {1}}, {"beta", {1, 0}}}}}}),
               DomainError);
}

TEST(Printing, ReadsBack) {
  Polynomial p = parse("|z1|^4 - 1/3*z1*Z1^3*u + 2*i*z2 - 2*i*Z2", 2);
  EXPECT_EQ(parse(to_string(p), 2), p);
}
