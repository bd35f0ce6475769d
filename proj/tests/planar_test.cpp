#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "crinv/planar/automorphism.hpp"
#include "crinv/poly/parse.hpp"
#include "crinv/poly/substitute.hpp"

using namespace crinv;
using namespace crinv::planar;

namespace {

Polynomial parse(const std::string& s) { return poly::parse_defining_equation(s, 1); }

Polynomial leading_from(const std::vector<ExactComplex>& a) {
  int k = static_cast<int>(a.size()) - 1;
  Polynomial p(1);
  for (int j = 0; j <= k; ++j) p.add_term(Monomial({j}, {k - j}, 0), a[j]);
  return p;
}

// Random real-valued leading polynomial of degree k with a_0 = a_k = 0 and a
// random zero pattern; at least one coefficient below k/2 is nonzero.
std::vector<ExactComplex> random_leading(std::mt19937& rng, int k) {
  std::uniform_int_distribution<int> coeff(-9, 9), keep(0, 2);
  std::vector<ExactComplex> a(k + 1);
  bool any = false;
  while (!any) {
    for (int j = 1; 2 * j <= k; ++j) {
      if (keep(rng) == 0) {
        a[j] = ExactComplex();
        continue;
      }
      a[j] = ExactComplex(Rational(coeff(rng), 1 + keep(rng)), 2 * j == k ? Rational(0) : Rational(coeff(rng)));
      if (!a[j].is_zero()) any = true;
    }
  }
  if (k % 2 == 0 && a[k / 2].re < 0) a[k / 2].re = -a[k / 2].re;
  for (int j = 1; 2 * j < k; ++j) a[k - j] = a[j].conj();
  return a;
}

}  // namespace

TEST(Extract, LeadingPartAndRemainder) {
  auto d = extract_leading(parse("|z1|^4 + |z1|^6*u^2"));
  EXPECT_EQ(d.k, 4);
  EXPECT_EQ(d.p, parse("|z1|^4"));
  EXPECT_EQ(d.f, parse("|z1|^6*u^2"));

  auto d2 = extract_leading(parse("z1*Z1^3 + z1^3*Z1 + |z1|^6"));
  EXPECT_EQ(d2.k, 4);
  EXPECT_EQ(d2.p, parse("z1*Z1^3 + z1^3*Z1"));
}

TEST(Extract, RejectsHarmonicBelowLeading) {
  try {
    extract_leading(parse("Re(z1^3) + |z1|^4"));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("not in pre-normalized shape"), std::string::npos);
  }
  EXPECT_THROW(extract_leading(parse("|z1|^4 + u")), PreconditionError);
  EXPECT_THROW(extract_leading(parse("Re(z1^5)")), PreconditionError);
  EXPECT_THROW(extract_leading(parse("i*|z1|^2")), PreconditionError);
}

TEST(Invariants, Examples) {
  auto inv = planar_invariants(parse("z1*Z1^3 + z1^3*Z1"));
  EXPECT_EQ(inv.e, 1);
  EXPECT_EQ(inv.m_indices, std::vector<int>({1}));
  EXPECT_EQ(inv.d, 2);
  EXPECT_TRUE(inv.q_chain.empty());

  auto t5 = planar_invariants(tubular_model(5));
  EXPECT_EQ(t5.e, 1);
  EXPECT_EQ(t5.d, 1);
  EXPECT_EQ(t5.m_indices, std::vector<int>({1, 2}));
  EXPECT_EQ(t5.q_chain, std::vector<int>({3}));

  auto s6 = planar_invariants(parse("|z1|^6"));
  EXPECT_EQ(s6.e, 3);
  EXPECT_FALSE(s6.d.has_value());
}

TEST(Invariants, TubularParityOfD) {
  for (int k = 3; k <= 12; ++k) {
    auto inv = planar_invariants(tubular_model(k));
    int oracle = 0;
    for (int j = 1; 2 * j < k; ++j) oracle = std::gcd(oracle, k - 2 * j);
    EXPECT_EQ(inv.d, oracle) << k;
    EXPECT_EQ(inv.d, k % 2 == 0 ? 2 : 1) << k;
  }
}

TEST(Normalize, UniformScaling) {
  auto n = normalize_leading(parse("2*z1*Z1^3 + 2*z1^3*Z1"));
  ASSERT_TRUE(n.exact.has_value());
  EXPECT_EQ(*n.exact, parse("z1*Z1^3 + z1^3*Z1"));
  EXPECT_EQ(n.exact_scale, Rational(1, 2));
  EXPECT_EQ(n.theta.over_pi, Rational(0));
}

TEST(Normalize, QuarterRotation) {
  Polynomial p = parse("2*i*z1*Z1^3 - 2*i*z1^3*Z1");
  auto n = normalize_leading(p);
  ASSERT_TRUE(n.exact.has_value());
  EXPECT_EQ(*n.exact, parse("z1*Z1^3 + z1^3*Z1"));
  EXPECT_EQ(n.exact_scale, Rational(1, 2));
  ASSERT_TRUE(n.theta.over_pi.has_value());
  EXPECT_EQ(*n.theta.over_pi, Rational(1, 4));

  // z -> (1+i)z is the same rotation with an extra dilation by sqrt 2.
  auto s = poly::Substitution::identity(1);
  s.z[0] = Polynomial::constant(1, ExactComplex(1, 1)) * Polynomial::z(1, 0);
  Polynomial rotated = poly::substitute(p, s);
  EXPECT_EQ(ExactComplex(Rational(1, 8)) * rotated, *n.exact);
}

TEST(Normalize, IdempotentOnNormalized) {
  Polynomial p = parse("z1*Z1^3 + z1^3*Z1");
  auto n = normalize_leading(p);
  ASSERT_TRUE(n.exact.has_value());
  EXPECT_EQ(*n.exact, p);
  EXPECT_EQ(n.exact_scale, Rational(1));
  EXPECT_EQ(n.theta.over_pi, Rational(0));
}

TEST(Normalize, CircularNegativeIsRejected) {
  EXPECT_THROW(normalize_leading(parse("-|z1|^4")), PreconditionError);
}

TEST(Normalize, RandomizedPostconditionsIdempotenceAndUniqueness) {
  std::mt19937 rng(20260419);
  std::uniform_int_distribution<int> kdist(2, 9);
  std::uniform_real_distribution<double> phi(-4.0, 4.0), sdist(0.1, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    int k = kdist(rng);
    auto a = random_leading(rng, k);
    auto n = normalize_leading(leading_from(a));
    const auto& inv = n.invariants;
    ASSERT_TRUE(arg_conditions_hold(n.coefficients, inv)) << trial;

    // Reported parameters reproduce P*.
    for (int j = 0; j <= k; ++j) {
      auto expect = n.scale * a[j].to_complex() * std::polar(1.0, (2 * j - k) * n.theta.radians);
      EXPECT_LT(std::abs(expect - n.coefficients[j]), 1e-9) << trial << " j=" << j;
    }

    // Re-normalizing gives back the same coefficients with unit scale.
    auto again = normalize_coefficients(n.coefficients, inv);
    EXPECT_NEAR(again.scale, 1.0, 1e-12);
    for (int j = 0; j <= k; ++j) EXPECT_LT(std::abs(again.coefficients[j] - n.coefficients[j]), 1e-9) << trial;

    // Any decoupled image normalizes to the same P*, and keeps the zero pattern.
    double angle = phi(rng), s = sdist(rng);
    std::vector<std::complex<double>> moved(k + 1);
    for (int j = 0; j <= k; ++j) moved[j] = s * a[j].to_complex() * std::polar(1.0, (2 * j - k) * angle);
    for (int j = 0; j <= k; ++j) EXPECT_EQ(moved[j] == 0.0, a[j].is_zero());
    auto other = normalize_coefficients(moved, inv);
    for (int j = 0; j <= k; ++j) EXPECT_LT(std::abs(other.coefficients[j] - n.coefficients[j]), 1e-8) << trial;

    if (n.exact) {
      auto ex = leading_coefficients(*n.exact, k);
      for (int j = 0; j <= k; ++j) EXPECT_LT(std::abs(ex[j].to_complex() - n.coefficients[j]), 1e-12);
      EXPECT_EQ(planar_invariants(*n.exact).m_indices, inv.m_indices);
    }
  }
}

TEST(Model, Examples) {
  EXPECT_EQ(classify_model(normalize_leading(parse("|z1|^6"))).tag, ModelTag::Circular);
  auto t4 = classify_model(normalize_leading(parse("1/4*(4*z1*Z1^3 + 6*z1^2*Z1^2 + 4*z1^3*Z1)")));
  EXPECT_EQ(t4.tag, ModelTag::Tubular);
  EXPECT_EQ(t4.k, 4);
  EXPECT_EQ(t4.d, 2);
  EXPECT_EQ(classify_model(normalize_leading(parse("z1*Z1^3 + z1^3*Z1"))).tag, ModelTag::Generic);
}

TEST(Model, TubularFormulaMatchesBinomialCoefficients) {
  for (int k = 3; k <= 8; ++k) {
    Polynomial z = Polynomial::z(1, 0), zb = Polynomial::zbar(1, 0);
    Polynomial t = ExactComplex(Rational(1, k)) * (poly::pow(z + zb, k) - poly::pow(z, k) - poly::pow(zb, k));
    EXPECT_EQ(t, tubular_model(k)) << k;
    EXPECT_EQ(classify_model(normalize_leading(t)).tag, ModelTag::Tubular) << k;
  }
}

TEST(Model, TubularOrbitIsRecognized) {
  // z -> (1+i)z applied to T_4 and T_5, then scaled.
  for (int k : {4, 5}) {
    auto s = poly::Substitution::identity(1);
    s.z[0] = Polynomial::constant(1, ExactComplex(1, 1)) * Polynomial::z(1, 0);
    Polynomial moved = ExactComplex(3) * poly::substitute(tubular_model(k), s);
    EXPECT_EQ(classify_model(normalize_leading(moved)).tag, ModelTag::Tubular) << k;
  }
  // A unimodular phase that is not a quarter turn: no exact P*, still tubular.
  auto irrational = normalize_leading(parse("(3/5+4/5*i)*z1*Z1^3 + 3/2*z1^2*Z1^2 + (3/5-4/5*i)*z1^3*Z1"));
  EXPECT_FALSE(irrational.exact.has_value());
  EXPECT_EQ(classify_model(irrational).tag, ModelTag::Tubular);
  EXPECT_EQ(classify_model(normalize_leading(parse("-1*(z1*Z1^3 + 3/2*z1^2*Z1^2 + z1^3*Z1)"))).tag,
            ModelTag::Generic);
  EXPECT_EQ(classify_model(normalize_leading(parse("z1*Z1^3 + z1^2*Z1^2 + z1^3*Z1"))).tag, ModelTag::Generic);
}

TEST(Model, AutDescriptions) {
  auto c = model_aut_description({ModelTag::Circular, 6, 3, std::nullopt});
  EXPECT_TRUE(c.three_dimensional);
  auto g4 = model_aut_description({ModelTag::Generic, 4, 1, 2});
  EXPECT_FALSE(g4.signed_dilations);
  EXPECT_EQ(g4.d, 2);
  EXPECT_EQ(g4.text.substr(0, 10), "R+ (+) Z_2");
  auto g5 = model_aut_description({ModelTag::Generic, 5, 1, 1});
  EXPECT_TRUE(g5.signed_dilations);
  EXPECT_EQ(g5.text.substr(0, 10), "R* (+) Z_1");
}

TEST(NormalForm, ModelPassesEveryBranch) {
  for (const char* s : {"|z1|^4", "z1*Z1^3 + z1^3*Z1", "1/4*(4*z1*Z1^3 + 6*z1^2*Z1^2 + 4*z1^3*Z1)"}) {
    auto d = extract_leading(parse(s));
    auto mc = classify_model(normalize_leading(d.p));
    EXPECT_TRUE(check_normal_form(d, mc).passed()) << s;
  }
}

TEST(NormalForm, CircularExamples) {
  auto d = extract_leading(parse("|z1|^4 + z1^3*Z1*u + z1*Z1^3*u"));
  auto mc = classify_model(normalize_leading(d.p));
  EXPECT_TRUE(check_normal_form(d, mc).passed());

  auto bad = extract_leading(parse("|z1|^4 + z1*u + Z1*u"));
  auto r = check_normal_form(bad, classify_model(normalize_leading(bad.p)));
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.failures.front().condition, "F_j0 = 0");
  EXPECT_EQ(r.failures.front().j, 1);
  EXPECT_EQ(r.failures.front().l, 0);

  auto diag = extract_leading(parse("|z1|^4 + |z1|^4*u"));
  auto rd = check_normal_form(diag, classify_model(normalize_leading(diag.p)));
  ASSERT_FALSE(rd.passed());
  EXPECT_EQ(rd.failures.front().condition, "F_e,e+j = 0");

  auto cross = extract_leading(parse("|z1|^4 + z1^4*Z1^3 + z1^3*Z1^4"));
  auto rc = check_normal_form(cross, classify_model(normalize_leading(cross.p)));
  ASSERT_FALSE(rc.passed());
}

TEST(NormalForm, TubularConditions) {
  const std::string t4 = "1/4*(4*z1*Z1^3 + 6*z1^2*Z1^2 + 4*z1^3*Z1)";
  // Re F_{2,1} must vanish, Im may not.
  auto ok = extract_leading(parse(t4 + " + i*z1^2*Z1*u - i*z1*Z1^2*u"));
  EXPECT_TRUE(check_normal_form(ok, classify_model(normalize_leading(ok.p))).passed());
  auto bad = extract_leading(parse(t4 + " + z1^2*Z1*u + z1*Z1^2*u"));
  auto r = check_normal_form(bad, classify_model(normalize_leading(bad.p)));
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.failures.front().condition, "Re F_k-2,1 = 0");
  auto high = extract_leading(parse(t4 + " + z1^3*Z1*u + z1*Z1^3*u"));
  auto rh = check_normal_form(high, classify_model(normalize_leading(high.p)));
  ASSERT_FALSE(rh.passed());
  EXPECT_EQ(rh.failures.front().condition, "F_k-1+j,1 = 0");
}

TEST(NormalForm, GenericPairing) {
  // P = z zbar^3 + z^3 zbar: a_2 = 0, a_3 = 1, so the pairing reads 3 F_{2,1}.
  auto bad = extract_leading(parse("z1*Z1^3 + z1^3*Z1 + z1^2*Z1*u + z1*Z1^2*u"));
  auto r = check_normal_form(bad, classify_model(normalize_leading(bad.p)));
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.failures.front().condition, "(F_k-1, P_z) = 0");
  EXPECT_EQ(r.failures.front().m, 1);

  // k = 5, all a_j = 1: the pairing is 2 F_{1,3} + 3 F_{2,2} + 4 F_{3,1}.
  auto ok = extract_leading(parse("z1*Z1^4 + z1^4*Z1 + z1^2*Z1^3 + z1^3*Z1^2 + "
                                   "2*|z1|^4*u - z1^3*Z1*u - z1*Z1^3*u"));
  auto mc = classify_model(normalize_leading(ok.p));
  EXPECT_EQ(mc.tag, ModelTag::Generic);
  EXPECT_TRUE(check_normal_form(ok, mc).passed());
}

TEST(ThetaMu, Examples) {
  auto d = extract_leading(parse("|z1|^4 + z1^3*Z1*u + z1*Z1^3*u"));
  auto tm = theta_mu(d, d.p);
  EXPECT_EQ(tm.theta, (std::set<Triple>{{3, 1, 1}, {1, 3, 1}}));
  EXPECT_EQ(tm.mu0, 2);

  auto d2 = extract_leading(parse("|z1|^4 + |z1|^2*u"));
  auto tm2 = theta_mu(d2, d2.p);
  EXPECT_TRUE(tm2.theta.empty());
  EXPECT_FALSE(tm2.mu0.has_value());

  auto d3 = extract_leading(parse("z1*Z1^3 + z1^3*Z1"));
  auto tm3 = theta_mu(d3, d3.p);
  EXPECT_EQ(tm3.theta, (std::set<Triple>{{1, 3, 0}, {3, 1, 0}}));
  EXPECT_EQ(tm3.mu0, 2);
}

TEST(Aut, Examples) {
  auto a = aut_classification(parse("|z1|^4 + z1^3*Z1*u + z1*Z1^3*u"));
  EXPECT_EQ(a.tag, AutTag::Finite);
  EXPECT_EQ(a.mu0, 2);
  auto b = aut_classification(parse("|z1|^4 + z1^3*Z1*u + z1*Z1^3*u + z1^2*Z1*u^2 + z1*Z1^2*u^2"));
  EXPECT_EQ(b.tag, AutTag::Trivial);
  EXPECT_EQ(b.mu0, 1);
  auto c = aut_classification(parse("|z1|^4 + |z1|^2*u"));
  EXPECT_EQ(c.tag, AutTag::Infinite);
}

TEST(Aut, PureModelsReportModelDescription) {
  for (const char* s : {"|z1|^6", "z1*Z1^3 + z1^3*Z1", "z1^2*Z1^3 + z1^3*Z1^2 + z1*Z1^4 + z1^4*Z1"}) {
    Polynomial psi = parse(s);
    auto r = analyze_planar(psi);
    EXPECT_EQ(r.aut.tag, AutTag::Model) << s;
    EXPECT_EQ(r.aut.description, model_aut_description(r.model).text) << s;
  }
  EXPECT_EQ(analyze_planar(tubular_model(6)).aut.tag, AutTag::Model);
}

TEST(Aut, RequiresNormalCoordinates) {
  try {
    aut_classification(parse("|z1|^4 + z1*u + Z1*u"));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("requires normal coordinates"), std::string::npos);
  }
}

TEST(Aut, EvenKTheta2GivesEvenMu) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int k = 2 * std::uniform_int_distribution<int>(1, 5)(rng);
    auto a = random_leading(rng, k);
    auto d = extract_leading(leading_from(a));
    auto tm = theta_mu(d, d.p);
    if (tm.mu0) EXPECT_EQ(*tm.mu0 % 2, 0);
  }
}

TEST(Aut, ThetaInvariantUnderDecoupledMaps) {
  Polynomial psi = parse("z1*Z1^3 + z1^3*Z1 + z1^5*Z1^3*u + z1^3*Z1^5*u + |z1|^4*u^2");
  auto base = analyze_planar(psi);
  auto s = poly::Substitution::identity(1);
  s.z[0] = Polynomial::constant(1, ExactComplex(2, 1)) * Polynomial::z(1, 0);
  s.u = Polynomial::constant(1, ExactComplex(3)) * Polynomial::u(1);
  auto moved = analyze_planar(poly::substitute(psi, s));
  EXPECT_EQ(base.aut.theta, moved.aut.theta);
  EXPECT_EQ(base.aut.mu0, moved.aut.mu0);
  EXPECT_EQ(base.aut.tag, AutTag::Finite);
  EXPECT_EQ(base.aut.mu0, 2);
}

TEST(Report, JsonShape) {
  auto r = analyze_planar(parse("|z1|^4 + z1^3*Z1*u + z1*Z1^3*u"));
  auto j = to_json(r);
  EXPECT_EQ(j["k"], 4);
  EXPECT_EQ(j["e"], 2);
  EXPECT_TRUE(j["d"].is_null());
  EXPECT_EQ(j["model"], "circular");
  EXPECT_EQ(j["aut"], "finite");
  EXPECT_EQ(j["mu0"], 2);
  EXPECT_EQ(j["theta"].size(), 2u);
  EXPECT_EQ(j["normal_form"]["branch"], "circular");
  EXPECT_EQ(j["truncation_degree"], 5);
}
