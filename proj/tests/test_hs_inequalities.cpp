#include <cmath>

#include <gtest/gtest.h>

#include "heinzcert/hs_inequalities.hpp"
#include "heinzcert/random_gen.hpp"
#include "heinzcert/scalar.hpp"

namespace hc = heinzcert;
namespace hs = heinzcert::hs;
namespace sc = heinzcert::scalar;
using hc::CMatrix;
using hc::HermitianMatrix;

namespace {

hc::gen::GenSpec spec(std::size_t dim, std::uint64_t seed, hc::gen::Field f = hc::gen::Field::kComplex) {
  hc::gen::GenSpec g;
  g.dim = dim;
  g.seed = seed;
  g.field = f;
  g.spectrum = hc::gen::SpectrumLaw::log_uniform(1e-2, 1e2);
  return g;
}

hs::NormTriple random_triple(std::size_t dim, std::uint64_t seed, bool positive_x) {
  hc::gen::Rng rng(seed, 0);
  const auto g = spec(dim, seed);
  auto p = hc::gen::gen_pair(g, rng);
  hc::GeneralMatrix x = positive_x ? hc::gen::gen_pd(g, rng).general() : hc::gen::gen_general(g, rng);
  return {p.a, p.b, x};
}

hs::NormTriple scalar_triple(double a, double b, double x) {
  CMatrix m(1, 1);
  m << x;
  return {HermitianMatrix::diagonal(std::vector<double>{a}), HermitianMatrix::diagonal(std::vector<double>{b}),
          hc::GeneralMatrix(m)};
}

}  // namespace

TEST(HeinzBlock, OneByOneIsTwiceScalarHeinz) {
  const auto t = scalar_triple(9, 4, 1.5);
  const auto h = hs::heinz_block(t.a, t.x, t.b, 0.25);
  EXPECT_NEAR(h.data()(0, 0).real(), 2.0 * sc::heinz(9, 4, 0.25) * 1.5, 1e-13);
}

TEST(HeinzBlock, IdentityWeightsGiveSum) {
  const auto t = random_triple(3, 1, false);
  const auto h = hs::heinz_block(t.a, t.x, t.b, 1.0);
  const CMatrix expect = t.a.data() * t.x.data() + t.x.data() * t.b.data();
  EXPECT_LE((h.data() - expect).cwiseAbs().maxCoeff(), 1e-12 * expect.cwiseAbs().maxCoeff());
}

TEST(HeinzBlock, ShapeMismatchThrows) {
  const auto t = random_triple(2, 1, false);
  EXPECT_THROW(hs::heinz_block(t.a, hc::GeneralMatrix(CMatrix::Ones(3, 3)), t.b, 0.5), hc::DomainError);
}

TEST(BlockNorm, ConstantCoefficientIsScaledNorm) {
  const auto t = random_triple(4, 2, false);
  const auto f = hs::spectral_form(t);
  EXPECT_NEAR(hs::block_norm(f, [](double, double) { return 3.0; }), 3.0 * hc::hs_norm(t.x),
              1e-12 * hc::hs_norm(t.x));
}

// Sum coefficient lambda + mu reproduces |AX + XB|.
TEST(BlockNorm, SumCoefficientMatchesDirectProduct) {
  const auto t = random_triple(5, 3, false);
  const auto f = hs::spectral_form(t);
  const double direct = hc::hs_norm(t.a * t.x + t.x * t.b);
  EXPECT_NEAR(hs::block_norm(f, [](double l, double m) { return l + m; }), direct, 1e-11 * direct);
}

TEST(Certify, EigenbasisAgreesWithDirect) {
  for (const auto& c : hs::hs_registry()) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto t = random_triple(1 + seed % 6, seed, c.requires_positive_x);
      const auto r = hs::certify_hs(c, t, static_cast<double>(seed % 9) / 8.0);
      if (r.vacuous) continue;
      ASSERT_TRUE(r.diagnostics.contains("eigenbasis_max_rel_diff")) << c.id;
      EXPECT_LE(r.diagnostics["eigenbasis_max_rel_diff"].get<double>(), hc::kEigenbasisTol) << c.id;
    }
  }
}

TEST(Certify, TheoremSevenAndCorollaryPass) {
  for (const char* id : {"hs-2.14", "hs-cor"}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto t = random_triple(1 + seed % 5, seed, true);
      const auto r = hs::certify_hs(hs::find_case(id), t, static_cast<double>(seed % 33) / 32.0);
      EXPECT_TRUE(r.pass) << id << " seed=" << seed;
    }
  }
}

TEST(Certify, PositiveXHypothesisEnforced) {
  const auto t = random_triple(3, 5, false);
  EXPECT_THROW(hs::certify_hs(hs::find_case("hs-2.14"), t, 0.3), hc::DomainError);
  hs::CertifyOptions lenient;
  lenient.lenient_x = true;
  const auto r = hs::certify_hs(hs::find_case("hs-2.14"), t, 0.3, lenient);
  EXPECT_TRUE(r.diagnostics.value("x_hypothesis_relaxed", false));
}

TEST(Certify, OneByOneTheoremSevenMatchesScalarForm) {
  for (double nu : {0.0, 0.3, 0.5, 0.9}) {
    const double a = 9, b = 4, x = 2;
    const auto sides = hs::find_case("hs-2.14").sides(scalar_triple(a, b, x), nu);
    ASSERT_EQ(sides.size(), 2u);
    const double alpha = std::min(1 / a, 1 / b);
    EXPECT_NEAR(sides[0], x * (2 * sc::heinz(a, b, nu) + nu * (1 - nu) * alpha * (a - b) * (a - b)), 1e-12);
    EXPECT_NEAR(sides[1], x * (a + b), 1e-12);
  }
}

// The first link of the Theorem 6 chain fails at A = B = X = 1, nu = 0.78:
// 2 nu^2 (2 - nu) = 1.484 exceeds |2 nu^(nu-2) - 4| = 1.292.
TEST(KnownViolation, TheoremSixFirstLink) {
  const auto r = hs::certify_hs(hs::find_case("hs-2.13"), scalar_triple(1, 1, 1), 0.78);
  ASSERT_EQ(r.links.size(), 2u);
  EXPECT_FALSE(r.links[0].pass);
  EXPECT_NEAR(r.links[0].lhs.value(), 2 * 0.78 * 0.78 * (2 - 0.78), 1e-12);
  EXPECT_TRUE(r.links[1].pass);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->link, 0u);
}

// Theorem 8 as printed: at nu = 1/2 the first side is |A^(1/2) X B^(1/2)|
// and the second half of that, so the chain cannot collapse.
TEST(KnownViolation, TheoremEightHalfPointFactorTwo) {
  const auto t = random_triple(3, 7, false);
  const auto sides = hs::find_case("hs-thm8").sides(t, 0.5);
  ASSERT_EQ(sides.size(), 4u);
  EXPECT_NEAR(sides[0], 2.0 * sides[1], 1e-10 * sides[0]);
  EXPECT_NEAR(sides[1], sides[2], 1e-12 * sides[1]);
  EXPECT_NEAR(sides[3], sides[0], 1e-10 * sides[0]);
}

TEST(Certify, NuZeroVacuousForTheoremSix) {
  const auto r = hs::certify_hs(hs::find_case("hs-2.13"), random_triple(2, 1, false), 0.0);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.pass);
}

TEST(Certify, UnitaryInvariance) {
  const auto t = random_triple(3, 9, false);
  hc::gen::Rng rng(1, 1);
  const hc::GeneralMatrix u(hc::gen::random_unitary(3, hc::gen::Field::kComplex, rng));
  const hc::GeneralMatrix v(hc::gen::random_unitary(3, hc::gen::Field::kComplex, rng));
  const hc::GeneralMatrix vb(v.data().adjoint());
  // (U A U*, U X V*, V B V*) leaves every side unchanged.
  const hs::NormTriple moved{hc::congruence(u, t.a), hc::congruence(v, t.b), u * t.x * vb};
  for (const auto& c : hs::hs_registry()) {
    const auto s0 = c.sides(t, 0.3), s1 = c.sides(moved, 0.3);
    for (std::size_t i = 0; i < s0.size(); ++i) EXPECT_NEAR(s0[i], s1[i], 1e-9 * std::max(1.0, s0[i])) << c.id;
  }
}
