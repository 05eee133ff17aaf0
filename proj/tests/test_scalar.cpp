#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "heinzcert/scalar.hpp"

namespace hc = heinzcert;
namespace sc = heinzcert::scalar;

namespace {

const double kSqrt6 = std::sqrt(6.0);

double slack(const hc::TrialReport& r, std::size_t link) { return r.links.at(link).slack; }

}  // namespace

TEST(Means, RadicalOracles) {
  EXPECT_NEAR(sc::weighted_geom(9, 4, 0.25), 2.0 * kSqrt6, 1e-14);
  EXPECT_NEAR(sc::heinz(9, 4, 0.25), 2.5 * kSqrt6, 1e-14);
  EXPECT_DOUBLE_EQ(sc::weighted_arith(9, 4, 0.25), 5.25);
  EXPECT_DOUBLE_EQ(sc::heron(4, 1, 0.5), 2.25);
  EXPECT_DOUBLE_EQ(sc::weighted_geom(4, 1, 0.5), 2.0);
}

TEST(Means, EndpointsAndSymmetry) {
  EXPECT_EQ(sc::weighted_geom(3, 5, 1.0), 3.0);
  EXPECT_EQ(sc::weighted_geom(3, 5, 0.0), 5.0);
  EXPECT_EQ(sc::heinz(3, 5, 0.3), sc::heinz(5, 3, 0.3));
  EXPECT_NEAR(sc::heinz(3, 5, 0.3), sc::heinz(3, 5, 0.7), 1e-15 * sc::heinz(3, 5, 0.3));  // 1 - 0.7 != 0.3
  EXPECT_EQ(sc::pow0(0.0, 0.0), 1.0);
  EXPECT_EQ(sc::alpha_of_nu(0.5), 0.0);
  EXPECT_EQ(sc::alpha_of_nu(0.0), 1.0);
}

TEST(Weight, RangeAndRadii) {
  EXPECT_THROW(sc::Weight(-0.1), hc::DomainError);
  EXPECT_THROW(sc::Weight(1.5), hc::DomainError);
  EXPECT_THROW(sc::Weight(std::nan("")), hc::DomainError);
  const sc::Weight w(0.3);
  EXPECT_DOUBLE_EQ(w.r0(), 0.3);
  EXPECT_DOUBLE_EQ(w.R0(), 0.7);
}

TEST(Registry, IdsAreUniqueAndFindable) {
  std::set<std::string> ids;
  for (const auto& c : sc::registry()) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_EQ(&sc::find_case(c.id), &c);
  }
  EXPECT_EQ(ids.size(), 18u);
  try {
    sc::find_case("nope");
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("young-1.1"), std::string::npos);
  }
}

TEST(Registry, NewCaseCitesTheoremTwo) {
  EXPECT_NE(sc::find_case("new-2.1").citation.find("Theorem 2"), std::string::npos);
}

// (4, 1, 1/2): LHS 4.25, RHS 2^(3/2) * 2 + 1.
TEST(NewBound, FrozenSlack) {
  const auto r = sc::evaluate(sc::find_case("new-2.1"), 4, 1, 0.5);
  EXPECT_NEAR(slack(r, 0), 4.0 * std::numbers::sqrt2 - 3.25, 1e-14);
  EXPECT_TRUE(r.pass);
}

TEST(NewBound, EqualityOnlyAtNuOneWithEqualArguments) {
  EXPECT_NEAR(slack(sc::evaluate(sc::find_case("new-2.1"), 3, 3, 1.0), 0), 0.0, 1e-15);
  EXPECT_GT(slack(sc::evaluate(sc::find_case("new-2.1"), 4, 1, 1.0), 0), 0.5);
  EXPECT_GT(slack(sc::evaluate(sc::find_case("new-2.1"), 3, 3, 0.9), 0), 1e-3);
}

TEST(NewBound, NuZeroIsVacuous) {
  const auto r = sc::evaluate(sc::find_case("new-2.1"), 2, 5, 0.0);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.links.empty());
}

TEST(Young, EqualityAtEqualArguments) {
  for (double nu : {0.0, 0.2, 0.5, 1.0}) {
    EXPECT_NEAR(slack(sc::evaluate(sc::find_case("young-1.1"), 7, 7, nu), 0), 0.0, 1e-14);
  }
}

TEST(Domain, OutsideThrowsInsideDoesNot) {
  EXPECT_THROW(sc::evaluate(sc::find_case("zw-1.5"), 1, 2, 0.75), hc::DomainError);
  EXPECT_THROW(sc::evaluate(sc::find_case("zw-1.6"), 1, 2, 0.5), hc::DomainError);
  EXPECT_THROW(sc::evaluate(sc::find_case("kai-1.9"), 1, 2, 0.6), hc::DomainError);
  EXPECT_THROW(sc::evaluate(sc::find_case("young-1.1"), -1, 2, 0.5), hc::DomainError);
  EXPECT_THROW(sc::evaluate(sc::find_case("young-1.1"), 0, 2, 0.5), hc::DomainError);
  EXPECT_NO_THROW(sc::evaluate(sc::find_case("zw-1.5"), 1, 2, 0.5));
}

TEST(ZouJiang, BranchesMeetAtQuarterPoints) {
  for (double nu : {0.25, 0.75}) {
    const auto r = sc::evaluate(sc::find_case("zj-1.17"), 9, 4, nu);
    ASSERT_EQ(r.links.size(), 2u);
    EXPECT_EQ(r.links[0].label, "outer");
    EXPECT_EQ(r.links[1].label, "inner");
    EXPECT_TRUE(r.pass);
  }
  EXPECT_EQ(sc::evaluate(sc::find_case("zj-1.17"), 9, 4, 0.1).links.size(), 1u);
  EXPECT_EQ(sc::evaluate(sc::find_case("zj-1.17"), 9, 4, 0.5).links.at(0).label, "inner");
}

// At nu = 1/2, r = R = 1/2 and the four sides of the combined chain coincide.
TEST(Combined, ChainCollapsesAtHalf) {
  for (double a : {0.25, 1.0, 9.0}) {
    const auto r = sc::evaluate(sc::find_case("comb-2.12"), a, 4, 0.5);
    for (const auto& l : r.links) EXPECT_NEAR(l.slack, 0.0, 1e-12 * l.scale) << l.label;
  }
}

TEST(Property, EveryCaseHoldsOnRandomInputs) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> le(-7.0, 7.0), u(0.0, 1.0);
  for (const auto& c : sc::registry()) {
    int evaluated = 0;
    for (int k = 0; k < 4000; ++k) {
      const double a = std::exp(le(rng)), b = std::exp(le(rng)), nu = u(rng);
      if (c.domain(a, b, nu).is_outside()) continue;
      ++evaluated;
      const auto r = sc::evaluate(c, a, b, nu);
      ASSERT_TRUE(r.pass) << c.id << " a=" << a << " b=" << b << " nu=" << nu;
    }
    EXPECT_GT(evaluated, 1000) << c.id;
  }
}

TEST(Property, SwapMirrorsWeight) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ab(0.01, 100.0), u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = ab(rng), b = ab(rng), nu = u(rng);
    EXPECT_NEAR(sc::weighted_geom(a, b, nu), sc::weighted_geom(b, a, 1.0 - nu),
                1e-13 * sc::weighted_geom(a, b, nu));
    EXPECT_NEAR(sc::weighted_arith(a, b, nu), sc::weighted_arith(b, a, 1.0 - nu), 1e-13 * (a + b));
  }
}

// Heinz means sit between the geometric and arithmetic means.
TEST(Property, HeinzBetweenGeometricAndArithmetic) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ab(0.01, 100.0), u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = ab(rng), b = ab(rng), nu = u(rng);
    const double h = sc::heinz(a, b, nu);
    EXPECT_GE(h, std::sqrt(a * b) * (1 - 1e-14));
    EXPECT_LE(h, 0.5 * (a + b) * (1 + 1e-14));
  }
}

// 1x1 content of the corollary: sqrt(h^2 + c^2) <= h + c for h, c >= 0,
// and h + c <= a + b is the scalar form of its last link.
TEST(Property, CorollaryScalarCore) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ab(0.01, 100.0), u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = ab(rng), b = ab(rng), nu = u(rng);
    const double h = 2.0 * sc::heinz(a, b, nu);
    const double c = nu * (1 - nu) * std::min(1 / a, 1 / b) * (a - b) * (a - b);
    EXPECT_LE(std::sqrt(h * h + c * c), (h + c) * (1 + 1e-15));
    EXPECT_LE(h + c, (a + b) * (1 + 1e-12));
  }
}
