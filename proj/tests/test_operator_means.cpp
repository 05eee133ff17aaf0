#include <cmath>

#include <gtest/gtest.h>

#include "heinzcert/operator_means.hpp"
#include "heinzcert/random_gen.hpp"
#include "heinzcert/scalar.hpp"

namespace hc = heinzcert;
namespace op = heinzcert::op;
namespace sc = heinzcert::scalar;
using hc::CMatrix;
using hc::HermitianMatrix;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double rel_diff(const HermitianMatrix& x, const HermitianMatrix& y) {
  return max_abs(x.data() - y.data()) / std::max(1.0, std::max(max_abs(x.data()), max_abs(y.data())));
}

hc::gen::GenSpec spec(std::size_t dim, std::uint64_t seed, hc::gen::Structure s = hc::gen::Structure::kGeneralPd) {
  hc::gen::GenSpec g;
  g.dim = dim;
  g.seed = seed;
  g.structure = s;
  g.field = hc::gen::Field::kComplex;
  g.spectrum = hc::gen::SpectrumLaw::log_uniform(0.01, 100.0);
  return g;
}

op::OperatorPair random_pair(std::size_t dim, std::uint64_t seed) {
  hc::gen::Rng rng(seed, 1);
  return hc::gen::gen_pair(spec(dim, seed), rng);
}

double scalar_slack(const char* id, double a, double b, double nu, std::size_t link = 0) {
  const auto& c = sc::find_case(id);
  const auto links = c.links(a, b, nu);
  return links.at(link).rhs - links.at(link).lhs;
}

}  // namespace

TEST(Geom, DiagonalMatchesScalarWithMirroredWeight) {
  const auto a = HermitianMatrix::diagonal(std::vector<double>{9.0, 2.0});
  const auto b = HermitianMatrix::diagonal(std::vector<double>{4.0, 8.0});
  const auto g = op::geom(a, b, 0.25);
  EXPECT_NEAR(g.data()(0, 0).real(), sc::weighted_geom(9, 4, 0.75), 1e-13);
  EXPECT_NEAR(g.data()(1, 1).real(), sc::weighted_geom(2, 8, 0.75), 1e-13);
  EXPECT_NEAR(std::abs(g.data()(0, 1)), 0.0, 1e-14);
}

TEST(Geom, IdentityFirstArgumentGivesPower) {
  const auto p = random_pair(3, 4);
  const auto g = op::geom(HermitianMatrix::identity(3), p.b, 0.3);
  EXPECT_LE(rel_diff(g, hc::mat_pow(p.b, 0.3)), 1e-12);
}

TEST(Geom, EndpointsAreExact) {
  const auto p = random_pair(4, 2);
  const op::GeometricMeanPath path(p.a, p.b);
  EXPECT_EQ(path.at(0.0).data(), p.a.data());
  EXPECT_EQ(path.at(1.0).data(), p.b.data());
}

// Riccati characterization: (A # B) A^-1 (A # B) = B.
TEST(Geom, SolvesRiccati) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_pair(4, seed);
    const auto g = op::geom(p.a, p.b, 0.5);
    const CMatrix r = g.data() * hc::mat_pow(p.a, -1.0).data() * g.data();
    EXPECT_LE(max_abs(r - p.b.data()) / hc::spectral_norm(p.b), 1e-9);
  }
}

TEST(Geom, SwapIdentity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_pair(3, seed);
    for (double nu : {0.0, 0.1, 0.5, 0.8, 1.0}) {
      EXPECT_LE(rel_diff(op::geom(p.a, p.b, nu), op::geom(p.b, p.a, 1.0 - nu)), 1e-9);
    }
  }
}

// S (A #_nu B) S* = (S A S*) #_nu (S B S*) for invertible S.
TEST(Geom, CongruenceCovariance) {
  hc::gen::Rng rng(31, 0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_pair(3, seed);
    const auto s = hc::gen::gen_general(spec(3, seed), rng);
    const auto lhs = hc::congruence(s, op::geom(p.a, p.b, 0.3));
    const auto rhs = op::geom(hc::congruence(s, p.a), hc::congruence(s, p.b), 0.3);
    EXPECT_LE(rel_diff(lhs, rhs), 1e-8);
  }
}

TEST(Geom, MonotoneInSecondArgument) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    hc::gen::GenSpec g = spec(3, seed, hc::gen::Structure::kOrderedPair);
    const auto p = hc::gen::gen_ordered_pair(g);
    const auto c = random_pair(3, seed + 100).a;
    EXPECT_TRUE(hc::is_psd(op::geom(c, p.b, 0.4) - op::geom(c, p.a, 0.4)).psd);
  }
}

TEST(Means, HeinzAndHeronOnDiagonal) {
  const auto a = HermitianMatrix::diagonal(std::vector<double>{9.0});
  const auto b = HermitianMatrix::diagonal(std::vector<double>{4.0});
  EXPECT_NEAR(op::heinz_op(a, b, 0.25).data()(0, 0).real(), sc::heinz(9, 4, 0.25), 1e-13);
  EXPECT_NEAR(op::heron_op(a, b, 0.5).data()(0, 0).real(), sc::heron(9, 4, 0.5), 1e-13);
  EXPECT_NEAR(op::nabla(a, b, 0.25).data()(0, 0).real(), sc::weighted_arith(9, 4, 0.75), 1e-15);
  // harmonic: ((1-nu) a^-1 + nu b^-1)^-1
  EXPECT_NEAR(op::harmonic(a, b, 0.5).data()(0, 0).real(), 2.0 / (1.0 / 9 + 1.0 / 4), 1e-13);
}

TEST(Pair, RejectsNonPositiveAndMismatched) {
  const auto pd = HermitianMatrix::identity(2);
  EXPECT_THROW(op::OperatorPair::make(pd, HermitianMatrix::diagonal(std::vector<double>{1.0, 0.0})), hc::DomainError);
  EXPECT_THROW(op::OperatorPair::make(pd, HermitianMatrix::identity(3)), hc::DomainError);
  EXPECT_THROW(op::OperatorPair::make_ordered(HermitianMatrix::diagonal(std::vector<double>{2.0, 1.0}), pd),
               hc::DomainError);
}

TEST(Certify, OrderedCasesRequireOrder) {
  const auto p = op::OperatorPair::make(HermitianMatrix::diagonal(std::vector<double>{2.0, 1.0}),
                                        HermitianMatrix::identity(2));
  EXPECT_THROW(op::certify_operator(op::find_case("op-2.7-left"), p, 0.3), hc::DomainError);
  EXPECT_NO_THROW(op::certify_operator(op::find_case("op-2.3"), p, 0.3));
}

TEST(Certify, NuZeroVacuous) {
  const auto p = random_pair(2, 1);
  for (const char* id : {"op-2.3", "op-2.5", "op-2.6"}) {
    const auto r = op::certify_operator(op::find_case(id), p, 0.0);
    EXPECT_TRUE(r.vacuous) << id;
    EXPECT_TRUE(r.pass) << id;
  }
}

TEST(Certify, ChainCollapsesAtHalf) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = op::certify_operator(op::find_case("op-2.10"), random_pair(3, seed), 0.5);
    ASSERT_EQ(r.links.size(), 3u);
    for (const auto& l : r.links) EXPECT_LE(std::abs(l.slack), 1e-10 * l.scale) << l.label;
  }
}

TEST(Certify, WitnessIsUnitEigenvector) {
  const auto r = op::certify_operator(op::find_case("op-2.3"), random_pair(4, 3), 0.3);
  ASSERT_TRUE(r.witness.has_value());
  double n = 0.0;
  for (const auto& z : r.witness->vector) n += std::norm(z);
  EXPECT_NEAR(n, 1.0, 1e-12);
}

// On diagonal pairs every gap is diagonal and its entries are scalar slacks.
TEST(CommutingOracle, GapsReduceToScalarSlacks) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    hc::gen::Rng rng(seed, 0);
    const auto p = hc::gen::gen_pair(spec(3, seed, hc::gen::Structure::kDiagonal), rng);
    hc::gen::GenSpec og = spec(3, seed, hc::gen::Structure::kDiagonal);
    const auto q = hc::gen::gen_ordered_pair(og);
    for (double nu : {0.125, 0.5, 0.75, 1.0}) {
      for (std::size_t i = 0; i < 3; ++i) {
        const double a = p.a.data()(i, i).real(), b = p.b.data()(i, i).real();
        auto gap = [&](const char* id, std::size_t link, const op::OperatorPair& pr) {
          return op::find_case(id).gaps(pr, nu).at(link).gap.data()(i, i).real();
        };
        const double tol = 1e-10 * std::max({1.0, a, b}) * std::pow(nu, nu - 2.0);
        EXPECT_NEAR(gap("op-2.5", 0, p), scalar_slack("new-2.1", a, b, nu), tol);
        EXPECT_NEAR(gap("op-2.6", 0, p), scalar_slack("new-2.1", b, a, nu), tol);
        EXPECT_NEAR(gap("op-2.3", 0, p), 0.5 * (scalar_slack("new-2.1", a, b, nu) + scalar_slack("new-2.1", b, a, nu)),
                    tol);
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(gap("op-2.10", k, p), scalar_slack("comb-2.12", a, b, nu, k), tol);
        EXPECT_NEAR(gap("op-heron-zhao", 0, p), scalar_slack("bhatia-heron", a, b, nu), tol);

        const double qa = q.a.data()(i, i).real(), qb = q.b.data()(i, i).real();
        const double qtol = 1e-10 * std::max({1.0, qa, qb}) * std::max(1.0, qb / qa);
        EXPECT_NEAR(gap("op-2.7-left", 0, q),
                    0.5 * (scalar_slack("cf-1.13", qa, qb, nu, 0) + scalar_slack("cf-1.13", qa, qb, 1.0 - nu, 0)), qtol);
        EXPECT_NEAR(gap("op-2.7-right", 0, q),
                    0.5 * (scalar_slack("cf-1.13", qa, qb, nu, 1) + scalar_slack("cf-1.13", qa, qb, 1.0 - nu, 1)), qtol);
      }
    }
  }
}

TEST(Property, EveryCasePassesOnRandomPairs) {
  for (const auto& c : op::op_registry()) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const std::size_t dim = 1 + seed % 5;
      hc::gen::GenSpec g = spec(dim, seed, c.wants_ordered_pair ? hc::gen::Structure::kOrderedPair
                                                                 : hc::gen::Structure::kGeneralPd);
      hc::gen::Rng rng(seed, 2);
      const auto p = hc::gen::gen_pair(g, rng);
      const double nu = static_cast<double>(seed % 17) / 16.0;
      const auto r = op::certify_operator(c, p, nu);
      EXPECT_TRUE(r.pass) << c.id << " seed=" << seed << " nu=" << nu;
    }
  }
}

// Condition numbers near 1e6 put the inner matrix near 1e12; the swap
// identity must still hold to 1e-9.
TEST(Geom, SwapIdentityIllConditioned) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = spec(8, seed);
    g.spectrum = hc::gen::SpectrumLaw::log_uniform(1e-3, 1e3);
    hc::gen::Rng rng(seed, 3);
    const auto p = hc::gen::gen_pair(g, rng);
    const op::GeometricMeanPath ab(p.a, p.b), ba(p.b, p.a);
    for (int k = 1; k < 32; ++k) {
      const double nu = k / 32.0;
      const auto x = ab.at(nu);
      EXPECT_LE((x.data() - ba.at(1.0 - nu).data()).norm(), 1e-9 * (1.0 + x.data().norm())) << seed << " " << nu;
    }
  }
}
