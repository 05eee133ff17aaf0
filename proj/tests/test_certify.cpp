#include <gtest/gtest.h>

#include "heinzcert/certify.hpp"

namespace hc = heinzcert;

namespace {

hc::VerifyConfig small(std::vector<std::string> cases, std::size_t trials = 60) {
  hc::VerifyConfig c;
  c.cases = std::move(cases);
  c.trials = trials;
  c.seed = 42;
  return c;
}

const hc::CaseSummary& summary(const hc::CertificationReport& r, const std::string& id) {
  for (const auto& c : r.cases)
    if (c.case_id == id) return c;
  throw std::out_of_range(id);
}

}  // namespace

TEST(Cases, ListingAndGroups) {
  EXPECT_EQ(hc::list_cases().size(), 18u + 8u + 4u);
  for (const auto& c : hc::list_cases(hc::Group::kNorm)) EXPECT_EQ(c.id.rfind("hs-", 0), 0u);
  EXPECT_EQ(hc::group_of("op-2.10"), hc::Group::kOperator);
  EXPECT_FALSE(hc::group_of("op-9.9").has_value());
}

TEST(Cases, ResolveExpandsAndRejects) {
  const auto ops = hc::resolve_cases({"all"}, {hc::Group::kOperator});
  EXPECT_EQ(ops.size(), 8u);
  EXPECT_EQ(hc::resolve_cases({"op-2.3", "op-2.3"}, {}).size(), 1u);
  try {
    hc::resolve_cases({"young-1.1"}, {hc::Group::kOperator});
    FAIL();
  } catch (const hc::UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("op-2.10"), std::string::npos);
  }
}

TEST(ScalarSweep, YoungBoundaryIsTight) {
  hc::ScalarSweepConfig cfg;
  cfg.cases = {"young-1.1"};
  const auto r = hc::scalar_sweep(cfg);
  ASSERT_TRUE(r.pass());
  EXPECT_EQ(r.cases[0].trials, 13u * 13u * 65u);
  EXPECT_NEAR(r.cases[0].min_relative_slack, 0.0, 1e-15);
}

TEST(ScalarSweep, NonDominanceFoundBothWays) {
  const auto nd = hc::find_non_dominance(hc::default_ab_grid(), hc::uniform_nu_grid(64));
  ASSERT_TRUE(nd.tighter.has_value());
  ASSERT_TRUE(nd.looser.has_value());
  EXPECT_LT(nd.tighter->new_slack, nd.tighter->zw_slack);
  EXPECT_GT(nd.looser->new_slack, nd.looser->zw_slack);
}

TEST(ScalarSweep, ReportValidates) {
  hc::ScalarSweepConfig cfg;
  cfg.cases = {"all"};
  cfg.nu_grid = {0.0, 0.25, 0.5, 1.0};
  const auto r = hc::scalar_sweep(cfg);
  EXPECT_TRUE(hc::validate_report(hc::to_json(r)).empty());
  EXPECT_TRUE(r.extras.contains("non_dominance"));
}

TEST(Plan, ScheduleAndOrderedSelection) {
  auto cfg = small({"op-2.7-left"});
  const auto t0 = hc::plan_trial(cfg, "op-2.7-left", 0);
  const auto t6 = hc::plan_trial(cfg, "op-2.7-left", 6);
  EXPECT_EQ(t0.spec.dim, 1u);
  EXPECT_EQ(t6.spec.dim, 2u);
  EXPECT_EQ(t0.nu, 0.0);
  EXPECT_EQ(t6.nu, 1.0 / 32.0);
  EXPECT_EQ(t0.spec.structure, hc::gen::Structure::kOrderedPair);
  EXPECT_TRUE(t6.spec.aux_rank.has_value());
  EXPECT_EQ(hc::plan_trial(cfg, "op-2.3", 0).spec.structure, hc::gen::Structure::kGeneralPd);
  EXPECT_EQ(hc::plan_trial(cfg, "op-2.3", 165).spec.spectrum, hc::default_laws()[1]);
}

TEST(Digest, RoundTrip) {
  auto cfg = small({"hs-2.14"});
  cfg.field = hc::gen::Field::kComplex;
  const auto in = hc::plan_trial(cfg, "hs-2.14", 123);
  std::uint64_t fp = 0;
  const auto back = hc::decode_digest(hc::encode_digest(in, 0xabcdefULL), &fp);
  EXPECT_EQ(fp, 0xabcdefULL);
  EXPECT_EQ(back.spec, in.spec);
  EXPECT_EQ(back.trial, in.trial);
  EXPECT_EQ(back.nu, in.nu);
  EXPECT_EQ(back.tol, in.tol);
}

TEST(Digest, MalformedRejected) {
  for (const char* bad : {"", "v2;case=op-2.3", "v1;case=nope;nu=0;tol=0;fp=0", "v1;case=op-2.3;dim=3",
                          "v1;case=young-1.1;a=1;b=2;nu=0.5;tol=1e-12;fp=zz",
                          "v1;case=young-1.1;a=1;b=2;nu=0.5;tol=1e-12;fp=1;extra=1"}) {
    EXPECT_THROW(hc::decode_digest(bad), hc::UsageError) << bad;
  }
}

TEST(Replay, ReproducesTrialExactly) {
  const auto cfg = small({"op-2.3", "hs-2.14", "op-2.7-right"});
  for (const auto& id : {"op-2.3", "hs-2.14", "op-2.7-right"}) {
    for (std::uint64_t t : {0u, 17u, 59u}) {
      const auto original = hc::run_trial(hc::plan_trial(cfg, id, t));
      const auto again = hc::replay(original.digest);
      EXPECT_TRUE(again.fingerprint_match());
      EXPECT_EQ(hc::to_json(again.report).dump(), hc::to_json(original).dump());
    }
  }
}

TEST(Replay, PerturbedSeedDetected) {
  const auto cfg = small({"op-2.3"});
  const auto r = hc::run_trial(hc::plan_trial(cfg, "op-2.3", 9));
  std::string d = r.digest;
  d.replace(d.find(";seed=42;"), 9, ";seed=43;");
  EXPECT_FALSE(hc::replay(d).fingerprint_match());
}

TEST(Replay, ScalarDigest) {
  hc::ScalarSweepConfig cfg;
  cfg.cases = {"new-2.1"};
  cfg.nu_grid = {0.5};
  const auto r = hc::scalar_sweep(cfg);
  const auto& w = r.cases[0].worst.value();
  const auto again = hc::replay(w.digest);
  EXPECT_TRUE(again.fingerprint_match());
  EXPECT_EQ(hc::to_json(again.report).dump(), hc::to_json(w).dump());
}

TEST(MatrixVerify, ThreadCountDoesNotChangeReport) {
  auto one = small({"op-2.10", "hs-cor"}, 80);
  auto four = one;
  four.threads = 4;
  auto a = hc::to_json(hc::matrix_verify(one)), b = hc::to_json(hc::matrix_verify(four));
  a.erase("wall_time_s");
  b.erase("wall_time_s");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(MatrixVerify, OperatorCasesPassAndValidate) {
  const auto r = hc::matrix_verify(small({"op-2.3", "op-2.7-left", "op-heron-zhao"}, 200));
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(hc::validate_report(hc::to_json(r)).empty());
  EXPECT_GE(r.extras["cases"]["op-2.3"]["max_condition_number"].get<double>(), 1e3);
}

TEST(MatrixVerify, FailuresCarryReplayableDigests) {
  auto cfg = small({"hs-thm8"}, 40);
  cfg.max_failures = 3;
  const auto r = hc::matrix_verify(cfg);
  const auto& s = summary(r, "hs-thm8");
  ASSERT_FALSE(s.pass());
  EXPECT_EQ(s.failures.size(), 3u);
  EXPECT_EQ(s.failures_omitted, s.trials - s.passes - 3);
  const auto again = hc::replay(s.failures[0].digest);
  EXPECT_TRUE(again.fingerprint_match());
  EXPECT_FALSE(again.report.pass);
}

TEST(MatrixVerify, UsageErrors) {
  EXPECT_THROW(hc::matrix_verify(small({"young-1.1"})), hc::UsageError);
  auto cfg = small({"op-2.3"});
  cfg.trials = 0;
  EXPECT_THROW(hc::matrix_verify(cfg), hc::UsageError);
}

TEST(GapProfile, CollapseAtHalfAndColumns) {
  hc::GapProfileConfig cfg;
  cfg.cases = {"op-2.10"};
  cfg.nu_grid = {0.25, 0.5};
  const auto p = hc::gap_profile(cfg);
  ASSERT_EQ(p.columns.size(), 4u);
  for (std::size_t c = 1; c < 4; ++c) EXPECT_NEAR(p.rows[1][c].value(), 0.0, 1e-10);
  EXPECT_EQ(p.to_csv().substr(0, 3), "nu,");
}

TEST(GapProfile, NewBoundSlackZeroOnlyAtEqualityPoint) {
  hc::GapProfileConfig cfg;
  cfg.cases = {"new-2.1"};
  cfg.a = 4;
  cfg.b = 1;
  const auto p = hc::gap_profile(cfg);
  for (const auto& row : p.rows) {
    if (row[1]) EXPECT_GT(*row[1], 0.5);  // (4, 1): no equality anywhere
  }
  cfg.a = cfg.b = 2;
  const auto q = hc::gap_profile(cfg);
  EXPECT_NEAR(q.rows.back()[1].value(), 0.0, 1e-15);  // nu = 1
  EXPECT_GT(q.rows[q.rows.size() - 2][1].value(), 0.0);
}

TEST(GapProfile, ComparisonColumn) {
  hc::GapProfileConfig cfg;
  cfg.cases = {"new-2.1", "zw-1.5", "zw-1.6"};
  cfg.a = 1.0 / 64;
  cfg.b = 64;
  const auto p = hc::gap_profile(cfg);
  EXPECT_EQ(p.columns.back(), "new-2.1-minus-zw:L2");
}
