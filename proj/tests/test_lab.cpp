#include <gtest/gtest.h>

#include <cstdlib>

#include "blinksig/catalog.hpp"
#include "blinksig/lab.hpp"

using namespace blinksig;

namespace {

LabParams quick(Suite s, int trials) {
  LabParams p = default_params(s);
  p.trials = trials;
  return p;
}

class ThreadEnv {
 public:
  explicit ThreadEnv(const char* value) { setenv("BLINKSIG_THREADS", value, 1); }
  ~ThreadEnv() { unsetenv("BLINKSIG_THREADS"); }
};

}  // namespace

TEST(Suites, NamesRoundTrip) {
  for (Suite s : all_suites()) EXPECT_EQ(parse_suite(to_string(s)), s);
  EXPECT_THROW(parse_suite("metabolic"), ValidationError);
  EXPECT_EQ(default_params(Suite::metabolic_vanishing).points, 50);
  EXPECT_EQ(default_params(Suite::mirror).points, 10);
}

TEST(Suites, ParameterBounds) {
  LabParams p;
  p.m_max = 4;
  EXPECT_THROW(p.check(), ValidationError);
  p = LabParams{};
  p.trials = 0;
  EXPECT_THROW(run_suite(Suite::mirror, p, 1), ValidationError);
}

TEST(Suites, MetabolicVanishing) {
  const auto r = run_suite(Suite::metabolic_vanishing, quick(Suite::metabolic_vanishing, 200), 7);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_GT(r.checks, 1000);
}

TEST(Suites, Mirror) {
  const auto r = run_suite(Suite::mirror, quick(Suite::mirror, 50), 1);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_TRUE(r.observations.contains("inverse_points"));
}

TEST(Suites, CongruenceRejectsBadMove) {
  LabParams p = quick(Suite::congruence_invariance, 100);
  p.inject_bad_q = true;
  const auto r = run_suite(Suite::congruence_invariance, p, 3);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_EQ(r.rejected_moves, 100);
}

TEST(Suites, RemainingSuitesPass) {
  for (Suite s : {Suite::additivity, Suite::local_constancy, Suite::alexander_consistency}) {
    const auto r = run_suite(s, quick(s, 100), 11);
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
    EXPECT_GT(r.checks, 0);
  }
}

TEST(Suites, DeterministicAndThreadIndependent) {
  for (Suite s : all_suites()) {
    const LabParams p = quick(s, 12);
    std::string one, many;
    {
      ThreadEnv env("1");
      one = run_suite(s, p, 99).to_json().dump();
    }
    {
      ThreadEnv env("4");
      many = run_suite(s, p, 99).to_json().dump();
    }
    EXPECT_EQ(one, many) << to_string(s);
    EXPECT_EQ(run_suite(s, p, 99).to_json().dump(), one);
  }
}

TEST(Suites, ReportShape) {
  const json j = run_suite(Suite::additivity, quick(Suite::additivity, 3), 5).to_json();
  for (const char* key : {"suite", "seed", "params", "checks", "skipped_ambiguous", "failures", "passed"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("suite"), "additivity");
}

TEST(Loci, TrefoilAgreesEverywhere) {
  const auto r = compare_loci(catalog::trefoil(), 1, 6, 4);
  ASSERT_FALSE(r.crossings.empty());
  for (const auto& c : r.crossings) {
    EXPECT_TRUE(c.agree);
    EXPECT_LT(c.margin_h, 1e-6);
  }
  EXPECT_EQ(r.agreements(), static_cast<int>(r.crossings.size()));
}

TEST(Loci, FigureEightHasNoCrossings) {
  const auto r = compare_loci(catalog::figure_eight(), 1, 6, 4);
  EXPECT_TRUE(r.crossings.empty());
}

TEST(Loci, RandomLinkReports) {
  const auto r = compare_loci(random_link(2, 1, 3, 42), 2, 20, 8, Convention::classical, 64);
  const json j = r.to_json();
  EXPECT_EQ(j.at("scans"), 20);
  EXPECT_TRUE(j.contains("crossings"));
  for (const auto& c : r.crossings) EXPECT_LT(c.margin_h, 1e-6);
}
