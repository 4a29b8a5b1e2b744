// Exact identities, inequality suites, the probe and the suite runner.

#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ged/verify.hpp"
#include "ged/zoo.hpp"

using namespace ged;
using C = std::complex<double>;

namespace {

ZooParams with_source(ZooParams p, ComplexChart c) {
  p.source = std::move(c);
  return p;
}

MapTriple triple(const char* src, const char* tgt, const char* map, ZooParams sp = {}, ZooParams tp = {},
                 ZooParams mp = {}) {
  const auto h = build_entry(src, sp).hermitian();
  return MapTriple(h, build_entry(tgt, tp).target(), build_entry(map, with_source(mp, h.chart())).map());
}

Eigen::MatrixXcd sample_matrix() {
  Eigen::MatrixXcd A(2, 2);
  A << C(0.3, 0.05), C(-0.1, 0.15), C(0.05, -0.2), C(0.35, 0.0);
  return A;
}

MapTriple fs_to_disc(int m) {
  return m == 1 ? triple("fubini-study", "poincare-disc", "identity", {.radius = 0.8})
                : triple("fubini-study", "poincare-disc", "linear", {.dim = 2, .radius = 0.8}, {.dim = 2},
                         {.matrix = sample_matrix()});
}

MapTriple realified_disc() {
  return triple("fubini-study", "poincare-disc", "identity", {.radius = 0.8}, {.realify = true}, {.realify = true});
}

std::vector<SamplePoint> points(const MapTriple& tr, int n, std::uint64_t seed = 3) {
  return sample_points(tr, n, seed, 0.8);
}

}  // namespace

TEST(ExactIdentity, HolomorphicTriples) {
  const std::vector<MapTriple> cases = {fs_to_disc(1), fs_to_disc(2),
                                        triple("perturbed", "fubini-study", "linear", {.dim = 2}, {.dim = 2, .radius = 2.0})};
  for (const auto& tr : cases)
    for (const auto& sp : points(tr, 10)) EXPECT_LE(verify_exact_identity(SuiteId::exact_holo, tr, sp.P).residual, 1e-4);
}

TEST(ExactIdentity, PluriharmonicTriples) {
  const std::vector<MapTriple> cases = {
      realified_disc(),
      triple("fubini-study", "poincare-disc", "linear", {.dim = 2, .radius = 0.8}, {.dim = 2, .realify = true},
             {.matrix = sample_matrix(), .realify = true})};
  for (const auto& tr : cases)
    for (const auto& sp : points(tr, 10)) {
      const auto r = verify_exact_identity(SuiteId::exact_pluri, tr, sp.P);
      EXPECT_LE(r.residual, 1e-4);
      EXPECT_LE(r.curvature_discrepancy, 1e-6);
    }
}

TEST(ExactIdentity, VariantMustMatchTheTarget) {
  const auto tr = fs_to_disc(1);
  EXPECT_THROW(verify_exact_identity(SuiteId::exact_pluri, tr, points(tr, 1)[0].P), MapError);
  EXPECT_THROW(verify_exact_identity(SuiteId::S1, tr, points(tr, 1)[0].P), Error);
}

TEST(WForm, SemiPositiveForBothVariants) {
  for (const auto& tr : {fs_to_disc(2), realified_disc()})
    for (const auto& sp : points(tr, 10)) EXPECT_GE(min_eigenvalue(assemble_W_form(tr, sp.P)), -1e-8);
}

TEST(Inequality, ConformalFamilyWithZeroWeightIsS1) {
  const auto tr = fs_to_disc(2);
  const ScalarField zero = make_real_scalar(ComplexChart::whole(4), [](auto zw) { return 0.0 * norm2(zw[0]); });
  for (const auto& sp : points(tr, 5)) {
    const auto a = verify_form_inequality(SuiteId::S1, tr, sp);
    const auto b = verify_form_inequality(SuiteId::S03, tr, sp, zero);
    EXPECT_LE((a.lhs - b.lhs).max_abs(), 1e-10);
    EXPECT_LE((a.rhs - b.rhs).max_abs(), 1e-10);
  }
}

TEST(Inequality, S1DecomposesIntoWTautologicalAndCurvatureTerms) {
  // LHS − 𝓦/𝓗 − 𝓨·Taut equals RHS − 𝓨·Taut (the curvature term alone).
  const auto tr = fs_to_disc(2);
  for (const auto& sp : points(tr, 5)) {
    const auto r = verify_form_inequality(SuiteId::S1, tr, sp);
    const TautologicalMetric tm(tr.h);
    // 𝓦 is assembled at the affine fiber vector W/W^pivot.
    const double H = tautological_H(tm, BundlePoint::make(sp.P.z, sp.P.affine())), Y = generalized_Y(tr, sp.P);
    const Form11 taut = tautological_curvature(tm, sp.P);
    const Form11 left = r.lhs - (1.0 / H) * assemble_W_form(tr, sp.P) - Y * taut;
    const Form11 right = r.rhs - Y * taut;
    EXPECT_LE((left - right).max_abs(), 1e-5);
  }
}

TEST(Inequality, S11MatchesS1AfterComplexification) {
  const auto holo = fs_to_disc(1);
  const auto real = realified_disc();
  for (const auto& sp : points(holo, 5)) {
    const auto a = verify_form_inequality(SuiteId::S1, holo, sp);
    const auto b = verify_form_inequality(SuiteId::S11, real, sp);
    EXPECT_LE((a.lhs - b.lhs).max_abs(), 1e-5);
    EXPECT_LE((a.rhs - b.rhs).max_abs(), 1e-5);
  }
}

TEST(Inequality, FormSuitesHoldOnHolomorphicTriples) {
  for (int m : {1, 2}) {
    const auto tr = fs_to_disc(m);
    for (const auto& sp : points(tr, 5))
      for (SuiteId s : {SuiteId::S1, SuiteId::S01, SuiteId::S2, SuiteId::S3, SuiteId::S03}) {
        std::optional<ScalarField> phi;
        if (s == SuiteId::S03) phi = default_conformal_weight(tr.h.chart());
        const auto r = verify_form_inequality(s, tr, sp, phi);
        EXPECT_GE(r.min_eigenvalue, -1e-6 * r.scale) << suite_name(s) << " m=" << m;
      }
  }
}

TEST(Inequality, FlatScalarTargetForSMinus1) {
  const auto tr = triple("fubini-study", "flat", "projection", {.dim = 2, .radius = 0.8}, {.dim = 1, .radius = 3.0});
  for (const auto& sp : points(tr, 5)) {
    EXPECT_EQ(point_applicability(SuiteId::S_minus1, tr, sp.P.z), "");
    const auto r = verify_form_inequality(SuiteId::S_minus1, tr, sp);
    EXPECT_GE(r.min_eigenvalue, -1e-6 * r.scale);
  }
  EXPECT_NE(point_applicability(SuiteId::S_minus1, fs_to_disc(1), points(fs_to_disc(1), 1)[0].P.z), "");
}

TEST(Inequality, TraceSuites) {
  const auto a = fs_to_disc(2);
  for (const auto& sp : points(a, 5)) {
    const auto t = verify_trace_inequality(SuiteId::S02, a, sp.P.z);
    EXPECT_GE(t.value, -1e-6 * t.scale);
  }
  const auto b = realified_disc();
  for (const auto& sp : points(b, 5)) {
    const auto t = verify_trace_inequality(SuiteId::hessian2, b, sp.P.z);
    EXPECT_GE(t.value, -1e-6 * t.scale);
  }
}

TEST(Applicability, RoutesMapKinds) {
  const auto mixed = triple("fubini-study", "flat", "mixed", {}, {.dim = 1, .radius = 3.0});
  EXPECT_EQ(suite_applicability(SuiteId::S1, mixed), "needs a holomorphic map");
  EXPECT_EQ(suite_applicability(SuiteId::S11, fs_to_disc(1)), "needs a Riemannian target");
  const auto quad = triple("fubini-study", "round-sphere", "real-quadratic", {.radius = 0.8});
  EXPECT_EQ(suite_applicability(SuiteId::S11, quad), "");
  EXPECT_NE(point_applicability(SuiteId::S11, quad, points(quad, 1)[0].P.z), "");
  EXPECT_THROW(verify_form_inequality(SuiteId::S1, mixed, points(mixed, 1)[0]), MapError);
}

TEST(Probe, SphereChartIntoDiscIsContradictionShaped) {
  const auto tr = fs_to_disc(1);
  std::vector<BundlePoint> grid;
  for (const auto& sp : points(tr, 30)) grid.push_back(sp.P);
  const auto r = maximum_principle_probe(tr, grid, false);
  EXPECT_GT(r.first, 0.0);
  EXPECT_LT(r.second, 0.0);
  EXPECT_EQ(r.pattern, "contradiction-shaped");
  EXPECT_FALSE(r.conclusion_admissible);
}

TEST(Probe, FlatTorusIsDegenerate) {
  const auto tr = triple("torus", "torus", "identity");
  std::vector<BundlePoint> grid;
  for (const auto& sp : points(tr, 20)) grid.push_back(sp.P);
  const auto r = maximum_principle_probe(tr, grid, true);
  EXPECT_LE(std::abs(r.first), 1e-8);
  EXPECT_LE(std::abs(r.second), 1e-8);
  EXPECT_EQ(r.pattern, "degenerate");
  const auto c = triple("fubini-study", "poincare-disc", "constant", {.radius = 0.8}, {}, {.value = {C(0.1)}});
  EXPECT_EQ(maximum_principle_probe(c, grid, false).pattern, "vacuous");
}

TEST(Runner, DeterministicAcrossWorkerCounts) {
  const VerificationCase c{"fs", fs_to_disc(2), std::nullopt, false};
  RunSettings a;
  a.samples = 8;
  a.workers = 1;
  RunSettings b = a;
  b.workers = 4;
  for (SuiteId s : {SuiteId::S1, SuiteId::exact_holo, SuiteId::W_psd}) {
    const auto ra = run_suite(c, s, a), rb = run_suite(c, s, b);
    ASSERT_EQ(ra.points.size(), rb.points.size());
    for (std::size_t k = 0; k < ra.points.size(); ++k) {
      EXPECT_EQ(ra.points[k].residual, rb.points[k].residual);
      EXPECT_EQ(ra.points[k].coordinates, rb.points[k].coordinates);
    }
    EXPECT_EQ(ra.verdict, Verdict::pass);
    std::size_t total = 0;
    for (const auto& bin : ra.histogram) total += bin.count;
    EXPECT_EQ(total, ra.points.size());
  }
}

TEST(Runner, SeedsDependOnCaseAndSuite) {
  EXPECT_NE(suite_seed(1, "a", SuiteId::S1), suite_seed(1, "b", SuiteId::S1));
  EXPECT_NE(suite_seed(1, "a", SuiteId::S1), suite_seed(1, "a", SuiteId::S2));
  EXPECT_NE(suite_seed(1, "a", SuiteId::S1), suite_seed(2, "a", SuiteId::S1));
  EXPECT_EQ(suite_seed(7, "a", SuiteId::S3), suite_seed(7, "a", SuiteId::S3));
}

TEST(Runner, VerdictsForNonApplicableAndFailingCases) {
  RunSettings cfg;
  cfg.samples = 4;
  const VerificationCase mixed{"mixed", triple("fubini-study", "flat", "mixed", {}, {.dim = 1, .radius = 3.0}),
                               std::nullopt, false};
  EXPECT_EQ(run_suite(mixed, SuiteId::S1, cfg).verdict, Verdict::not_applicable);
  // A negative tolerance band cannot be met by a semi-positive form.
  cfg.tol.w_psd = -1e3;
  const VerificationCase fs{"fs", fs_to_disc(1), std::nullopt, false};
  const auto r = run_suite(fs, SuiteId::W_psd, cfg);
  EXPECT_EQ(r.verdict, Verdict::fail);
  ASSERT_TRUE(r.worst.has_value());
  EXPECT_FALSE(r.points[*r.worst].eigenvector.empty());
}

TEST(Runner, HolomorphicSuitesRunQuickly) {
  const auto t0 = std::chrono::steady_clock::now();
  RunSettings cfg;
  cfg.samples = 50;
  for (int m : {1, 2}) {
    const VerificationCase c{"fs", fs_to_disc(m), std::nullopt, false};
    EXPECT_EQ(run_suite(c, SuiteId::exact_holo, cfg).verdict, Verdict::pass);
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}
