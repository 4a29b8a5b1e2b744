// Energy densities, pushforward, symmetric powers and pluri-harmonic residuals.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ged/energy.hpp"
#include "ged/zoo.hpp"

using namespace ged;
using C = std::complex<double>;

namespace {

Eigen::VectorXcd random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = C(nd(rng), nd(rng));
  return v;
}

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
  A << C(0.5, 0.1), C(-0.2, 0.3), C(0.1, -0.4), C(0.7, 0.0);
  return A;
}

}  // namespace

TEST(Energy, IdentityFromSphereChartToDisc) {
  // u = g/h = (1+r²)²/(1−r²)² for the identity of the unit disc.
  const auto tr = triple("fubini-study", "poincare-disc", "identity", {.radius = 0.8});
  for (double r : {0.0, 0.3, 0.7}) {
    const std::vector<Cplx<double>> z = {Cplx<double>(r * 0.6, r * 0.8)};
    const double want = std::pow((1 + r * r) / (1 - r * r), 2);
    EXPECT_NEAR(classical_energy_density(tr, z), want, 1e-12);
    EXPECT_NEAR(generalized_Y(tr, BundlePoint::make(z, Eigen::VectorXcd::Ones(1))), want, 1e-12);
  }
}

TEST(Energy, LinearMapsBetweenFlatSpaces) {
  const Eigen::MatrixXcd A = sample_matrix();
  const auto tr = triple("flat", "flat", "linear", {}, {}, {.matrix = A});
  std::mt19937_64 rng(1);
  const std::vector<Cplx<double>> z = {Cplx<double>(0.1, 0.2), Cplx<double>(-0.3, 0.0)};
  EXPECT_NEAR(classical_energy_density(tr, z), A.squaredNorm(), 1e-12);
  for (int k = 0; k < 5; ++k) {
    const Eigen::VectorXcd W = random_vector(rng, 2), X = random_vector(rng, 2);
    const auto P = BundlePoint::make(z, W);
    EXPECT_NEAR(generalized_Y(tr, P), (A * W).squaredNorm() / W.squaredNorm(), 1e-12);
    EXPECT_NEAR(generalized_Y1(tr, BundlePoint::make(z, X)), (A.transpose() * X).squaredNorm() / X.squaredNorm(), 1e-12);
    EXPECT_NEAR(generalized_Y2(tr, NestedBundlePoint::make(P, X)),
                std::norm((X.transpose() * A * W)(0, 0)) / (X.squaredNorm() * W.squaredNorm()), 1e-12);
  }
}

TEST(Energy, YLiesBetweenRelativeEigenvalues) {
  const auto tr = triple("fubini-study", "poincare-disc", "linear", {.dim = 2, .radius = 0.8}, {.dim = 2},
                         {.matrix = Eigen::MatrixXcd(0.6 * sample_matrix())});
  const std::vector<Cplx<double>> z = {Cplx<double>(0.2, 0.1), Cplx<double>(-0.1, 0.3)};
  const auto j = map_jet(tr.f, z, false);
  const Eigen::MatrixXcd g = tr.g.hermitian()(to_cvec(j.value));
  // Rayleigh quotient of (dᵀ g d̄) against h, both as Hermitian forms acting on W̄.
  const Eigen::MatrixXcd P = pulled_back_metric(g, j.d).conjugate();
  const Eigen::MatrixXcd H = tr.h(z).conjugate();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(P, H);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const double y = generalized_Y(tr, BundlePoint::make(z, random_vector(rng, 2)));
    EXPECT_GE(y, es.eigenvalues()(0) - 1e-12);
    EXPECT_LE(y, es.eigenvalues()(1) + 1e-12);
  }
  EXPECT_NEAR(es.eigenvalues().sum(), classical_energy_density(tr, z), 1e-12);
}

TEST(Energy, PushforwardRecoversTheEnergyDensity) {
  // |∂f|² = m π_*(𝓨) for holomorphic and non-holomorphic maps, complex and real targets.
  struct Case {
    MapTriple tr;
    const char* name;
  };
  const std::vector<Case> cases = {
      {triple("fubini-study", "poincare-disc", "identity", {.dim = 2, .radius = 0.8}, {.dim = 2}), "identity"},
      {triple("fubini-study", "flat", "linear", {.dim = 2}, {.dim = 2}), "linear"},
      {triple("fubini-study", "poincare-disc", "power", {.radius = 0.8}, {}, {.power = 3}), "power"},
      {triple("poincare-disc", "fubini-study", "inclusion", {.radius = 0.9}, {.dim = 2, .radius = 2.0}), "inclusion"},
      {triple("hopf", "flat", "projection", {}, {.dim = 1, .radius = 3.0}), "projection"},
      {triple("fubini-study", "flat", "mixed", {}, {.dim = 1, .radius = 3.0}), "mixed"},
      {triple("fubini-study", "round-sphere", "real-quadratic", {.radius = 0.8}), "real-quadratic"},
      {triple("perturbed", "euclidean", "real-part", {.dim = 2}, {.dim = 1}), "real-part"},
  };
  std::mt19937_64 rng(3);
  for (const auto& c : cases) {
    for (int k = 0; k < 3; ++k) {
      const auto z = c.tr.h.chart().sample(rng, 0.8);
      const auto pc = pushforward_energy_check(c.tr, z, 8);
      EXPECT_LE(pc.residual, 1e-5 * std::max(1.0, pc.energy)) << c.name;
    }
  }
}

TEST(SymmetricPower, CountsAndPermanents) {
  EXPECT_EQ(multisets(3, 2).size(), 6u);
  EXPECT_EQ(multisets(2, 3).size(), 4u);
  EXPECT_EQ(multisets(4, 3).size(), 20u);
  EXPECT_DOUBLE_EQ(multiset_factorial({0, 0, 1, 2, 2, 2}), 2.0 * 6.0);
  Eigen::MatrixXcd a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  // Permanent by cofactor expansion with all plus signs.
  const double want = 1 * (5 * 10 + 6 * 8) + 2 * (4 * 10 + 6 * 7) + 3 * (4 * 8 + 5 * 7);
  EXPECT_NEAR(std::abs(permanent(a) - want), 0.0, 1e-12);
}

TEST(SymmetricPower, InducedMetricGivesPowersOfY) {
  // Sym^k(∂f)(W^{⊗k}) = (∂f W)^{⊗k} and |v^{⊗k}|² = |v|^{2k} in the induced metric, so 𝓨_k = 𝓨^k.
  const auto tr = triple("fubini-study", "poincare-disc", "linear", {.dim = 2, .radius = 0.8}, {.dim = 2},
                         {.matrix = Eigen::MatrixXcd(0.6 * sample_matrix())});
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto P = BundlePoint::make(tr.h.chart().sample(rng, 0.8), random_vector(rng, 2));
    const double y = generalized_Y(tr, P);
    EXPECT_NEAR(generalized_Y_k(tr, P, 1), y, 1e-12);
    for (int k : {2, 3}) EXPECT_NEAR(generalized_Y_k(tr, P, k), std::pow(y, k), 1e-10 * std::pow(y, k));
  }
}

TEST(Pluriharmonic, HolomorphicIntoKahlerAndRealPart) {
  std::mt19937_64 rng(5);
  const auto a = triple("fubini-study", "poincare-disc", "identity", {.dim = 2, .radius = 0.8}, {.dim = 2});
  const auto b = triple("fubini-study", "poincare-disc", "identity", {.radius = 0.8}, {.realify = true}, {.realify = true});
  const auto c = triple("flat", "euclidean", "real-part", {.dim = 2}, {.dim = 1});
  for (const auto* tr : {&a, &b, &c})
    for (int k = 0; k < 5; ++k) {
      const auto z = tr->h.chart().sample(rng, 0.8);
      EXPECT_LE(pluriharmonic_residual(tr->f, tr->g, z).max_abs, 1e-6);
      EXPECT_LE(hermitian_harmonic_residual(*tr, z).norm(), 1e-6);
    }
}

TEST(Pluriharmonic, ModulusSquaredIsNot) {
  // f = |z|² into ℝ: f_{zz̄} = 1.
  const auto h = build_entry("flat", {.dim = 1}).hermitian();
  const auto f = make_real_target_map("modulus", h.chart(), 1, [](auto z, auto out) { out[0] = norm2(z[0]); });
  const std::vector<Cplx<double>> z = {Cplx<double>(0.3, 0.2)};
  const auto r = pluriharmonic_residual(f, build_entry("euclidean", {.dim = 1}).target(), z);
  EXPECT_NEAR(std::abs(r.r[0](0, 0) - 1.0), 0.0, 1e-9);
}

TEST(Constraint, HoldsForPluriharmonicMaps) {
  std::mt19937_64 rng(6);
  const auto a = triple("fubini-study", "poincare-disc", "identity", {.radius = 0.8}, {.realify = true}, {.realify = true});
  const auto b = triple("fubini-study", "poincare-disc", "linear", {.dim = 2, .radius = 0.8}, {.dim = 2, .realify = true},
                        {.matrix = Eigen::MatrixXcd(0.6 * sample_matrix()), .realify = true});
  for (const auto* tr : {&a, &b})
    for (int k = 0; k < 5; ++k) {
      const auto z = tr->h.chart().sample(rng, 0.8);
      const auto c = constraint_D_check(tr->f, tr->g, z);
      EXPECT_TRUE(c.applicable);
      EXPECT_LE(c.value, 1e-6);
    }
  const auto q = triple("fubini-study", "round-sphere", "real-quadratic", {.radius = 0.8});
  EXPECT_FALSE(constraint_D_check(q.f, q.g, std::vector<Cplx<double>>{Cplx<double>(0.3, 0.1)}).applicable);
}

TEST(HatC, NonPositiveOnNonPositiveTargets) {
  std::mt19937_64 rng(7);
  const auto a = triple("fubini-study", "poincare-disc", "identity", {.radius = 0.8}, {.realify = true}, {.realify = true});
  const auto b = triple("fubini-study", "hyperbolic", "real-quadratic", {.radius = 0.5});
  for (const auto* tr : {&a, &b})
    for (int k = 0; k < 10; ++k) EXPECT_LE(hatC_value(*tr, tr->h.chart().sample(rng, 0.8)), 1e-8);
  // Into the round sphere the same contraction is non-negative.
  const auto s = triple("fubini-study", "round-sphere", "real-quadratic", {.radius = 0.8});
  EXPECT_GE(hatC_value(s, std::vector<Cplx<double>>{Cplx<double>(0.2, 0.3)}), -1e-8);
}

TEST(Nef, FlatTargetNeedsNoCorrection) {
  const std::vector<Cplx<double>> y = {Cplx<double>(0.1), Cplx<double>(0.2, 0.1)};
  EXPECT_LT(nef_diagnostic(build_entry("flat", {.dim = 2}).hermitian(), y, 2).epsilon, 1e-9);
  // Fubini–Study: sup R(u,ū,V,V̄)/(|u|²|V|²) = 2 (V = u).
  EXPECT_NEAR(nef_diagnostic(build_entry("fubini-study", {.dim = 2}).hermitian(), y, 1, 512).epsilon, 2.0, 0.2);
}
