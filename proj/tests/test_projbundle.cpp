// Projectivized bundles: fiber quadrature, tautological curvature, RC-positivity.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ged/curvature.hpp"
#include "ged/projbundle.hpp"
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

}  // namespace

TEST(FiberQuadrature, VolumeAndSecondMoments) {
  // ∫ W^α W̄^β / |W|² = δ^{αβ}/r and total volume 1.
  for (int r : {2, 3}) {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(r, r);
    EXPECT_NEAR(fiber_integrate([](const Eigen::VectorXcd&) { return 1.0; }, I, 6).value, 1.0, 1e-12);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        auto re = [a, b](const Eigen::VectorXcd& W) { return (W(a) * std::conj(W(b))).real() / W.squaredNorm(); };
        auto im = [a, b](const Eigen::VectorXcd& W) { return (W(a) * std::conj(W(b))).imag() / W.squaredNorm(); };
        EXPECT_NEAR(fiber_integrate(re, I, 6).value, a == b ? 1.0 / r : 0.0, 1e-12);
        EXPECT_NEAR(fiber_integrate(im, I, 6).value, 0.0, 1e-12);
      }
  }
}

TEST(FiberQuadrature, FourthMomentsOfTheSimplex) {
  // |V_k|² are Dirichlet(1,…,1): E t₁² = 2/(r(r+1)), E t₁t₂ = 1/(r(r+1)).
  for (int r : {2, 3, 4}) {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(r, r);
    auto t11 = [](const Eigen::VectorXcd& W) { return std::pow(std::norm(W(0)) / W.squaredNorm(), 2); };
    auto t12 = [](const Eigen::VectorXcd& W) { return std::norm(W(0)) * std::norm(W(1)) / std::pow(W.squaredNorm(), 2); };
    EXPECT_NEAR(fiber_integrate(t11, I, 5).value, 2.0 / (r * (r + 1)), 1e-12);
    EXPECT_NEAR(fiber_integrate(t12, I, 5).value, 1.0 / (r * (r + 1)), 1e-12);
  }
}

TEST(FiberQuadrature, NonStandardFiberMetric) {
  // For diagonal h the moments become δ^{αβ}/(r h_{αᾱ}).
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
  h(0, 0) = 2.0;
  h(1, 1) = 3.0;
  auto f = [&](const Eigen::VectorXcd& W) { return std::norm(W(0)) / (W.adjoint() * h.transpose() * W)(0, 0).real(); };
  EXPECT_NEAR(fiber_integrate(f, h, 6).value, 1.0 / 4.0, 1e-12);
}

TEST(FiberQuadrature, ReportsNonConvergence) {
  auto spike = [](const Eigen::VectorXcd& W) { return 1.0 / (1e-4 + std::norm(W(0)) / W.squaredNorm()); };
  EXPECT_THROW(fiber_integrate(spike, Eigen::MatrixXcd::Identity(2, 2), 2), QuadratureError);
}

TEST(BundlePoint, AffineCoordinatesAndPivot) {
  Eigen::VectorXcd W(3);
  W << C(0.1, 0.0), C(0.0, 2.0), C(-0.5, 0.5);
  const auto P = BundlePoint::make({Cplx<double>(0.1, 0.2)}, W);
  EXPECT_EQ(P.pivot, 1);
  ASSERT_EQ(P.w.size(), 2u);
  EXPECT_NEAR(std::abs(to_std(P.w[0]) - W(0) / W(1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_std(P.w[1]) - W(2) / W(1)), 0.0, 1e-15);
  EXPECT_EQ(P.chart_point().size(), 3u);
  EXPECT_THROW(BundlePoint::make({}, Eigen::VectorXcd::Zero(2)), Error);
  Eigen::VectorXcd W2(2);
  W2 << C(1.0), C(0.0);
  EXPECT_THROW(BundlePoint::make({}, W2, 1), Error);
}

TEST(Tautological, FlatBaseGivesFubiniStudyFiber) {
  // Over a flat base the fiber block is −∂∂̄ log(1 + |w|²) = −1/(1+|w|²)² and the base block vanishes.
  const TautologicalMetric tm(build_entry("flat", {.dim = 2}).hermitian());
  Eigen::VectorXcd W(2);
  W << C(1.0), C(0.3, -0.4);
  const auto P = BundlePoint::make({Cplx<double>(0.1), Cplx<double>(0.0, 0.2)}, W, 0);
  const Form11 c = tautological_curvature(tm, P);
  const double q = 1 + std::norm(W(1));
  EXPECT_NEAR(std::abs(c(2, 2) + 1.0 / (q * q)), 0.0, 1e-9);
  EXPECT_LT(c.block(0, 2).max_abs(), 1e-9);
}

TEST(Tautological, HorizontalValueIsTheCurvatureContraction) {
  // At normal points: (∂∂̄ log 𝓗⁻¹)((W,0), (W,0)) = R(W, W̄, W, W̄)/𝓗.
  struct Case {
    const char* name;
    std::vector<Cplx<double>> p;
  };
  const std::vector<Case> cases = {{"fubini-study", {Cplx<double>(0.3, 0.1), Cplx<double>(-0.2, 0.4)}},
                                   {"poincare-disc", {Cplx<double>(0.2, -0.3), Cplx<double>(0.1, 0.1)}},
                                   {"perturbed", {Cplx<double>(0.25, 0.0), Cplx<double>(0.1, -0.35)}}};
  std::mt19937_64 rng(3);
  for (const auto& cs : cases) {
    const auto h = build_entry(cs.name, {.dim = 2}).hermitian();
    const auto nc = hermitian_normal_coordinates(h, cs.p);
    const TautologicalMetric tm(nc.metric);
    const std::vector<Cplx<double>> origin(2);
    const auto R = chern_curvature(nc.metric, origin);
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXcd W = random_vector(rng, 2);
      const auto P = BundlePoint::make(origin, W);
      const double want = R.contract(W, W, W, W).real() / W.squaredNorm();
      EXPECT_NEAR(horizontal_curvature_value(tm, P), want, 1e-5 * std::max(1.0, std::abs(want))) << cs.name;
    }
    // Away from normal coordinates the precondition is enforced.
    EXPECT_THROW(horizontal_curvature_value(TautologicalMetric(h), BundlePoint::make(cs.p, random_vector(rng, 2))),
                 PreconditionError);
  }
}

TEST(RcPositive, FubiniStudyPlaneIsPositive) {
  const TautologicalMetric tm(build_entry("fubini-study", {.dim = 2}).hermitian());
  std::mt19937_64 rng(4);
  std::vector<BundlePoint> sample;
  for (int k = 0; k < 20; ++k) {
    const auto z = tm.h.chart().sample(rng);
    sample.push_back(BundlePoint::make(z, random_vector(rng, 2)));
  }
  const auto r = rc_positive_line_bundle(tm, sample);
  EXPECT_TRUE(r.all_positive);
  for (const auto& p : r.points) EXPECT_GT(p.base_max_eigenvalue, 1e-8);
}

TEST(RcPositive, FlatTorusHasNoPositiveBaseDirection) {
  const TautologicalMetric tm(build_entry("torus", {.dim = 2}).hermitian());
  std::mt19937_64 rng(5);
  std::vector<BundlePoint> sample;
  for (int k = 0; k < 20; ++k) sample.push_back(BundlePoint::make(tm.h.chart().sample(rng), random_vector(rng, 2)));
  const auto r = rc_positive_line_bundle(tm, sample);
  EXPECT_FALSE(r.all_positive);
  for (const auto& p : r.points) {
    EXPECT_LE(p.base_max_eigenvalue, 1e-8);
    EXPECT_LE(p.max_eigenvalue, 1e-8);
  }
}

TEST(Weighted, ConformalWeightShiftsTheCurvature) {
  // φ = |z|² adds ∂∂̄φ = δ to the base block of −∂∂̄ log 𝓗 + ∂∂̄φ.
  const auto h = build_entry("fubini-study", {.dim = 2}).hermitian();
  const ScalarField phi = make_real_scalar(ComplexChart::whole(4), [](auto zw) { return norm2(zw[0]) + norm2(zw[1]); });
  Eigen::VectorXcd W(2);
  W << C(0.4, 0.1), C(1.0);
  const auto P = BundlePoint::make({Cplx<double>(0.2), Cplx<double>(0.1, 0.1)}, W);
  const Form11 d = tautological_curvature(TautologicalMetric(h, phi), P) - tautological_curvature(TautologicalMetric(h), P);
  EXPECT_NEAR(std::abs(d(0, 0) - 1.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(d(1, 1) - 1.0), 0.0, 1e-8);
  EXPECT_LT(std::abs(d(0, 1)) + std::abs(d(2, 2)), 1e-8);
  EXPECT_NEAR(weighted_H(TautologicalMetric(h, phi), P), tautological_H(TautologicalMetric(h), P) * std::exp(-0.06), 1e-14);
}
