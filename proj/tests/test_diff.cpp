// Jacobians, Hessians and Wirtinger derivatives against hand-derived values.

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "ged/diff.hpp"
#include "ged/wirtinger.hpp"

using namespace ged;

namespace {

// F(x, y) = (x² y + sin y, exp(x y))
RealMap sample_map() {
  return make_real_map(2, 2, [](auto x, auto y) {
    y[0] = x[0] * x[0] * x[1] + sin(x[1]);
    y[1] = exp(x[0] * x[1]);
  });
}

Eigen::MatrixXd sample_jacobian(double x, double y) {
  Eigen::MatrixXd j(2, 2);
  j << 2 * x * y, x * x + std::cos(y), y * std::exp(x * y), x * std::exp(x * y);
  return j;
}

std::vector<Eigen::MatrixXd> sample_hessian(double x, double y) {
  const double e = std::exp(x * y);
  Eigen::MatrixXd h0(2, 2), h1(2, 2);
  h0 << 2 * y, 2 * x, 2 * x, -std::sin(y);
  h1 << y * y * e, (1 + x * y) * e, (1 + x * y) * e, x * x * e;
  return {h0, h1};
}

}  // namespace

TEST(Jacobian, AllBackendsMatchHandDerivative) {
  const RealMap m = sample_map();
  const std::vector<double> x = {0.7, -0.4};
  const Eigen::MatrixXd want = sample_jacobian(x[0], x[1]);
  for (Backend b : {Backend::dual_number, Backend::finite_difference, Backend::both}) {
    DiffOptions opt;
    opt.backend = b;
    EXPECT_LT((jacobian(m, x, opt) - want).cwiseAbs().maxCoeff(), b == Backend::finite_difference ? 1e-10 : 1e-14);
  }
}

TEST(Hessian, AllBackendsMatchHandDerivative) {
  const RealMap m = sample_map();
  const std::vector<double> x = {0.7, -0.4};
  const auto want = sample_hessian(x[0], x[1]);
  for (Backend b : {Backend::dual_number, Backend::finite_difference, Backend::both}) {
    DiffOptions opt;
    opt.backend = b;
    const auto got = hessian(m, x, opt);
    for (int k = 0; k < 2; ++k)
      EXPECT_LT((got[k] - want[k]).cwiseAbs().maxCoeff(), b == Backend::finite_difference ? 1e-8 : 1e-13);
  }
}

TEST(Jacobian, RichardsonStepIsFourthOrder) {
  // Halving the step divides the error by about 16.
  const RealMap m = make_real_map(1, 1, [](auto x, auto y) { y[0] = exp(3.0 * x[0]); });
  const std::vector<double> x = {0.2};
  const double exact = 3 * std::exp(0.6);
  const double e1 = std::abs(detail::jacobian_fd(m, x, 0.02)(0, 0) - exact);
  const double e2 = std::abs(detail::jacobian_fd(m, x, 0.01)(0, 0) - exact);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Jacobian, FiniteDifferenceOnlyMapsWork) {
  const RealMap m = make_fd_only_map(1, 1, [](std::span<const double> x, std::span<double> y) { y[0] = x[0] * x[0] * x[0]; });
  const std::vector<double> x = {1.5};
  EXPECT_NEAR(jacobian(m, x)(0, 0), 3 * 1.5 * 1.5, 1e-10);
}

TEST(Jacobian, BackendsThatDisagreeAreReported) {
  // The double evaluator and the dual evaluators compute different functions.
  EvalTuple fns;
  std::get<EvalFn<double>>(fns) = [](std::span<const double> x, std::span<double> y) { y[0] = 2.0 * x[0]; };
  std::get<EvalFn<Dual<double>>>(fns) = [](std::span<const Dual<double>> x, std::span<Dual<double>> y) { y[0] = 3.0 * x[0]; };
  const RealMap m(1, 1, fns);
  const std::vector<double> x = {0.5};
  EXPECT_THROW(jacobian(m, x), BackendDisagreement);
  DiffOptions opt;
  opt.backend = Backend::dual_number;
  EXPECT_DOUBLE_EQ(jacobian(m, x, opt)(0, 0), 3.0);
}

TEST(Wirtinger, MatchesHolomorphicCalculus) {
  // F(z) = z1² z̄2 + exp(z1):  ∂1 F = 2 z1 z̄2 + e^{z1},  ∂̄2 F = z1²,  ∂2 F = ∂̄1 F = 0.
  const ComplexField F = make_complex_field(2, 1, [](auto z, auto out) { out[0] = z[0] * z[0] * conj(z[1]) + exp(z[0]); });
  const std::complex<double> z1(0.3, -0.2), z2(-0.1, 0.4);
  const std::vector<Cplx<double>> z = {Cplx<double>(z1), Cplx<double>(z2)};
  const auto w = wirtinger_first(F, z);
  EXPECT_NEAR(std::abs(w.d(0, 0) - (2.0 * z1 * std::conj(z2) + std::exp(z1))), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(w.d(0, 1)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(w.dbar(0, 0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(w.dbar(0, 1) - z1 * z1), 0.0, 1e-13);
  const auto s = wirtinger_second(F, z);
  // ∂1∂1 F = 2 z̄2 + e^{z1},  ∂1∂̄2 F = 2 z1
  EXPECT_NEAR(std::abs(s.dd[0](0, 0) - (2.0 * std::conj(z2) + std::exp(z1))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.ddbar[0](0, 1) - 2.0 * z1), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.dbardbar[0](1, 1)), 0.0, 1e-12);
}

TEST(Wirtinger, ComplexHessianOfPotential) {
  // ∂∂̄ log(1 + |z|²) = ((1+|z|²)δ − z̄_a z_b)/(1+|z|²)² with entry (a, b) = ∂_a∂̄_b.
  const ScalarField pot = make_real_scalar(ComplexChart::whole(2), [](auto z) {
    return log(1.0 + norm2(z[0]) + norm2(z[1]));
  });
  const std::complex<double> z1(0.2, 0.5), z2(-0.3, 0.1);
  const std::vector<Cplx<double>> z = {Cplx<double>(z1), Cplx<double>(z2)};
  const Form11 H = wirtinger_hessian(pot, z);
  const double q = 1 + std::norm(z1) + std::norm(z2);
  const std::complex<double> zz[2] = {z1, z2};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const std::complex<double> want = ((a == b ? q : 0.0) - std::conj(zz[a]) * zz[b]) / (q * q);
      EXPECT_NEAR(std::abs(H(a, b) - want), 0.0, 1e-12);
    }
}

TEST(NestedWirtinger, MatchesDoubleLevelDerivative) {
  const ComplexField F = make_complex_field(1, 1, [](auto z, auto out) { out[0] = z[0] * z[0] * conj(z[0]); });
  const std::vector<Cplx<double>> z = {Cplx<double>(0.4, -0.3)};
  const auto w = nested_wirtinger<double>(F, z);
  const std::complex<double> zc(0.4, -0.3);
  EXPECT_NEAR(std::abs(to_std(w.d(0, 0)) - 2.0 * zc * std::conj(zc)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(to_std(w.dbar(0, 0)) - zc * zc), 0.0, 1e-14);
}
