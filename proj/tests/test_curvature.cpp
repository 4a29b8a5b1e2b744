// Chern and Riemann curvature against symbolic constant-curvature tensors.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ged/curvature.hpp"
#include "ged/zoo.hpp"

using namespace ged;
using C = std::complex<double>;

namespace {

std::vector<Cplx<double>> random_point(std::mt19937_64& rng, int m, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Cplx<double>> z(m);
  double s = 0;
  for (auto& c : z) {
    c = Cplx<double>(u(rng), u(rng));
    s += norm2(c);
  }
  const double scale = radius * std::uniform_real_distribution<double>(0.05, 1.0)(rng) / std::sqrt(s);
  for (auto& c : z) c = c * scale;
  return z;
}

std::vector<double> random_real(std::mt19937_64& rng, int n, double radius) {
  std::uniform_real_distribution<double> u(-radius / std::sqrt(n), radius / std::sqrt(n));
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

Eigen::MatrixXcd fs_matrix(const std::vector<Cplx<double>>& z, double sign) {
  const int m = static_cast<int>(z.size());
  double q = 1;
  for (const auto& c : z) q += sign * norm2(c);
  Eigen::MatrixXcd h(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      h(a, b) = (a == b ? q : 0.0) / (q * q) - sign * std::conj(to_std(z[a])) * to_std(z[b]) / (q * q);
  return h;
}

}  // namespace

TEST(Chern, FlatMetricHasZeroCurvature) {
  const auto h = build_entry("flat", {.dim = 3}).hermitian();
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) EXPECT_LT(chern_curvature(h, random_point(rng, 3, 0.9)).max_abs(), 1e-10);
}

TEST(Chern, FubiniStudyOneDimensionalClosedForm) {
  // h = (1+r²)^{-2}: −∂∂̄h + |∂h|²/h = 2/(1+r²)⁴.
  const auto h = build_entry("fubini-study").hermitian();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto z = random_point(rng, 1, 0.9);
    const double q = 1 + norm2(z[0]);
    EXPECT_NEAR(std::abs(chern_curvature(h, z)(0, 0, 0, 0) - 2.0 / std::pow(q, 4)), 0.0, 1e-9);
  }
}

TEST(Chern, ConstantHolomorphicSectionalCurvatureTensor) {
  // HSC ≡ c for a Kähler metric means R_{ab̄cd̄} = (c/2)(h_{ab̄}h_{cd̄} + h_{ad̄}h_{cb̄}).
  struct Case {
    const char* name;
    double c, sign, radius;
  };
  for (const Case cs : {Case{"fubini-study", 2.0, 1.0, 0.9}, Case{"poincare-disc", -2.0, -1.0, 0.8}}) {
    for (int m : {1, 2}) {
      const auto h = build_entry(cs.name, {.dim = m, .radius = cs.radius + 0.05}).hermitian();
      std::mt19937_64 rng(3);
      for (int k = 0; k < 10; ++k) {
        const auto z = random_point(rng, m, cs.radius);
        const Eigen::MatrixXcd H = fs_matrix(z, cs.sign);
        const auto R = chern_curvature(h, z);
        double err = 0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
              for (int d = 0; d < m; ++d)
                err = std::max(err, std::abs(R(a, b, c, d) - 0.5 * cs.c * (H(a, b) * H(c, d) + H(a, d) * H(c, b))));
        EXPECT_LT(err, 1e-7) << cs.name << " m=" << m;
        EXPECT_LT(R.hermitian_defect(), 1e-8);
        EXPECT_LT(R.kahler_defect(), 1e-7);
      }
    }
  }
}

TEST(Chern, HolomorphicSectionalAndBisectional) {
  const auto h = build_entry("fubini-study", {.dim = 2}).hermitian();
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    const auto z = random_point(rng, 2, 0.8);
    Eigen::VectorXcd v(2);
    v << C(0.3, 0.1), C(-0.5, 0.8);
    EXPECT_NEAR(holomorphic_sectional_curvature(h, z, v), 2.0, 1e-6);
    // For an h-orthonormal pair the bisectional curvature of HSC 2 is 1.
    const Eigen::MatrixXcd H = h(z);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const Eigen::MatrixXcd frame = es.operatorInverseSqrt().conjugate();
    EXPECT_NEAR(holomorphic_bisectional_curvature(h, z, frame.col(0), frame.col(1)), 1.0, 1e-6);
  }
}

TEST(Chern, HopfMetricIsNotKahler) {
  const auto h = build_entry("hopf").hermitian();
  const std::vector<Cplx<double>> z = {Cplx<double>(0.7, 0.2), Cplx<double>(-0.4, 0.6)};
  EXPECT_GT(chern_curvature(h, z).kahler_defect(), 1e-2);
}

TEST(Chern, TransformsAsATensorUnderNormalCoordinates) {
  const auto h = build_entry("perturbed", {.dim = 2}).hermitian();
  const std::vector<Cplx<double>> p = {Cplx<double>(0.2, -0.1), Cplx<double>(0.3, 0.25)};
  const auto nc = hermitian_normal_coordinates(h, p);
  const std::vector<Cplx<double>> origin(2);
  const auto jet = hermitian_jet(nc.metric, origin, false);
  const auto nd = normal_defects(jet);
  EXPECT_LT(nd.value, 1e-10);
  EXPECT_LT(nd.derivative, 1e-8);
  // At the center dz = A dξ, so R'(u,v,w,x) = R(Au, Av, Aw, Ax).
  const auto R0 = chern_curvature(h, p);
  const auto R1 = chern_curvature(nc.metric, origin);
  Eigen::VectorXcd u(2), v(2);
  u << C(1.0, 0.2), C(-0.3, 0.5);
  v << C(0.1, -0.7), C(0.4, 0.0);
  const auto A = nc.linear;
  EXPECT_NEAR(std::abs(R1.contract(u, v, v, u) - R0.contract(A * u, A * v, A * v, A * u)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(R1.contract(u, u, v, v) - R0.contract(A * u, A * u, A * v, A * v)), 0.0, 1e-6);
}

TEST(Riemann, EuclideanHasZeroCurvatureAndChristoffels) {
  const auto g = build_entry("euclidean", {.dim = 3}).riemannian();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const auto r = riemann_curvature(g, random_real(rng, 3, 2.0));
    double m = 0;
    for (double v : r.r) m = std::max(m, std::abs(v));
    EXPECT_LT(m, 1e-10);
    EXPECT_LT(r.gamma.max_abs(), 1e-10);
  }
}

TEST(Riemann, ConformalChristoffelSymbols) {
  // g = e^{2σ}δ with σ = log 2 − log(1+|x|²): Γ^i_{jk} = δ_ij σ_k + δ_ik σ_j − δ_jk σ_i.
  const auto g = build_entry("round-sphere", {.dim = 3}).riemannian();
  const std::vector<double> x = {0.3, -0.6, 0.2};
  const double q = 1 + x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  const auto G = levi_civita_christoffels(g, x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        auto s = [&](int a) { return -2 * x[a] / q; };
        const double want = (i == j) * s(k) + (i == k) * s(j) - (j == k) * s(i);
        EXPECT_NEAR(G(i, j, k), want, 1e-9);
      }
}

TEST(Riemann, ConstantSectionalCurvatureTensor) {
  // R(X,Y,Y,X) = K(|X|²|Y|² − ⟨X,Y⟩²), so R_{ijkl} = K(g_il g_jk − g_ik g_jl).
  struct Case {
    const char* name;
    double K, radius;
  };
  for (const Case cs : {Case{"round-sphere", 1.0, 2.0}, Case{"hyperbolic", -1.0, 0.85}}) {
    for (int n : {2, 3}) {
      const auto g = build_entry(cs.name, {.dim = n}).riemannian();
      std::mt19937_64 rng(6);
      for (int t = 0; t < 10; ++t) {
        const auto x = random_real(rng, n, cs.radius);
        const auto r = riemann_curvature(g, x);
        const Eigen::MatrixXd G = g(x);
        double err = 0, scale = 0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                const double want = cs.K * (G(i, l) * G(j, k) - G(i, k) * G(j, l));
                err = std::max(err, std::abs(r(i, j, k, l) - want));
                scale = std::max(scale, std::abs(want));
              }
        EXPECT_LT(err, 1e-6 * std::max(1.0, scale)) << cs.name << " n=" << n;
        Eigen::VectorXd X = Eigen::VectorXd::Unit(n, 0), Y = Eigen::VectorXd::Unit(n, 1);
        EXPECT_NEAR(riemannian_sectional_curvature(g, x, X + 0.3 * Y, Y), cs.K, 1e-5);
      }
    }
  }
}

TEST(Riemann, ComplexSectionalCurvatureSigns) {
  const auto hyp = build_entry("hyperbolic", {.dim = 3}).riemannian();
  const auto sph = build_entry("round-sphere", {.dim = 3}).riemannian();
  const std::vector<double> x = {0.1, 0.2, -0.3};
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXcd z(3), w(3);
    for (int i = 0; i < 3; ++i) {
      z(i) = C(nd(rng), nd(rng));
      w(i) = C(nd(rng), nd(rng));
    }
    EXPECT_LE(complex_sectional_curvature(hyp, x, z, w), 1e-8);
    EXPECT_GE(complex_sectional_curvature(sph, x, z, w), -1e-8);
  }
}

TEST(Riemann, RealifiedHermitianMetricDoublesTheRealPart) {
  const auto h = build_entry("poincare-disc").hermitian();
  const auto g = realify(h);
  const std::vector<Cplx<double>> z = {Cplx<double>(0.3, -0.4)};
  const std::vector<double> x = {0.3, -0.4};
  const double hv = h(z)(0, 0).real();
  const Eigen::MatrixXd G = g(x);
  EXPECT_NEAR(G(0, 0), 2 * hv, 1e-14);
  EXPECT_NEAR(G(1, 1), 2 * hv, 1e-14);
  EXPECT_NEAR(G(0, 1), 0.0, 1e-14);
}

TEST(Key3, HoldsAtNormalPoints) {
  struct Case {
    const char* name;
    std::vector<double> p;
  };
  for (const Case& cs : {Case{"round-sphere", {0.4, -0.2}}, Case{"hyperbolic", {0.3, 0.1}}, Case{"euclidean", {1.0, 2.0}}}) {
    const auto g = build_entry(cs.name).riemannian();
    const auto ng = riemannian_normal_coordinates(g, cs.p);
    const std::vector<double> origin(2, 0.0);
    const auto r = key3_check(ng, origin);
    EXPECT_LE(r.residual, 1e-6) << cs.name;
  }
}

TEST(Key3, RequiresANormalPoint) {
  const auto g = build_entry("round-sphere").riemannian();
  const std::vector<double> p = {0.4, -0.2};
  EXPECT_THROW(key3_check(g, p), PreconditionError);
}

TEST(RcPositive, SphereYesEuclideanNo) {
  const auto grid = sphere_grid(2, 24);
  const std::vector<std::vector<double>> pts = {{0.0, 0.0}, {0.5, -0.3}, {1.2, 0.7}};
  for (const auto& p : rc_positive_riemannian(build_entry("round-sphere").riemannian(), pts, grid, grid))
    EXPECT_TRUE(p.rc_positive);
  for (const auto& p : rc_positive_riemannian(build_entry("euclidean").riemannian(), pts, grid, grid)) {
    EXPECT_FALSE(p.rc_positive);
    EXPECT_LT(std::abs(p.worst_sup), 1e-10);
  }
}

TEST(Curvature, RejectsPointsOutsideTheChart) {
  const auto h = build_entry("poincare-disc").hermitian();
  const std::vector<Cplx<double>> z = {Cplx<double>(0.99, 0.0)};
  EXPECT_THROW(chern_curvature(h, z), BoundaryError);
}
