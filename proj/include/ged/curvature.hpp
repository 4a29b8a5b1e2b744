#ifndef GED_CURVATURE_HPP
#define GED_CURVATURE_HPP

// Chern curvature of Hermitian metrics, Levi-Civita data and Riemann
// curvature of Riemannian metrics, derived curvature scalars and normal
// coordinates.
//
// Chern:    R_{ab̄cd̄} = −∂_a∂_b̄ h_{cd̄} + h^{pq̄} ∂_a h_{cq̄} ∂_b̄ h_{pd̄}
//           (the first index pair is the form direction).
// Riemann:  R^l_{ijk} = ∂_iΓ^l_{kj} − ∂_jΓ^l_{ki} + Γ^p_{kj}Γ^l_{pi} − Γ^p_{ki}Γ^l_{pj},
//           R_{ijkl} = g_{sl} R^s_{ijk},  R(X,Y,Z,W) = R_{ijkl}X^iY^jZ^kW^l.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ged/metric.hpp"

namespace ged {

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Chern curvature

struct ChernCurvatureTensor {
  int m = 0;
  std::vector<std::complex<double>> r;

  ChernCurvatureTensor() = default;
  explicit ChernCurvatureTensor(int dim) : m(dim), r(static_cast<std::size_t>(dim * dim * dim * dim)) {}

  std::complex<double>& operator()(int a, int b, int c, int d) { return r[idx(a, b, c, d)]; }
  const std::complex<double>& operator()(int a, int b, int c, int d) const { return r[idx(a, b, c, d)]; }

  // Σ R_{ab̄cd̄} u^a v̄^b w^c x̄^d
  std::complex<double> contract(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, const Eigen::VectorXcd& w,
                                const Eigen::VectorXcd& x) const {
    std::complex<double> s = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) s += (*this)(a, b, c, d) * u(a) * std::conj(v(b)) * w(c) * std::conj(x(d));
    return s;
  }

  double max_abs() const {
    double s = 0.0;
    for (const auto& v : r) s = std::max(s, std::abs(v));
    return s;
  }

  // max |R_{ab̄cd̄} − conj(R_{ba̅dc̄})|
  double hermitian_defect() const {
    double s = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) s = std::max(s, std::abs((*this)(a, b, c, d) - std::conj((*this)(b, a, d, c))));
    return s;
  }

  // max |R_{ab̄cd̄} − R_{cb̄ad̄}|, zero for Kähler metrics
  double kahler_defect() const {
    double s = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) s = std::max(s, std::abs((*this)(a, b, c, d) - (*this)(c, b, a, d)));
    return s;
  }

 private:
  std::size_t idx(int a, int b, int c, int d) const { return static_cast<std::size_t>(((a * m + b) * m + c) * m + d); }
};

inline ChernCurvatureTensor chern_from_jet(const HermitianJet& j) {
  const int m = static_cast<int>(j.h.rows());
  ChernCurvatureTensor r(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          std::complex<double> s = -j.ddbar[a][b](c, d);
          for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) s += j.inv(p, q) * j.d[a](c, q) * j.dbar[b](p, d);
          r(a, b, c, d) = s;
        }
  return r;
}

inline ChernCurvatureTensor chern_curvature(const HermitianMetricField& h, std::span<const Cplx<double>> z) {
  return chern_from_jet(hermitian_jet(h, z));
}

inline void require_nonzero(const Eigen::VectorXcd& v, const char* what) {
  if (!(v.norm() > 0.0)) throw Error(std::string(what) + ": zero tangent vector");
}

inline double hermitian_norm2(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& v) {
  return (v.transpose() * h * v.conjugate())(0, 0).real();
}

inline double holomorphic_sectional_curvature(const ChernCurvatureTensor& r, const Eigen::MatrixXcd& h,
                                              const Eigen::VectorXcd& v) {
  require_nonzero(v, "holomorphic_sectional_curvature");
  const double n2 = hermitian_norm2(h, v);
  return r.contract(v, v, v, v).real() / (n2 * n2);
}

inline double holomorphic_sectional_curvature(const HermitianMetricField& g, std::span<const Cplx<double>> z,
                                              const Eigen::VectorXcd& v) {
  require_nonzero(v, "holomorphic_sectional_curvature");
  const auto j = hermitian_jet(g, z);
  return holomorphic_sectional_curvature(chern_from_jet(j), j.h, v);
}

inline double holomorphic_bisectional_curvature(const HermitianMetricField& g, std::span<const Cplx<double>> z,
                                                const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  require_nonzero(u, "holomorphic_bisectional_curvature");
  require_nonzero(v, "holomorphic_bisectional_curvature");
  const auto j = hermitian_jet(g, z);
  const auto r = chern_from_jet(j);
  return r.contract(u, u, v, v).real() / (hermitian_norm2(j.h, u) * hermitian_norm2(j.h, v));
}

// ---------------------------------------------------------------------------
// Levi-Civita connection and Riemann curvature

struct Christoffel {
  int n = 0;
  std::vector<double> g;  // Γ^i_{jk}

  Christoffel() = default;
  explicit Christoffel(int dim) : n(dim), g(static_cast<std::size_t>(dim * dim * dim), 0.0) {}
  double& operator()(int i, int j, int k) { return g[static_cast<std::size_t>((i * n + j) * n + k)]; }
  double operator()(int i, int j, int k) const { return g[static_cast<std::size_t>((i * n + j) * n + k)]; }
  double max_abs() const {
    double s = 0.0;
    for (double v : g) s = std::max(s, std::abs(v));
    return s;
  }
};

inline Christoffel christoffel_from_jet(const RiemannianJet& j) {
  const int n = static_cast<int>(j.g.rows());
  Christoffel c(n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += j.inv(i, l) * (j.d[a](l, b) + j.d[b](l, a) - j.d[l](a, b));
        c(i, a, b) = 0.5 * s;
      }
  return c;
}

inline Christoffel levi_civita_christoffels(const RiemannianMetricField& g, std::span<const double> x) {
  return christoffel_from_jet(riemannian_jet(g, x, false));
}

// max |∂_k g_{ij} − Γ^l_{ki} g_{lj} − Γ^l_{kj} g_{il}|
inline double metric_compatibility_defect(const RiemannianJet& j, const Christoffel& c) {
  const int n = c.n;
  double s = 0.0;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double v = j.d[k](a, b);
        for (int l = 0; l < n; ++l) v -= c(l, k, a) * j.g(l, b) + c(l, k, b) * j.g(a, l);
        s = std::max(s, std::abs(v));
      }
  return s;
}

// ∂_m Γ^i_{jk}, indexed [m](i,j,k), from first and second metric derivatives.
inline std::vector<Christoffel> christoffel_derivative(const RiemannianJet& j) {
  const int n = static_cast<int>(j.g.rows());
  std::vector<Christoffel> out(static_cast<std::size_t>(n), Christoffel(n));
  for (int m = 0; m < n; ++m) {
    const Eigen::MatrixXd dinv = -j.inv * j.d[m] * j.inv;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += dinv(i, l) * (j.d[a](l, b) + j.d[b](l, a) - j.d[l](a, b));
            s += j.inv(i, l) * (j.dd[m][a](l, b) + j.dd[m][b](l, a) - j.dd[m][l](a, b));
          }
          out[static_cast<std::size_t>(m)](i, a, b) = 0.5 * s;
        }
  }
  return out;
}

struct RiemannCurvatureTensor {
  int n = 0;
  std::vector<double> r;  // R_{ijkl}
  Christoffel gamma;

  RiemannCurvatureTensor() = default;
  explicit RiemannCurvatureTensor(int dim) : n(dim), r(static_cast<std::size_t>(dim * dim * dim * dim), 0.0) {}
  double& operator()(int i, int j, int k, int l) { return r[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return r[idx(i, j, k, l)]; }

  double apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z,
               const Eigen::VectorXd& w) const {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) s += (*this)(i, j, k, l) * x(i) * y(j) * z(k) * w(l);
    return s;
  }

  // Complex-multilinear extension.
  std::complex<double> apply(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                             const Eigen::VectorXcd& w) const {
    std::complex<double> s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) s += (*this)(i, j, k, l) * x(i) * y(j) * z(k) * w(l);
    return s;
  }

  double max_abs() const {
    double s = 0.0;
    for (double v : r) s = std::max(s, std::abs(v));
    return s;
  }

  struct Symmetries {
    double antisym_ij = 0.0;
    double antisym_kl = 0.0;
    double pair = 0.0;
    double bianchi = 0.0;
  };
  Symmetries symmetry_defects() const {
    Symmetries s;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double v = (*this)(i, j, k, l);
            s.antisym_ij = std::max(s.antisym_ij, std::abs(v + (*this)(j, i, k, l)));
            s.antisym_kl = std::max(s.antisym_kl, std::abs(v + (*this)(i, j, l, k)));
            s.pair = std::max(s.pair, std::abs(v - (*this)(k, l, i, j)));
            s.bianchi = std::max(s.bianchi, std::abs(v + (*this)(j, k, i, l) + (*this)(k, i, j, l)));
          }
    return s;
  }

 private:
  std::size_t idx(int i, int j, int k, int l) const { return static_cast<std::size_t>(((i * n + j) * n + k) * n + l); }
};

inline RiemannCurvatureTensor riemann_from_jet(const RiemannianJet& jet) {
  const int n = static_cast<int>(jet.g.rows());
  const Christoffel c = christoffel_from_jet(jet);
  const auto dc = christoffel_derivative(jet);
  // R^l_{ijk}
  std::vector<double> up(static_cast<std::size_t>(n * n * n * n), 0.0);
  auto U = [&](int l, int i, int j, int k) -> double& { return up[static_cast<std::size_t>(((l * n + i) * n + j) * n + k)]; };
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dc[static_cast<std::size_t>(i)](l, k, j) - dc[static_cast<std::size_t>(j)](l, k, i);
          for (int p = 0; p < n; ++p) s += c(p, k, j) * c(l, p, i) - c(p, k, i) * c(l, p, j);
          U(l, i, j, k) = s;
        }
  RiemannCurvatureTensor r(n);
  r.gamma = c;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int q = 0; q < n; ++q) s += jet.g(q, l) * U(q, i, j, k);
          r(i, j, k, l) = s;
        }
  return r;
}

inline RiemannCurvatureTensor riemann_curvature(const RiemannianMetricField& g, std::span<const double> x) {
  return riemann_from_jet(riemannian_jet(g, x));
}

inline constexpr double kDependentPlaneTol = 1e-12;

// R(X,Y,Y,X)/(|X|²|Y|² − ⟨X,Y⟩²)
inline double sectional_curvature(const RiemannCurvatureTensor& r, const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) {
  const double xx = x.dot(g * x), yy = y.dot(g * y), xy = x.dot(g * y);
  const double den = xx * yy - xy * xy;
  if (!(den > kDependentPlaneTol)) throw Error("riemannian_sectional_curvature: vectors are linearly dependent");
  return r.apply(x, y, y, x) / den;
}

inline double riemannian_sectional_curvature(const RiemannianMetricField& g, std::span<const double> x,
                                             const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const auto jet = riemannian_jet(g, x);
  return sectional_curvature(riemann_from_jet(jet), jet.g, X, Y);
}

// R(Z, W̄, W, Z̄)
inline double complex_sectional_curvature(const RiemannCurvatureTensor& r, const Eigen::VectorXcd& z,
                                          const Eigen::VectorXcd& w) {
  if (!(z.norm() > 0.0 || w.norm() > 0.0)) throw Error("complex_sectional_curvature: both vectors vanish");
  return r.apply(z, w.conjugate(), w, z.conjugate()).real();
}

inline double complex_sectional_curvature(const RiemannianMetricField& g, std::span<const double> x,
                                          const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
  return complex_sectional_curvature(riemann_curvature(g, x), z, w);
}

// ---------------------------------------------------------------------------
// Normal points

inline constexpr double kNormalPointTol = 1e-8;

struct NormalDefects {
  double value = 0.0;       // |g − δ|
  double derivative = 0.0;  // |∂g| (Riemannian) or |∂_c h_{ab̄} + ∂_a h_{cb̄}| (Hermitian)
};

inline NormalDefects normal_defects(const RiemannianJet& j) {
  const int n = static_cast<int>(j.g.rows());
  NormalDefects d;
  d.value = (j.g - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  for (const auto& m : j.d) d.derivative = std::max(d.derivative, m.cwiseAbs().maxCoeff());
  return d;
}

inline NormalDefects normal_defects(const HermitianJet& j) {
  const int m = static_cast<int>(j.h.rows());
  NormalDefects d;
  d.value = (j.h - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) d.derivative = std::max(d.derivative, std::abs(j.d[c](a, b) + j.d[a](c, b)));
  return d;
}

// The Christoffel symbols as a field, for differentiation by the engine.
inline RealMap christoffel_field(const RiemannianMetricField& g) {
  const int n = g.dim();
  const RealMap gm = g.map();
  auto body = [gm, n](auto x, auto out) {
    using T = typename decltype(out)::element_type;
    const auto gv = gm(x);
    const auto jac = nested_real_jacobian<T>(gm, x);  // jac[a*n+b][k] = ∂_k g_ab
    CMat<T> gmat(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) gmat(a, b) = Cplx<T>(gv[static_cast<std::size_t>(a * n + b)], T(0.0));
    const CMat<T> inv = inverse(gmat);
    auto dg = [&](int k, int a, int b) -> const T& { return jac[static_cast<std::size_t>(a * n + b)][static_cast<std::size_t>(k)]; };
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          T s(0.0);
          for (int l = 0; l < n; ++l) s = s + inv(i, l).re * (dg(a, l, b) + dg(b, l, a) - dg(l, a, b));
          out[static_cast<std::size_t>((i * n + a) * n + b)] = 0.5 * s;
        }
  };
  EvalTuple fns;
  std::get<EvalFn<double>>(fns) = [body](std::span<const double> x, std::span<double> y) { body(x, y); };
  if (gm.supports<DualHD>())
    std::get<EvalFn<HyperDual>>(fns) = [body](std::span<const HyperDual> x, std::span<HyperDual> y) { body(x, y); };
  return RealMap(n, n * n * n, std::move(fns));
}

struct Key3Result {
  double residual = 0.0;  // max |LHS − RHS|
  double lhs_max = 0.0;
};

// ∂²g_{kl}/∂x^i∂x^j − ∂Γ_{l,ij}/∂x^k − ∂Γ_{k,ij}/∂x^l = −(R_{ilkj} + R_{iklj})
// at a point where ∂g = 0, with Γ_{l,ij} = g_{ls}(x)Γ^s_{ij} (this is the
// upper-index form when g(x) = δ). The Christoffel derivatives on the left
// come from differentiating the Christoffel field; the curvature on the right
// from the closed formula in second metric derivatives.
inline Key3Result key3_check(const RiemannianMetricField& g, std::span<const double> x) {
  const int n = g.dim();
  const auto jet = riemannian_jet(g, x);
  const auto nd = normal_defects(jet);
  if (nd.derivative > kNormalPointTol)
    throw PreconditionError("key3_check: first metric derivatives do not vanish (|∂g| = " +
                            std::to_string(nd.derivative) + ")");
  const auto r = riemann_from_jet(jet);
  const RealMap cf = christoffel_field(g);
  const Eigen::MatrixXd dgam = jacobian(cf, x, scaled(g.options, g.chart().scale));  // row (s*n+i)*n+j, col k
  auto dG = [&](int k, int l, int i, int j) {
    double s = 0.0;
    for (int q = 0; q < n; ++q) s += jet.g(l, q) * dgam((q * n + i) * n + j, k);
    return s;
  };
  Key3Result out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double lhs = jet.dd[i][j](k, l) - dG(k, l, i, j) - dG(l, k, i, j);
          const double rhs = -(r(i, l, k, j) + r(i, k, l, j));
          out.residual = std::max(out.residual, std::abs(lhs - rhs));
          out.lhs_max = std::max(out.lhs_max, std::abs(lhs));
        }
  return out;
}

// ---------------------------------------------------------------------------
// Normal coordinates

// Riemannian: x(y) = p + A y − ½ Γ(p)(Ay, Ay) with A = g(p)^{-1/2}; the new
// metric is δ with vanishing first derivatives at y = 0.
inline RiemannianMetricField riemannian_normal_coordinates(const RiemannianMetricField& g, std::span<const double> p) {
  const int n = g.dim();
  const auto jet = riemannian_jet(g, p, false);
  const Christoffel c = christoffel_from_jet(jet);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jet.g);
  const Eigen::MatrixXd A = es.operatorInverseSqrt();
  const double dist = g.chart().boundary_distance(p);
  const double radius = std::isfinite(dist) ? 0.5 * dist / A.norm() : 1.0;
  const std::vector<double> p0(p.begin(), p.end());
  const RealMap gm = g.map();
  auto body = [gm, n, A, c, p0](auto y, auto out) {
    using T = typename decltype(out)::element_type;
    std::vector<T> ay(static_cast<std::size_t>(n), T(0.0));
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) ay[static_cast<std::size_t>(i)] = ay[static_cast<std::size_t>(i)] + A(i, a) * y[static_cast<std::size_t>(a)];
    std::vector<T> x(static_cast<std::size_t>(n));
    std::vector<T> jac(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
      T s = ay[static_cast<std::size_t>(i)] + p0[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) s = s - 0.5 * c(i, j, k) * ay[static_cast<std::size_t>(j)] * ay[static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(i)] = s;
      for (int a = 0; a < n; ++a) {
        T v(A(i, a));
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) v = v - c(i, j, k) * ay[static_cast<std::size_t>(j)] * A(k, a);
        jac[static_cast<std::size_t>(i * n + a)] = v;
      }
    }
    const auto gx = gm(std::span<const T>(x));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        T s(0.0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            s = s + jac[static_cast<std::size_t>(i * n + a)] * gx[static_cast<std::size_t>(i * n + j)] * jac[static_cast<std::size_t>(j * n + b)];
        out[static_cast<std::size_t>(a * n + b)] = s;
      }
  };
  RealChart chart = RealChart::ball(n, radius);
  chart.scale = g.chart().scale;
  RiemannianMetricField out(chart, make_real_map(n, n * n, body), g.name() + "-normal");
  out.options = g.options;
  return out;
}

struct HermitianNormalChart {
  HermitianMetricField metric;      // in the new coordinates ξ, centered at ξ = 0
  Eigen::VectorXcd center;          // p in the old chart
  Eigen::MatrixXcd linear;          // A
  std::vector<Eigen::MatrixXcd> quadratic;  // quadratic[α](a,c) = Q^α_{ac}

  // z(ξ) = p + A(ξ + ½ Q(ξ, ξ))
  Eigen::VectorXcd to_original(const Eigen::VectorXcd& xi) const {
    const int m = static_cast<int>(xi.size());
    Eigen::VectorXcd zeta = xi;
    for (int al = 0; al < m; ++al) zeta(al) += 0.5 * (xi.transpose() * quadratic[static_cast<std::size_t>(al)] * xi)(0, 0);
    return center + linear * zeta;
  }
};

namespace detail {

// h'(ξ) = Mᵀ h(z(ξ)) M̄ with z(ξ) = p + A(ξ + ½Q(ξ,ξ)) and M = A(I + Q(ξ)).
inline HermitianMetricField hermitian_change(const HermitianMetricField& h, const Eigen::VectorXcd& p,
                                             const Eigen::MatrixXcd& A, const std::vector<Eigen::MatrixXcd>& Q,
                                             double radius) {
  const int m = h.dim();
  auto body = [h, p, A, Q, m](auto xi, auto& out) {
    using T = std::decay_t<decltype(xi[0].re)>;
    auto C = [](std::complex<double> v) { return Cplx<T>(T(v.real()), T(v.imag())); };
    std::vector<Cplx<T>> zeta(xi.begin(), xi.end());
    CMat<T> inner = CMat<T>::identity(m);  // I + Q(ξ)
    for (int al = 0; al < m; ++al)
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
          const Cplx<T> q = C(Q[static_cast<std::size_t>(al)](a, c));
          zeta[static_cast<std::size_t>(al)] += 0.5 * q * xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(c)];
          inner(al, a) += q * xi[static_cast<std::size_t>(c)];
        }
    std::vector<Cplx<T>> z(static_cast<std::size_t>(m));
    CMat<T> Am(m, m);
    for (int i = 0; i < m; ++i) {
      Cplx<T> s = C(p(i));
      for (int a = 0; a < m; ++a) {
        Am(i, a) = C(A(i, a));
        s += Am(i, a) * zeta[static_cast<std::size_t>(a)];
      }
      z[static_cast<std::size_t>(i)] = s;
    }
    const CMat<T> M = Am * inner;
    const CMat<T> hz = h.at<T>(std::span<const Cplx<T>>(z));
    out = transpose(M) * hz * conj(M);
  };
  ComplexChart chart = ComplexChart::ball(m, radius);
  chart.scale = h.chart().scale;
  HermitianMetricField out = make_hermitian_metric(chart, body, h.name() + "-normal");
  out.options = h.options;
  return out;
}

}  // namespace detail

// Holomorphic change z = p + A(ξ + ½Q(ξ,ξ)) after which h(0) = δ and
// ∂_c h_{ab̄}(0) = −∂_a h_{cb̄}(0).
inline HermitianNormalChart hermitian_normal_coordinates(const HermitianMetricField& h, std::span<const Cplx<double>> p) {
  const int m = h.dim();
  const auto jet0 = hermitian_jet(h, p, false);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jet0.h);
  const Eigen::MatrixXcd S = es.operatorInverseSqrt();
  const Eigen::MatrixXcd A = S.conjugate();  // Aᵀ h Ā = S h S = I
  const double dist = h.chart().boundary_distance(p);
  const double radius = std::isfinite(dist) ? 0.5 * dist / A.norm() : 1.0;
  const Eigen::VectorXcd pc = to_eigen(p);
  std::vector<Eigen::MatrixXcd> Q(static_cast<std::size_t>(m), Eigen::MatrixXcd::Zero(m, m));
  const HermitianMetricField lin = detail::hermitian_change(h, pc, A, Q, radius);
  const std::vector<Cplx<double>> origin(static_cast<std::size_t>(m), Cplx<double>(0.0));
  const auto jet1 = hermitian_jet(lin, origin, false);
  // Q^b_{ac} = −½(∂_c h_{ab̄} + ∂_a h_{cb̄}) in the linearly normalized chart.
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < m; ++c) Q[static_cast<std::size_t>(b)](a, c) = -0.5 * (jet1.d[c](a, b) + jet1.d[a](c, b));
  return {detail::hermitian_change(h, pc, A, Q, radius), pc, A, Q};
}

// ---------------------------------------------------------------------------
// RC-positivity of Riemannian curvature (sampled)

// Deterministic unit vectors covering S^{n-1}.
inline std::vector<Eigen::VectorXd> sphere_grid(int n, int count, std::uint64_t seed = 11) {
  std::vector<Eigen::VectorXd> out;
  if (n < 1 || count < 1) return out;
  if (n == 1) return {Eigen::VectorXd::Ones(1)};
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = std::numbers::pi * k / count;  // antipodal points give the same values
      Eigen::VectorXd v(2);
      v << std::cos(t), std::sin(t);
      out.push_back(v);
    }
    return out;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double y = 1.0 - 2.0 * (k + 0.5) / count;
      const double r = std::sqrt(1.0 - y * y);
      Eigen::VectorXd v(3);
      v << r * std::cos(golden * k), y, r * std::sin(golden * k);
      out.push_back(v);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = nd(rng);
    out.push_back(v.normalized());
  }
  return out;
}

inline constexpr double kRcPositiveTol = 1e-8;

struct RcRiemannianPoint {
  std::vector<double> x;
  std::vector<double> sup_per_z;  // sup_W R(Z,W,W,Z) per grid Z (g-unit vectors)
  double worst_sup = 0.0;          // min over Z of the sup
  bool rc_positive = false;
  double uniform_value = 0.0;      // max over W of min over Z
  bool uniformly_rc_positive = false;
};

// Grid vectors are taken in an orthonormal frame of g(x).
inline std::vector<RcRiemannianPoint> rc_positive_riemannian(const RiemannianMetricField& g,
                                                             const std::vector<std::vector<double>>& points,
                                                             const std::vector<Eigen::VectorXd>& z_grid,
                                                             const std::vector<Eigen::VectorXd>& w_grid) {
  if (points.empty() || z_grid.empty() || w_grid.empty()) throw Error("rc_positive_riemannian: empty grid");
  std::vector<RcRiemannianPoint> out;
  for (const auto& x : points) {
    const auto jet = riemannian_jet(g, x);
    const auto r = riemann_from_jet(jet);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jet.g);
    const Eigen::MatrixXd frame = es.operatorInverseSqrt();
    RcRiemannianPoint pt;
    pt.x = x;
    std::vector<std::vector<double>> table(z_grid.size(), std::vector<double>(w_grid.size()));
    for (std::size_t a = 0; a < z_grid.size(); ++a) {
      const Eigen::VectorXd Z = frame * z_grid[a];
      double sup = -std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < w_grid.size(); ++b) {
        const Eigen::VectorXd W = frame * w_grid[b];
        table[a][b] = r.apply(Z, W, W, Z);
        sup = std::max(sup, table[a][b]);
      }
      pt.sup_per_z.push_back(sup);
    }
    pt.worst_sup = *std::min_element(pt.sup_per_z.begin(), pt.sup_per_z.end());
    pt.rc_positive = pt.worst_sup > kRcPositiveTol;
    pt.uniform_value = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < w_grid.size(); ++b) {
      double mn = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < z_grid.size(); ++a) mn = std::min(mn, table[a][b]);
      pt.uniform_value = std::max(pt.uniform_value, mn);
    }
    pt.uniformly_rc_positive = pt.uniform_value > kRcPositiveTol;
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace ged

#endif  // GED_CURVATURE_HPP
