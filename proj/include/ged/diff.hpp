#ifndef GED_DIFF_HPP
#define GED_DIFF_HPP

// Differentiation engine.
//
// Two independent routes produce every first and second derivative:
//   * central finite differences with one Richardson step (any field that evaluates doubles)
//   * forward-mode dual / hyper-dual numbers (exact up to rounding)
// With Backend::both the routes are compared entrywise and a disagreement
// beyond `cross_tol * max(1, |derivative|_max)` is an error; the dual value is
// returned. Fields without dual evaluators fall back to finite differences.
//
// Wirtinger convention: ∂/∂z = ½(∂/∂x − i∂/∂y), ∂/∂z̄ = ½(∂/∂x + i∂/∂y).

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ged/chart.hpp"
#include "ged/field.hpp"
#include "ged/smallmat.hpp"

namespace ged {

enum class Backend { finite_difference, dual_number, both };

struct DiffOptions {
  double step = 1e-3;
  double cross_tol = 1e-5;
  Backend backend = Backend::both;
};

class BackendDisagreement : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline bool has_dual_first(const RealMap& m) { return m.supports<Dual<double>>() || m.supports<HyperDual>(); }
inline bool has_dual_second(const RealMap& m) { return m.supports<HyperDual>(); }

inline Eigen::MatrixXd jacobian_central(const RealMap& m, std::span<const double> x, double h) {
  const int n = m.in_dim();
  const int k = m.out_dim();
  Eigen::MatrixXd jac(k, n);
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> fp(k), fm(k);
  for (int i = 0; i < n; ++i) {
    const double x0 = xp[i];
    xp[i] = x0 + h;
    m.eval<double>(xp, fp);
    xp[i] = x0 - h;
    m.eval<double>(xp, fm);
    xp[i] = x0;
    for (int r = 0; r < k; ++r) jac(r, i) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return jac;
}

inline Eigen::MatrixXd jacobian_dual(const RealMap& m, std::span<const double> x) {
  const int n = m.in_dim();
  const int k = m.out_dim();
  Eigen::MatrixXd jac(k, n);
  if (m.supports<Dual<double>>()) {
    std::vector<Dual<double>> xd(n), yd(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) xd[j] = Dual<double>(x[j], i == j ? 1.0 : 0.0);
      m.eval<Dual<double>>(xd, yd);
      for (int r = 0; r < k; ++r) jac(r, i) = yd[r].d;
    }
  } else {
    std::vector<HyperDual> xd(n), yd(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) xd[j] = HyperDual(x[j], i == j ? 1.0 : 0.0, 0.0, 0.0);
      m.eval<HyperDual>(xd, yd);
      for (int r = 0; r < k; ++r) jac(r, i) = yd[r].a;
    }
  }
  return jac;
}

inline std::vector<Eigen::MatrixXd> hessian_central(const RealMap& m, std::span<const double> x, double h) {
  const int n = m.in_dim();
  const int k = m.out_dim();
  std::vector<Eigen::MatrixXd> hs(k, Eigen::MatrixXd::Zero(n, n));
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> f0(k), a(k), b(k), c(k), d(k);
  m.eval<double>(xp, f0);
  for (int i = 0; i < n; ++i) {
    const double xi = xp[i];
    xp[i] = xi + h;
    m.eval<double>(xp, a);
    xp[i] = xi - h;
    m.eval<double>(xp, b);
    xp[i] = xi;
    for (int r = 0; r < k; ++r) hs[r](i, i) = (a[r] - 2.0 * f0[r] + b[r]) / (h * h);
    for (int j = i + 1; j < n; ++j) {
      const double xj = xp[j];
      xp[i] = xi + h;
      xp[j] = xj + h;
      m.eval<double>(xp, a);
      xp[j] = xj - h;
      m.eval<double>(xp, b);
      xp[i] = xi - h;
      m.eval<double>(xp, d);
      xp[j] = xj + h;
      m.eval<double>(xp, c);
      xp[i] = xi;
      xp[j] = xj;
      for (int r = 0; r < k; ++r) {
        const double v = (a[r] - b[r] - c[r] + d[r]) / (4.0 * h * h);
        hs[r](i, j) = v;
        hs[r](j, i) = v;
      }
    }
  }
  return hs;
}

inline std::vector<Eigen::MatrixXd> hessian_dual(const RealMap& m, std::span<const double> x) {
  const int n = m.in_dim();
  const int k = m.out_dim();
  std::vector<Eigen::MatrixXd> hs(k, Eigen::MatrixXd::Zero(n, n));
  std::vector<HyperDual> xd(n), yd(k);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int l = 0; l < n; ++l) xd[l] = HyperDual(x[l], l == i ? 1.0 : 0.0, l == j ? 1.0 : 0.0, 0.0);
      m.eval<HyperDual>(xd, yd);
      for (int r = 0; r < k; ++r) {
        hs[r](i, j) = yd[r].ab;
        hs[r](j, i) = yd[r].ab;
      }
    }
  return hs;
}

// Central differences at h and h/2 combined by one Richardson step, O(h⁴).
inline Eigen::MatrixXd jacobian_fd(const RealMap& m, std::span<const double> x, double h) {
  return (4.0 * jacobian_central(m, x, 0.5 * h) - jacobian_central(m, x, h)) / 3.0;
}

inline std::vector<Eigen::MatrixXd> hessian_fd(const RealMap& m, std::span<const double> x, double h) {
  auto fine = hessian_central(m, x, 0.5 * h);
  const auto coarse = hessian_central(m, x, h);
  for (std::size_t r = 0; r < fine.size(); ++r) fine[r] = (4.0 * fine[r] - coarse[r]) / 3.0;
  return fine;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline void cross_check(double diff, double scale, double tol, const char* what) {
  if (diff > tol * std::max(1.0, scale))
    throw BackendDisagreement(std::string(what) + ": finite-difference and dual-number derivatives differ by " +
                              std::to_string(diff) + " (scale " + std::to_string(scale) + ")");
}

}  // namespace detail

// Real Jacobian (out_dim × in_dim) at x.
inline Eigen::MatrixXd jacobian(const RealMap& m, std::span<const double> x, const DiffOptions& opt = {}) {
  const bool dual = detail::has_dual_first(m) && opt.backend != Backend::finite_difference;
  if (!dual) {
    if (opt.backend == Backend::dual_number) throw Error("jacobian: field has no dual-number evaluator");
    return detail::jacobian_fd(m, x, opt.step);
  }
  Eigen::MatrixXd jd = detail::jacobian_dual(m, x);
  if (opt.backend == Backend::both) {
    const Eigen::MatrixXd jf = detail::jacobian_fd(m, x, opt.step);
    detail::cross_check(detail::max_abs(jf - jd), detail::max_abs(jd), opt.cross_tol, "jacobian");
  }
  return jd;
}

// One real Hessian (in_dim × in_dim) per output component.
inline std::vector<Eigen::MatrixXd> hessian(const RealMap& m, std::span<const double> x, const DiffOptions& opt = {}) {
  const bool dual = detail::has_dual_second(m) && opt.backend != Backend::finite_difference;
  if (!dual) {
    if (opt.backend == Backend::dual_number) throw Error("hessian: field has no hyper-dual evaluator");
    return detail::hessian_fd(m, x, opt.step);
  }
  auto hd = detail::hessian_dual(m, x);
  if (opt.backend == Backend::both) {
    const auto hf = detail::hessian_fd(m, x, opt.step);
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t r = 0; r < hd.size(); ++r) {
      diff = std::max(diff, detail::max_abs(hf[r] - hd[r]));
      scale = std::max(scale, detail::max_abs(hd[r]));
    }
    detail::cross_check(diff, scale, opt.cross_tol, "hessian");
  }
  return hd;
}

// ---------------------------------------------------------------------------
// Wirtinger derivatives of complex fields (double level).

struct WirtingerFirst {
  Eigen::MatrixXcd d;     // ∂F_k/∂z^a   (out × in)
  Eigen::MatrixXcd dbar;  // ∂F_k/∂z̄^a
};

struct WirtingerSecond {
  std::vector<Eigen::MatrixXcd> dd;        // ∂²F_k/∂z^a∂z^b
  std::vector<Eigen::MatrixXcd> ddbar;     // ∂²F_k/∂z^a∂z̄^b
  std::vector<Eigen::MatrixXcd> dbardbar;  // ∂²F_k/∂z̄^a∂z̄^b
};

inline WirtingerFirst wirtinger_from_real(const Eigen::MatrixXd& jac, int out, int in) {
  using C = std::complex<double>;
  WirtingerFirst w{Eigen::MatrixXcd(out, in), Eigen::MatrixXcd(out, in)};
  for (int k = 0; k < out; ++k)
    for (int a = 0; a < in; ++a) {
      const double ux = jac(2 * k, 2 * a), uy = jac(2 * k, 2 * a + 1);
      const double vx = jac(2 * k + 1, 2 * a), vy = jac(2 * k + 1, 2 * a + 1);
      w.d(k, a) = 0.5 * C(ux + vy, vx - uy);
      w.dbar(k, a) = 0.5 * C(ux - vy, vx + uy);
    }
  return w;
}

inline WirtingerSecond wirtinger_from_real(const std::vector<Eigen::MatrixXd>& hs, int out, int in) {
  using C = std::complex<double>;
  WirtingerSecond w;
  for (int k = 0; k < out; ++k) {
    const auto& hu = hs[2 * k];
    const auto& hv = hs[2 * k + 1];
    Eigen::MatrixXcd dd(in, in), ddb(in, in), dbdb(in, in);
    for (int a = 0; a < in; ++a)
      for (int b = 0; b < in; ++b) {
        const C fxx(hu(2 * a, 2 * b), hv(2 * a, 2 * b));
        const C fyy(hu(2 * a + 1, 2 * b + 1), hv(2 * a + 1, 2 * b + 1));
        const C fxy(hu(2 * a, 2 * b + 1), hv(2 * a, 2 * b + 1));
        const C fyx(hu(2 * a + 1, 2 * b), hv(2 * a + 1, 2 * b));
        const C i(0.0, 1.0);
        dd(a, b) = 0.25 * (fxx - fyy - i * (fxy + fyx));
        ddb(a, b) = 0.25 * (fxx + fyy + i * (fxy - fyx));
        dbdb(a, b) = 0.25 * (fxx - fyy + i * (fxy + fyx));
      }
    w.dd.push_back(dd);
    w.ddbar.push_back(ddb);
    w.dbardbar.push_back(dbdb);
  }
  return w;
}

inline WirtingerFirst wirtinger_first(const ComplexField& f, std::span<const Cplx<double>> z,
                                      const DiffOptions& opt = {}) {
  const auto x = pack<double>(z);
  return wirtinger_from_real(jacobian(f.real(), x, opt), f.out_dim(), f.in_dim());
}

inline WirtingerSecond wirtinger_second(const ComplexField& f, std::span<const Cplx<double>> z,
                                        const DiffOptions& opt = {}) {
  const auto x = pack<double>(z);
  return wirtinger_from_real(hessian(f.real(), x, opt), f.out_dim(), f.in_dim());
}

// ---------------------------------------------------------------------------
// Derivatives inside generic evaluators.
//
// These run with the caller's scalar T and seed a Dual<T> direction per real
// coordinate. Without a Dual<T> evaluator they fall back to central
// differences in T arithmetic.

template <class T>
struct NestedFirst {
  CMat<T> d;     // out × in
  CMat<T> dbar;  // out × in
};

inline constexpr double kNestedFallbackStep = 1e-4;

template <class T>
std::vector<std::vector<T>> nested_real_jacobian(const RealMap& m, std::span<const T> x) {
  const int n = m.in_dim();
  const int k = m.out_dim();
  std::vector<std::vector<T>> jac(k, std::vector<T>(n));
  if (m.supports<Dual<T>>()) {
    std::vector<Dual<T>> xd(n), yd(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) xd[j] = Dual<T>(x[j], T(i == j ? 1.0 : 0.0));
      m.eval<Dual<T>>(xd, yd);
      for (int r = 0; r < k; ++r) jac[r][i] = yd[r].d;
    }
    return jac;
  }
  if (!m.supports<T>()) throw Error("nested derivative: field does not support the requested scalar type");
  const double h = kNestedFallbackStep;
  std::vector<T> xp(x.begin(), x.end()), fp(k), fm(k);
  for (int i = 0; i < n; ++i) {
    const T x0 = xp[i];
    xp[i] = x0 + h;
    m.eval<T>(xp, fp);
    xp[i] = x0 - h;
    m.eval<T>(xp, fm);
    xp[i] = x0;
    for (int r = 0; r < k; ++r) jac[r][i] = (fp[r] - fm[r]) * (0.5 / h);
  }
  return jac;
}

template <class T>
NestedFirst<T> nested_wirtinger(const ComplexField& f, std::span<const Cplx<T>> z) {
  const auto x = pack<T>(z);
  const auto jac = nested_real_jacobian<T>(f.real(), x);
  const int out = f.out_dim();
  const int in = f.in_dim();
  NestedFirst<T> w{CMat<T>(out, in), CMat<T>(out, in)};
  for (int k = 0; k < out; ++k)
    for (int a = 0; a < in; ++a) {
      const T& ux = jac[2 * k][2 * a];
      const T& uy = jac[2 * k][2 * a + 1];
      const T& vx = jac[2 * k + 1][2 * a];
      const T& vy = jac[2 * k + 1][2 * a + 1];
      w.d(k, a) = Cplx<T>(0.5 * (ux + vy), 0.5 * (vx - uy));
      w.dbar(k, a) = Cplx<T>(0.5 * (ux - vy), 0.5 * (vx + uy));
    }
  return w;
}

}  // namespace ged

#endif  // GED_DIFF_HPP
