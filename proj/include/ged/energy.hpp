#ifndef GED_ENERGY_HPP
#define GED_ENERGY_HPP

// Energy densities of maps and the harmonic / pluri-harmonic residuals.
//
// Densities come in two forms: point values computed from jets, and scalar
// fields on the relevant chart (base, (z, w), (z, x) or (z, w, x)) whose
// evaluators differentiate the map internally, so that their complex
// Hessians are available to the differentiation engine.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ged/curvature.hpp"
#include "ged/maps.hpp"
#include "ged/projbundle.hpp"
#include "ged/wirtinger.hpp"

namespace ged {

namespace detail {

template <class T>
struct MapFirstT {
  std::vector<Cplx<T>> value;
  CMat<T> d;     // f^i_a
  CMat<T> dbar;  // f^i_ā
};

template <class T>
MapFirstT<T> map_first(const ChartedMap& f, std::span<const Cplx<T>> z) {
  auto w = nested_wirtinger<T>(f.field, z);
  return {f.field(z), std::move(w.d), std::move(w.dbar)};
}

// F^i = f^i_α W^α
template <class T>
std::vector<Cplx<T>> push(const CMat<T>& d, std::span<const Cplx<T>> W) {
  std::vector<Cplx<T>> F(static_cast<std::size_t>(d.rows()), Cplx<T>(0.0));
  for (int i = 0; i < d.rows(); ++i)
    for (int a = 0; a < d.cols(); ++a) F[static_cast<std::size_t>(i)] += d(i, a) * W[static_cast<std::size_t>(a)];
  return F;
}

// Σ inv(α,β) G(i,j) f^i_α conj(f^j_β)
template <class T>
T energy_contraction(const CMat<T>& inv_h, const CMat<T>& G, const CMat<T>& d) {
  Cplx<T> s(0.0);
  for (int al = 0; al < d.cols(); ++al)
    for (int be = 0; be < d.cols(); ++be) {
      Cplx<T> t(0.0);
      for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.rows(); ++j) t += G(i, j) * d(i, al) * conj(d(j, be));
      s += inv_h(al, be) * t;
    }
  return s.re;
}

template <class T>
std::vector<Cplx<T>> concat(std::span<const Cplx<T>> a, std::span<const Cplx<T>> b) {
  std::vector<Cplx<T>> c(a.begin(), a.end());
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Nested bundle points (z, [W], [X]) of P(π*f*T*_N) -> P(T_M)

struct NestedBundlePoint {
  BundlePoint P;                // (z, [W])
  Eigen::VectorXcd X;           // homogeneous coordinates on the inner fiber
  int x_pivot = 0;
  std::vector<Cplx<double>> x;  // affine inner coordinates

  static NestedBundlePoint make(BundlePoint P, Eigen::VectorXcd X, int x_pivot = -1) {
    const BundlePoint inner = BundlePoint::make(P.z, std::move(X), x_pivot);
    NestedBundlePoint q;
    q.P = std::move(P);
    q.X = inner.W;
    q.x_pivot = inner.pivot;
    q.x = inner.w;
    return q;
  }

  Eigen::VectorXcd affine_X() const { return X / X(x_pivot); }

  // (z, w, x)
  std::vector<Cplx<double>> chart_point() const {
    auto c = P.chart_point();
    c.insert(c.end(), x.begin(), x.end());
    return c;
  }
};

inline ComplexChart nested_chart(const ComplexChart& base, int m, int n) {
  return {base.dim + (m - 1) + (n - 1),
          base.domain.concat(Domain::unbounded(2 * (m - 1))).concat(Domain::unbounded(2 * (n - 1))), base.scale};
}

// ---------------------------------------------------------------------------
// Tautological metric of P(f*T*_N): 𝓗₁ = g^{kℓ̄}(f(z)) X_k X̄_ℓ

inline BundleMetric dual_pullback_metric(const MapTriple& tr) {
  if (!tr.complex_target()) throw Error("dual_pullback_metric: needs a Hermitian target");
  const ChartedMap f = tr.f;
  const HermitianMetricField g = tr.g.hermitian();
  const int n = tr.n();
  auto rule = [f, g, n](auto z, auto out) {
    using C = typename decltype(out)::element_type;
    using T = decltype(C{}.re);
    const auto y = f.field(z);
    const CMat<T> inv = upper_index(g.at<T>(std::span<const Cplx<T>>(y)));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) out[static_cast<std::size_t>(k * n + l)] = inv(k, l);
  };
  BundleMetric b(tr.h.chart(), n, make_complex_field(tr.m(), n * n, rule), "dual-" + g.name());
  b.options = tr.h.options;
  return b;
}

inline TautologicalMetric dual_tautological(const MapTriple& tr) { return TautologicalMetric(dual_pullback_metric(tr)); }

// ---------------------------------------------------------------------------
// Density fields

// u = g(f_α, f̄_β) h^{αβ̄} on the base chart.
inline ScalarField energy_density_field(const MapTriple& tr) {
  const MapTriple t = tr;
  auto body = [t](auto z) {
    using C = std::decay_t<decltype(z[0])>;
    using T = decltype(C{}.re);
    const auto mf = detail::map_first<T>(t.f, z);
    const CMat<T> inv_h = upper_index(t.h.at<T>(z));
    const CMat<T> G = t.g.at<T>(std::span<const Cplx<T>>(mf.value));
    return detail::energy_contraction(inv_h, G, mf.d);
  };
  return make_real_scalar_for<double, HyperDual>(tr.h.chart(), body, tr.h.options);
}

// 𝓨 e^φ on the (z, w) chart of `pivot`; φ is a field of (z, W).
inline ScalarField Y_field(const MapTriple& tr, int pivot, std::optional<ScalarField> phi = std::nullopt) {
  const MapTriple t = tr;
  const BundleMetric h(tr.h);
  const int m = tr.m();
  auto body = [t, h, phi, m, pivot](auto zeta) {
    using C = std::decay_t<decltype(zeta[0])>;
    using T = decltype(C{}.re);
    const auto z = zeta.subspan(0, static_cast<std::size_t>(m));
    const auto W = homogeneous<T>(zeta.subspan(static_cast<std::size_t>(m)), pivot);
    const std::span<const Cplx<T>> Ws(W);
    const auto mf = detail::map_first<T>(t.f, z);
    const CMat<T> G = t.g.at<T>(std::span<const Cplx<T>>(mf.value));
    const auto F = detail::push(mf.d, Ws);
    const std::span<const Cplx<T>> Fs(F);
    T y = sesquilinear(G, Fs, Fs).re / tautological_H_at<T>(h, z, Ws);
    if (phi) y = y * exp(weight_at<T>(phi, z, Ws));
    return y;
  };
  return make_real_scalar_for<double, HyperDual>(bundle_chart(tr.h.chart(), m), body, tr.h.options);
}

// 𝓨₁ = h^{αβ̄} f^i_α f̄^j_β X_i X̄_j / 𝓗₁ on the (z, x) chart of `pivot`.
inline ScalarField Y1_field(const MapTriple& tr, int pivot) {
  if (!tr.complex_target()) throw Error("Y1_field: needs a Hermitian target");
  const MapTriple t = tr;
  const int m = tr.m();
  auto body = [t, m, pivot](auto zeta) {
    using C = std::decay_t<decltype(zeta[0])>;
    using T = decltype(C{}.re);
    const auto z = zeta.subspan(0, static_cast<std::size_t>(m));
    const auto X = homogeneous<T>(zeta.subspan(static_cast<std::size_t>(m)), pivot);
    const std::span<const Cplx<T>> Xs(X);
    const auto mf = detail::map_first<T>(t.f, z);
    const CMat<T> inv_h = upper_index(t.h.at<T>(z));
    const CMat<T> inv_g = upper_index(t.g.at<T>(std::span<const Cplx<T>>(mf.value)));
    // P_{ij̄} = X_i X̄_j as a target-side form
    CMat<T> P(t.n(), t.n());
    for (int i = 0; i < t.n(); ++i)
      for (int j = 0; j < t.n(); ++j) P(i, j) = X[static_cast<std::size_t>(i)] * conj(X[static_cast<std::size_t>(j)]);
    return detail::energy_contraction(inv_h, P, mf.d) / sesquilinear(inv_g, Xs, Xs).re;
  };
  return make_real_scalar_for<double, HyperDual>(bundle_chart(tr.h.chart(), tr.n()), body, tr.h.options);
}

// 𝓨₂ = |X_i F^i|² / (𝓗₁ 𝓗) on the (z, w, x) chart.
inline ScalarField Y2_field(const MapTriple& tr, int w_pivot, int x_pivot) {
  if (!tr.complex_target()) throw Error("Y2_field: needs a Hermitian target");
  const MapTriple t = tr;
  const BundleMetric h(tr.h);
  const int m = tr.m();
  const int n = tr.n();
  auto body = [t, h, m, n, w_pivot, x_pivot](auto zeta) {
    using C = std::decay_t<decltype(zeta[0])>;
    using T = decltype(C{}.re);
    const auto z = zeta.subspan(0, static_cast<std::size_t>(m));
    const auto W = homogeneous<T>(zeta.subspan(static_cast<std::size_t>(m), static_cast<std::size_t>(m - 1)), w_pivot);
    const auto X = homogeneous<T>(zeta.subspan(static_cast<std::size_t>(2 * m - 1)), x_pivot);
    const std::span<const Cplx<T>> Ws(W), Xs(X);
    const auto mf = detail::map_first<T>(t.f, z);
    const CMat<T> inv_g = upper_index(t.g.at<T>(std::span<const Cplx<T>>(mf.value)));
    const auto F = detail::push(mf.d, Ws);
    Cplx<T> xf(0.0);
    for (int i = 0; i < n; ++i) xf += X[static_cast<std::size_t>(i)] * F[static_cast<std::size_t>(i)];
    return norm2(xf) / (sesquilinear(inv_g, Xs, Xs).re * tautological_H_at<T>(h, z, Ws));
  };
  return make_real_scalar_for<double, HyperDual>(nested_chart(tr.h.chart(), m, n), body, tr.h.options);
}

// −log 𝓗 − log 𝓗₁ on the (z, w, x) chart: its Hessian is the sum of the two
// tautological curvatures pulled back to P(π*f*T*_N).
inline ScalarField nested_potential(const MapTriple& tr, int w_pivot, int x_pivot) {
  const BundleMetric h(tr.h);
  const BundleMetric h1 = dual_pullback_metric(tr);
  const int m = tr.m();
  auto body = [h, h1, m, w_pivot, x_pivot](auto zeta) {
    using C = std::decay_t<decltype(zeta[0])>;
    using T = decltype(C{}.re);
    const auto z = zeta.subspan(0, static_cast<std::size_t>(m));
    const auto W = homogeneous<T>(zeta.subspan(static_cast<std::size_t>(m), static_cast<std::size_t>(m - 1)), w_pivot);
    const auto X = homogeneous<T>(zeta.subspan(static_cast<std::size_t>(2 * m - 1)), x_pivot);
    return -log(tautological_H_at<T>(h, z, std::span<const Cplx<T>>(W))) -
           log(tautological_H_at<T>(h1, z, std::span<const Cplx<T>>(X)));
  };
  return make_real_scalar(nested_chart(tr.h.chart(), m, tr.n()), body, tr.h.options);
}

// ---------------------------------------------------------------------------
// Point values from jets

inline void check_base_point(const MapTriple& tr, std::span<const Cplx<double>> z) {
  if (static_cast<int>(z.size()) != tr.m()) throw DimensionError("base point has the wrong dimension");
}

// Σ g(i,j) f^i_μ conj(f^j_ν) as an m×m matrix.
inline Eigen::MatrixXcd pulled_back_metric(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& d) {
  return d.transpose() * g * d.conjugate();
}

inline double classical_energy_density(const MapTriple& tr, std::span<const Cplx<double>> z) {
  check_base_point(tr, z);
  const MapJet j = map_jet(tr.f, z, false);
  const Eigen::MatrixXcd inv_h = upper_index(tr.h(z));
  const Eigen::MatrixXcd g = to_eigen(tr.g.at<double>(to_cvec(j.value)));
  return (inv_h.cwiseProduct(pulled_back_metric(g, j.d))).sum().real();
}

inline double generalized_Y(const MapTriple& tr, const BundlePoint& P) {
  check_base_point(tr, P.z);
  if (P.rank() != tr.m()) throw DimensionError("generalized_Y: fiber vector has the wrong dimension");
  const MapJet j = map_jet(tr.f, P.z, false);
  const Eigen::MatrixXcd g = to_eigen(tr.g.at<double>(to_cvec(j.value)));
  const Eigen::VectorXcd F = j.d * P.W;
  const double H = (P.W.transpose() * tr.h(P.z) * P.W.conjugate())(0, 0).real();
  return (F.transpose() * g * F.conjugate())(0, 0).real() / H;
}

inline double conformal_Y(const MapTriple& tr, const BundlePoint& P, const ScalarField& phi) {
  const TautologicalMetric tm(tr.h, phi);
  const auto W = to_cvec(P.W);
  return std::exp(weight_at<double>(tm.phi, P.z, W)) * generalized_Y(tr, P);
}

// Q = (z, [X]) with X on the fibers of f*T*_N.
inline double generalized_Y1(const MapTriple& tr, const BundlePoint& Q) {
  if (!tr.complex_target()) throw Error("generalized_Y1: needs a Hermitian target");
  check_base_point(tr, Q.z);
  if (Q.rank() != tr.n()) throw DimensionError("generalized_Y1: fiber vector has the wrong dimension");
  const MapJet j = map_jet(tr.f, Q.z, false);
  const Eigen::MatrixXcd inv_h = upper_index(tr.h(Q.z));
  const Eigen::MatrixXcd inv_g = upper_index(to_eigen(tr.g.at<double>(to_cvec(j.value))));
  const Eigen::MatrixXcd P = Q.W * Q.W.adjoint();  // X_i X̄_j
  const double num = (inv_h.cwiseProduct(pulled_back_metric(P, j.d))).sum().real();
  return num / (Q.W.transpose() * inv_g * Q.W.conjugate())(0, 0).real();
}

inline double generalized_Y2(const MapTriple& tr, const NestedBundlePoint& R) {
  if (!tr.complex_target()) throw Error("generalized_Y2: needs a Hermitian target");
  check_base_point(tr, R.P.z);
  const MapJet j = map_jet(tr.f, R.P.z, false);
  const Eigen::MatrixXcd inv_g = upper_index(to_eigen(tr.g.at<double>(to_cvec(j.value))));
  const std::complex<double> xf = (R.X.transpose() * j.d * R.P.W)(0, 0);
  const double H = (R.P.W.transpose() * tr.h(R.P.z) * R.P.W.conjugate())(0, 0).real();
  const double H1 = (R.X.transpose() * inv_g * R.X.conjugate())(0, 0).real();
  return std::norm(xf) / (H1 * H);
}

// ---------------------------------------------------------------------------
// Symmetric powers

// Nondecreasing index sequences of length k over {0..n-1}.
inline std::vector<std::vector<int>> multisets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(s);
    int p = k - 1;
    while (p >= 0 && s[static_cast<std::size_t>(p)] == n - 1) --p;
    if (p < 0) break;
    const int v = s[static_cast<std::size_t>(p)] + 1;
    for (int q = p; q < k; ++q) s[static_cast<std::size_t>(q)] = v;
  }
  return out;
}

inline double multiset_factorial(const std::vector<int>& I) {
  double r = 1.0;
  std::size_t run = 1;
  for (std::size_t a = 1; a <= I.size(); ++a) {
    if (a < I.size() && I[a] == I[a - 1]) {
      ++run;
    } else {
      for (std::size_t t = 2; t <= run; ++t) r *= static_cast<double>(t);
      run = 1;
    }
  }
  return r;
}

inline std::complex<double> permanent(const Eigen::MatrixXcd& a) {
  const int k = static_cast<int>(a.rows());
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::complex<double> s = 0.0;
  do {
    std::complex<double> t = 1.0;
    for (int r = 0; r < k; ++r) t *= a(r, p[static_cast<std::size_t>(r)]);
    s += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

inline Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXcd s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(rows[r], cols[c]);
  return s;
}

// Metric on Sym^k induced by g in the monomial basis: g_{IJ̄} = perm(g[I,J])/k!.
inline Eigen::MatrixXcd induced_symmetric_metric(const Eigen::MatrixXcd& g, int k) {
  const auto ms = multisets(static_cast<int>(g.rows()), k);
  double kf = 1.0;
  for (int t = 2; t <= k; ++t) kf *= t;
  Eigen::MatrixXcd s(static_cast<Eigen::Index>(ms.size()), static_cast<Eigen::Index>(ms.size()));
  for (std::size_t I = 0; I < ms.size(); ++I)
    for (std::size_t J = 0; J < ms.size(); ++J)
      s(static_cast<Eigen::Index>(I), static_cast<Eigen::Index>(J)) = permanent(submatrix(g, ms[I], ms[J])) / kf;
  return s;
}

// Sym^k of a Jacobian: F^I_A = perm(f[I,A])/I!.
inline Eigen::MatrixXcd symmetric_power(const Eigen::MatrixXcd& d, int k) {
  const auto rows = multisets(static_cast<int>(d.rows()), k);
  const auto cols = multisets(static_cast<int>(d.cols()), k);
  Eigen::MatrixXcd s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t I = 0; I < rows.size(); ++I)
    for (std::size_t A = 0; A < cols.size(); ++A)
      s(static_cast<Eigen::Index>(I), static_cast<Eigen::Index>(A)) =
          permanent(submatrix(d, rows[I], cols[A])) / multiset_factorial(rows[I]);
  return s;
}

// Coordinates of W^{⊗k} in the monomial basis: W^A = (k!/A!) Π W^{a}.
inline Eigen::VectorXcd symmetric_power(const Eigen::VectorXcd& W, int k) {
  const auto ms = multisets(static_cast<int>(W.size()), k);
  double kf = 1.0;
  for (int t = 2; t <= k; ++t) kf *= t;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(ms.size()));
  for (std::size_t A = 0; A < ms.size(); ++A) {
    std::complex<double> p = kf / multiset_factorial(ms[A]);
    for (int a : ms[A]) p *= W(a);
    v(static_cast<Eigen::Index>(A)) = p;
  }
  return v;
}

// 𝓨_k = g_{IJ̄} F^I_A F̄^J_B W^A W̄^B / 𝓗^k with a supplied metric g_k on
// Sym^k (monomial basis at f(z)); without one, the metric induced by g.
inline double generalized_Y_k(const MapTriple& tr, const BundlePoint& P, int k,
                              const std::optional<Eigen::MatrixXcd>& gk = std::nullopt) {
  if (k < 1) throw Error("generalized_Y_k: k must be positive");
  if (!tr.complex_target()) throw Error("generalized_Y_k: needs a Hermitian target");
  check_base_point(tr, P.z);
  const MapJet j = map_jet(tr.f, P.z, false);
  const Eigen::MatrixXcd g = to_eigen(tr.g.at<double>(to_cvec(j.value)));
  const Eigen::MatrixXcd G = gk ? *gk : induced_symmetric_metric(g, k);
  const Eigen::MatrixXcd Fk = symmetric_power(j.d, k);
  if (G.rows() != Fk.rows() || G.cols() != Fk.rows())
    throw DimensionError("generalized_Y_k: symmetric-power metric has the wrong size");
  const Eigen::VectorXcd V = Fk * symmetric_power(P.W, k);
  const double H = (P.W.transpose() * tr.h(P.z) * P.W.conjugate())(0, 0).real();
  return (V.transpose() * G * V.conjugate())(0, 0).real() / std::pow(H, k);
}

// ---------------------------------------------------------------------------
// Harmonic and pluri-harmonic residuals

inline constexpr double kPluriharmonicTol = 1e-6;

struct PluriharmonicResidual {
  std::vector<Eigen::MatrixXcd> r;  // r[i](α, β)
  double max_abs = 0.0;
};

// Riemannian target: f^i_{αβ̄} + Γ^i_{jk} f^j_β̄ f^k_α (Levi-Civita).
// Hermitian target: f^i_{αβ̄} + Γ^i_{jk} f^j_α f^k_β̄ with the Chern
// connection Γ^i_{jk} = g^{iℓ̄} ∂_j g_{kℓ̄}.
inline PluriharmonicResidual pluriharmonic_residual(const ChartedMap& f, const TargetMetric& g,
                                                    std::span<const Cplx<double>> z) {
  if (f.target_dim != g.dim() || f.target_complex != g.is_complex())
    throw DimensionError("pluriharmonic_residual: map and target metric do not match");
  const MapJet j = map_jet(f, z, true);
  const int n = f.target_dim;
  const int m = f.source_dim();
  PluriharmonicResidual out;
  out.r = j.ddbar;
  if (g.is_complex()) {
    const auto tj = hermitian_jet(g.hermitian(), to_cvec(j.value), false);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k) {
          std::complex<double> G = 0.0;
          for (int l = 0; l < n; ++l) G += tj.inv(i, l) * tj.d[static_cast<std::size_t>(jj)](k, l);
          if (G == 0.0) continue;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) out.r[static_cast<std::size_t>(i)](a, b) += G * j.d(jj, a) * j.dbar(k, b);
        }
  } else {
    const auto x = real_parts(to_cvec(j.value));
    const Christoffel G = levi_civita_christoffels(g.riemannian(), x);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k) {
          const double c = G(i, jj, k);
          if (c == 0.0) continue;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) out.r[static_cast<std::size_t>(i)](a, b) += c * j.dbar(jj, b) * j.d(k, a);
        }
  }
  for (const auto& r : out.r) out.max_abs = std::max(out.max_abs, r.size() ? r.cwiseAbs().maxCoeff() : 0.0);
  return out;
}

// h^{αβ̄} traced pluri-harmonic residual.
inline Eigen::VectorXcd hermitian_harmonic_residual(const MapTriple& tr, std::span<const Cplx<double>> z) {
  const auto pr = pluriharmonic_residual(tr.f, tr.g, z);
  const Eigen::MatrixXcd inv_h = upper_index(tr.h(z));
  Eigen::VectorXcd v(tr.n());
  for (int i = 0; i < tr.n(); ++i) v(i) = inv_h.cwiseProduct(pr.r[static_cast<std::size_t>(i)]).sum();
  return v;
}

struct ConstraintCheck {
  bool applicable = false;      // false when the map is not pluri-harmonic at z
  double pluri_residual = 0.0;
  double value = 0.0;           // max |R_{ikjℓ} f^i_α f^j_β̄ f^k_γ|
};

inline ConstraintCheck constraint_D_check(const ChartedMap& f, const TargetMetric& g, std::span<const Cplx<double>> z) {
  if (g.is_complex()) throw Error("constraint_D_check: needs a Riemannian target");
  ConstraintCheck c;
  c.pluri_residual = pluriharmonic_residual(f, g, z).max_abs;
  c.applicable = c.pluri_residual <= kPluriharmonicTol;
  if (!c.applicable) return c;
  const MapJet j = map_jet(f, z, false);
  const auto R = riemann_curvature(g.riemannian(), real_parts(to_cvec(j.value)));
  const int n = f.target_dim;
  const int m = f.source_dim();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int cc = 0; cc < m; ++cc)
        for (int l = 0; l < n; ++l) {
          std::complex<double> s = 0.0;
          for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
              for (int k = 0; k < n; ++k) s += R(i, k, jj, l) * j.d(i, a) * j.dbar(jj, b) * j.d(k, cc);
          c.value = std::max(c.value, std::abs(s));
        }
  return c;
}

// A^{ij} = h^{αβ̄} f^i_α f^j_β̄
inline Eigen::MatrixXcd traced_pair(const Eigen::MatrixXcd& inv_h, const MapJet& j) {
  return j.d * inv_h * j.dbar.transpose();
}

// Ĉ = R_{ikℓj} A^{ij} A^{kℓ}
inline double hatC_value(const MapTriple& tr, std::span<const Cplx<double>> z) {
  if (tr.complex_target()) throw Error("hatC_value: needs a Riemannian target");
  const MapJet j = map_jet(tr.f, z, false);
  const auto R = riemann_curvature(tr.g.riemannian(), real_parts(to_cvec(j.value)));
  const Eigen::MatrixXcd A = traced_pair(upper_index(tr.h(z)), j);
  const int n = tr.n();
  std::complex<double> s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int jj = 0; jj < n; ++jj) s += R(i, k, l, jj) * A(i, jj) * A(k, l);
  return s.real();
}

// ---------------------------------------------------------------------------
// |∂f|² = m π_*(𝓨)

struct PushforwardCheck {
  double m_pushforward = 0.0;  // m · π_*(𝓨)
  double energy = 0.0;         // u(z)
  double residual = 0.0;
  FiberIntegral integral;
};

inline PushforwardCheck pushforward_energy_check(const MapTriple& tr, std::span<const Cplx<double>> z, int order,
                                                 double tol = kQuadratureTol) {
  check_base_point(tr, z);
  const MapJet j = map_jet(tr.f, z, false);
  const Eigen::MatrixXcd g = to_eigen(tr.g.at<double>(to_cvec(j.value)));
  const Eigen::MatrixXcd h = tr.h(z);
  const Eigen::MatrixXcd pg = pulled_back_metric(g, j.d);
  auto density = [&](const Eigen::VectorXcd& W) {
    return (W.transpose() * pg * W.conjugate())(0, 0).real() / (W.transpose() * h * W.conjugate())(0, 0).real();
  };
  PushforwardCheck c;
  c.integral = fiber_integrate(density, h, order, tol);
  c.m_pushforward = tr.m() * c.integral.value;
  c.energy = classical_energy_density(tr, z);
  c.residual = std::abs(c.m_pushforward - c.energy);
  return c;
}

// ---------------------------------------------------------------------------
// Pointwise bound of the form R(u,ū,V,V̄) ≤ k ε_k |u|²|V|² on Sym^k T_N.

struct NefDiagnostic {
  int k = 1;
  double epsilon = 0.0;  // smallest ε_k ≥ 0 consistent with the sampled directions
};

// For the metric induced by g on Sym^k the curvature acts as a derivation,
// so sup_V R(u,ū,V,V̄)/|V|² = k λ_max(R(u,ū,·,·)) in a g-unitary frame.
inline NefDiagnostic nef_diagnostic(const HermitianMetricField& g, std::span<const Cplx<double>> y, int k,
                                    int directions = 64, std::uint64_t seed = 5) {
  if (k < 1) throw Error("nef_diagnostic: k must be positive");
  const auto jet = hermitian_jet(g, y, true);
  const auto R = chern_from_jet(jet);
  const int n = g.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jet.h);
  const Eigen::MatrixXcd E = es.operatorInverseSqrt().conjugate();  // columns g-unitary
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  NefDiagnostic out;
  out.k = k;
  for (int s = 0; s < directions; ++s) {
    Eigen::VectorXcd u(n);
    for (int a = 0; a < n; ++a) u(a) = {nd(rng), nd(rng)};
    u /= std::sqrt(hermitian_norm2(jet.h, u));
    Eigen::MatrixXcd K(n, n);
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) K(c, d) = R.contract(u, u, E.col(c), E.col(d));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ks(0.5 * (K + K.adjoint()), Eigen::EigenvaluesOnly);
    out.epsilon = std::max(out.epsilon, ks.eigenvalues()(n - 1));
  }
  return out;
}

}  // namespace ged

#endif  // GED_ENERGY_HPP
