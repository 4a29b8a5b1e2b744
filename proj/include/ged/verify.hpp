#ifndef GED_VERIFY_HPP
#define GED_VERIFY_HPP

// Both sides of the exact identities and curvature inequalities for maps,
// assembled as Form11 objects (or traces) and compared by eigenvalues.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "ged/curvature.hpp"
#include "ged/energy.hpp"
#include "ged/form11.hpp"
#include "ged/maps.hpp"
#include "ged/projbundle.hpp"
#include "ged/wirtinger.hpp"

namespace ged {

enum class SuiteId {
  S1,
  S_minus1,
  S01,
  S02,
  S2,
  S3,
  S03,
  S11,
  hessian,
  hessian2,
  exact_holo,
  exact_pluri,
  W_psd,
  S5_probe
};

inline constexpr std::array<SuiteId, 14> kAllSuites = {
    SuiteId::S1,      SuiteId::S_minus1, SuiteId::S01,        SuiteId::S02,         SuiteId::S2,
    SuiteId::S3,      SuiteId::S03,      SuiteId::S11,        SuiteId::hessian,     SuiteId::hessian2,
    SuiteId::exact_holo, SuiteId::exact_pluri, SuiteId::W_psd, SuiteId::S5_probe};

inline std::string suite_name(SuiteId s) {
  switch (s) {
    case SuiteId::S1: return "S1";
    case SuiteId::S_minus1: return "S_minus1";
    case SuiteId::S01: return "S01";
    case SuiteId::S02: return "S02";
    case SuiteId::S2: return "S2";
    case SuiteId::S3: return "S3";
    case SuiteId::S03: return "S03";
    case SuiteId::S11: return "S11";
    case SuiteId::hessian: return "hessian";
    case SuiteId::hessian2: return "hessian2";
    case SuiteId::exact_holo: return "exact_holo";
    case SuiteId::exact_pluri: return "exact_pluri";
    case SuiteId::W_psd: return "W_psd";
    case SuiteId::S5_probe: return "S5_probe";
  }
  return "?";
}

inline std::optional<SuiteId> parse_suite(std::string_view name) {
  for (SuiteId s : kAllSuites)
    if (suite_name(s) == name) return s;
  if (name == "S-1") return SuiteId::S_minus1;
  return std::nullopt;
}

enum class SuiteShape { form, trace, exact, psd, probe };

inline SuiteShape suite_shape(SuiteId s) {
  switch (s) {
    case SuiteId::S02:
    case SuiteId::hessian2: return SuiteShape::trace;
    case SuiteId::exact_holo:
    case SuiteId::exact_pluri: return SuiteShape::exact;
    case SuiteId::W_psd: return SuiteShape::psd;
    case SuiteId::S5_probe: return SuiteShape::probe;
    default: return SuiteShape::form;
  }
}

struct Tolerances {
  double relative = 1e-6;             // form and trace inequalities, times max(1, |LHS|)
  double exact = 1e-4;                // two-route identities, relative
  double w_psd = 1e-8;                // absolute
  double pluri = kPluriharmonicTol;   // applicability of pluri-harmonic suites
  double probe = 1e-8;                // sign classification in the probe
};

// Map-type applicability. Returns the reason the suite does not apply, or "".
inline std::string suite_applicability(SuiteId s, const MapTriple& tr) {
  const bool holo = tr.complex_target() && tr.f.holomorphic;
  switch (s) {
    case SuiteId::S1:
    case SuiteId::S01:
    case SuiteId::S02:
    case SuiteId::S03:
    case SuiteId::S2:
    case SuiteId::S3:
    case SuiteId::exact_holo:
    case SuiteId::S5_probe:
      if (!tr.complex_target()) return "needs a Hermitian target";
      if (!tr.f.holomorphic) return "needs a holomorphic map";
      return "";
    case SuiteId::S_minus1:
      if (!holo) return "needs a holomorphic function";
      if (tr.n() != 1) return "needs a scalar target";
      return "";
    case SuiteId::S11:
    case SuiteId::hessian:
    case SuiteId::hessian2:
    case SuiteId::exact_pluri:
      if (tr.complex_target()) return "needs a Riemannian target";
      return "";
    case SuiteId::W_psd:
      if (tr.complex_target() && !tr.f.holomorphic) return "needs a holomorphic map or a Riemannian target";
      return "";
  }
  return "unknown suite";
}

// Point-level preconditions: pluri-harmonicity, and g ≡ 1 for S_minus1.
inline std::string point_applicability(SuiteId s, const MapTriple& tr, std::span<const Cplx<double>> z,
                                       const Tolerances& tol = {}) {
  if (s == SuiteId::S_minus1) {
    const auto y = tr.f(z);
    const auto jet = hermitian_jet(tr.g.hermitian(), y, false);
    if (std::abs(jet.h(0, 0) - 1.0) > 1e-12 || jet.d[0].cwiseAbs().maxCoeff() > 1e-12)
      return "target metric is not the flat unit metric";
    return "";
  }
  const bool pluri = s == SuiteId::S11 || s == SuiteId::hessian || s == SuiteId::hessian2 ||
                     s == SuiteId::exact_pluri || (s == SuiteId::W_psd && !tr.complex_target());
  if (pluri) {
    const double r = pluriharmonic_residual(tr.f, tr.g, z).max_abs;
    if (r > tol.pluri) return "map is not pluri-harmonic (residual " + std::to_string(r) + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Assembly on the (z, w) chart

namespace detail {

// Homogeneous index of the s-th affine fiber coordinate.
inline int fiber_index(int pivot, int s) { return s < pivot ? s : s + 1; }

struct BundleAssembly {
  Form11 W;                // 𝓦 on the (z, w) chart
  Eigen::MatrixXcd C;      // curvature term on the base block (before division by 𝓗)
  Eigen::MatrixXcd C_full; // Riemannian targets: the unreduced contraction
  double H = 0.0;          // 𝓗 at the affine fiber vector
  double Y = 0.0;
};

inline BundleAssembly assemble(const MapTriple& tr, const BundlePoint& P) {
  const int m = tr.m();
  const int n = tr.n();
  const int dim = 2 * m - 1;
  const MapJet j = map_jet(tr.f, P.z, true);
  const HermitianJet hj = hermitian_jet(tr.h, P.z, false);
  const TargetJet tj = target_jet(tr.g, j.value, false);
  const Eigen::VectorXcd Wt = P.affine();
  const Eigen::VectorXcd F = j.d * Wt;

  BundleAssembly out;
  out.H = (Wt.transpose() * hj.h * Wt.conjugate())(0, 0).real();
  out.Y = (F.transpose() * tj.g * F.conjugate())(0, 0).real() / out.H;

  Eigen::VectorXcd dH(dim);
  for (int a = 0; a < m; ++a) dH(a) = (Wt.transpose() * hj.d[static_cast<std::size_t>(a)] * Wt.conjugate())(0, 0);
  for (int s = 0; s < m - 1; ++s) dH(m + s) = (hj.h.row(fiber_index(P.pivot, s)) * Wt.conjugate())(0, 0);

  // Γ^i_{pk}
  std::vector<Eigen::MatrixXcd> gam(static_cast<std::size_t>(n), Eigen::MatrixXcd::Zero(n, n));
  RiemannCurvatureTensor Rr;
  ChernCurvatureTensor Rc;
  if (tr.complex_target()) {
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < n; ++p)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            gam[static_cast<std::size_t>(i)](p, k) += tj.inv(i, l) * tj.hermitian.d[static_cast<std::size_t>(p)](k, l);
    Rc = chern_curvature(tr.g.hermitian(), to_cvec(j.value));
  } else {
    Rr = riemann_curvature(tr.g.riemannian(), real_parts(to_cvec(j.value)));
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < n; ++p)
        for (int k = 0; k < n; ++k) gam[static_cast<std::size_t>(i)](p, k) = Rr.gamma(i, p, k);
  }

  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) {
      std::complex<double> v = 0.0;
      for (int al = 0; al < m; ++al) v += j.dd[static_cast<std::size_t>(i)](al, a) * Wt(al);
      for (int p = 0; p < n; ++p)
        for (int k = 0; k < n; ++k) v += gam[static_cast<std::size_t>(i)](p, k) * F(k) * j.d(p, a);
      V(i, a) = v;
    }
    for (int s = 0; s < m - 1; ++s) V(i, m + s) = j.d(i, fiber_index(P.pivot, s));
    for (int a = 0; a < dim; ++a) V(i, a) -= F(i) * dH(a) / out.H;
  }
  out.W = Form11(Eigen::MatrixXcd(V.transpose() * tj.g * V.conjugate()));

  out.C = Eigen::MatrixXcd::Zero(m, m);
  out.C_full = Eigen::MatrixXcd::Zero(m, m);
  for (int al = 0; al < m; ++al)
    for (int be = 0; be < m; ++be) {
      if (tr.complex_target()) {
        out.C(al, be) = Rc.contract(j.d.col(al), j.d.col(be), F, F);
        out.C_full(al, be) = out.C(al, be);
        continue;
      }
      std::complex<double> c = 0.0, cf = 0.0;
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
          const std::complex<double> ff = j.d(i, al) * j.dbar(jj, be);
          if (ff == 0.0) continue;
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const std::complex<double> t = ff * F(k) * std::conj(F(l));
              c += Rr(i, l, k, jj) * t;
              cf += (Rr(i, l, k, jj) + Rr(i, k, l, jj)) * t;
            }
        }
      out.C(al, be) = c;
      out.C_full(al, be) = cf;
    }
  return out;
}

inline void require_bundle_point(const MapTriple& tr, const BundlePoint& P) {
  if (static_cast<int>(P.z.size()) != tr.m() || P.rank() != tr.m())
    throw DimensionError("bundle point does not match the source dimension");
}

inline void require_variant(const MapTriple& tr, std::span<const Cplx<double>> z, double pluri_tol) {
  if (tr.complex_target()) {
    if (!tr.f.holomorphic) throw MapError("holomorphic variant needs a holomorphic map");
    return;
  }
  const double r = pluriharmonic_residual(tr.f, tr.g, z).max_abs;
  if (r > pluri_tol)
    throw PreconditionError("pluri-harmonic variant needs a pluri-harmonic map (residual " + std::to_string(r) + ")");
}

}  // namespace detail

// 𝓦 on the (z, w) chart: holomorphic variant for Hermitian targets,
// pluri-harmonic variant (Levi-Civita connection) for Riemannian targets.
inline Form11 assemble_W_form(const MapTriple& tr, const BundlePoint& P) {
  detail::require_bundle_point(tr, P);
  detail::require_variant(tr, P.z, kPluriharmonicTol);
  return detail::assemble(tr, P).W;
}

// ---------------------------------------------------------------------------
// Exact identities

struct ExactIdentityResult {
  double residual = 0.0;  // max |LHS − RHS| / max(1, max |LHS|)
  double lhs_max = 0.0;
  double curvature_discrepancy = 0.0;  // Riemannian targets: |C_full − C|/𝓗
  Form11 lhs, rhs;
};

inline ExactIdentityResult verify_exact_identity(SuiteId variant, const MapTriple& tr, const BundlePoint& P) {
  if (variant != SuiteId::exact_holo && variant != SuiteId::exact_pluri)
    throw Error("verify_exact_identity: not an exact-identity suite");
  if ((variant == SuiteId::exact_holo) != tr.complex_target())
    throw MapError("verify_exact_identity: variant does not match the target kind");
  detail::require_bundle_point(tr, P);
  detail::require_variant(tr, P.z, kPluriharmonicTol);
  const int dim = 2 * tr.m() - 1;
  const auto as = detail::assemble(tr, P);
  const Form11 taut = tautological_curvature(TautologicalMetric(tr.h), P);
  ExactIdentityResult r;
  r.lhs = wirtinger_hessian(Y_field(tr, P.pivot), P.chart_point());
  r.rhs = as.Y * taut + (1.0 / as.H) * as.W - (1.0 / as.H) * Form11(as.C).embed(dim);
  r.lhs_max = r.lhs.max_abs();
  r.residual = (r.lhs - r.rhs).max_abs() / std::max(1.0, r.lhs_max);
  r.curvature_discrepancy = (as.C_full - as.C).cwiseAbs().maxCoeff() / as.H;
  return r;
}

// ---------------------------------------------------------------------------
// Inequalities

struct SamplePoint {
  BundlePoint P;       // (z, [W])
  Eigen::VectorXcd X;  // fiber vector on f*T*_N (S2, S3)
};

struct FormResidual {
  double min_eigenvalue = 0.0;  // of LHS − RHS
  double scale = 1.0;           // max(1, max |LHS|)
  Eigen::VectorXcd eigenvector;
  Form11 lhs, rhs;
};

namespace detail {

inline FormResidual finish(Form11 lhs, Form11 rhs) {
  FormResidual r;
  const Form11 d = lhs - rhs;
  r.min_eigenvalue = min_eigenvalue(d);
  r.eigenvector = min_eigenvector(d);
  r.scale = std::max(1.0, lhs.max_abs());
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

// Y_φ Taut_φ − C/𝓗_φ on the (z, w) chart; φ = nullopt gives the unweighted form.
inline FormResidual conformal_family(const MapTriple& tr, const BundlePoint& P, const std::optional<ScalarField>& phi,
                                     bool curvature_term) {
  const int dim = 2 * tr.m() - 1;
  const TautologicalMetric tm(tr.h, phi);
  const ScalarField Yf = Y_field(tr, P.pivot, phi);
  const auto cp = P.chart_point();
  const double Y = Yf(cp).real();
  Form11 rhs = Y * tautological_curvature(tm, P);
  if (curvature_term) {
    const auto as = assemble(tr, P);
    const auto W = to_cvec(P.affine());
    const double H_phi = as.H * std::exp(-weight_at<double>(tm.phi, P.z, W));
    rhs = rhs - (1.0 / H_phi) * Form11(as.C).embed(dim);
  }
  return finish(wirtinger_hessian(Yf, cp), rhs);
}

// Base-chart right-hand side: R^h·h⁻¹·h⁻¹·G − (target curvature)·A.
inline Form11 base_rhs(const MapTriple& tr, std::span<const Cplx<double>> z) {
  const int m = tr.m();
  const int n = tr.n();
  const MapJet j = map_jet(tr.f, z, false);
  const auto Rh = chern_curvature(tr.h, z);
  const Eigen::MatrixXcd inv = upper_index(tr.h(z));
  const TargetJet tj = target_jet(tr.g, j.value, false);
  const Eigen::MatrixXcd G = j.d.transpose() * tj.g * j.d.conjugate();  // G(μ,ν) = g(f_μ, f̄_ν)
  const Eigen::MatrixXcd A = j.d * inv * j.dbar.transpose();           // A^{kℓ} = h^{μν̄} f^k_μ f^ℓ_ν̄
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(m, m);
  for (int al = 0; al < m; ++al)
    for (int be = 0; be < m; ++be)
      for (int ga = 0; ga < m; ++ga)
        for (int de = 0; de < m; ++de)
          for (int mu = 0; mu < m; ++mu)
            for (int nu = 0; nu < m; ++nu) rhs(al, be) += Rh(al, be, ga, de) * inv(mu, de) * inv(ga, nu) * G(mu, nu);
  if (tr.complex_target()) {
    const auto Rg = chern_curvature(tr.g.hermitian(), to_cvec(j.value));
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be)
        for (int i = 0; i < n; ++i)
          for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l)
                rhs(al, be) -= Rg(i, jj, k, l) * j.d(i, al) * std::conj(j.d(jj, be)) * A(k, l);
  } else {
    const auto Rg = riemann_curvature(tr.g.riemannian(), real_parts(to_cvec(j.value)));
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be)
        for (int i = 0; i < n; ++i)
          for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) rhs(al, be) -= Rg(i, l, k, jj) * j.d(i, al) * j.dbar(jj, be) * A(k, l);
  }
  return Form11(rhs);
}

inline FormResidual base_form(const MapTriple& tr, std::span<const Cplx<double>> z) {
  return finish(wirtinger_hessian(energy_density_field(tr), z), base_rhs(tr, z));
}

// (z, x) chart: H(𝓨₁) against 𝓨₁·Taut₁ + D/𝓗₁.
inline FormResidual dual_form(const MapTriple& tr, const BundlePoint& Q) {
  const int m = tr.m();
  const int n = tr.n();
  const int dim = m + n - 1;
  const MapJet j = map_jet(tr.f, Q.z, false);
  const auto Rh = chern_curvature(tr.h, Q.z);
  const Eigen::MatrixXcd inv = upper_index(tr.h(Q.z));
  const TautologicalMetric tm1(dual_pullback_metric(tr));
  const Eigen::VectorXcd Xt = Q.affine();
  const double H1 = tautological_H_at<double>(tm1.h, Q.z, to_cvec(Xt));
  const ScalarField Y1 = Y1_field(tr, Q.pivot);
  const auto cp = Q.chart_point();
  const Eigen::VectorXcd fx = j.d.transpose() * Xt;  // f^k_μ X̃_k
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(m, m);
  for (int al = 0; al < m; ++al)
    for (int be = 0; be < m; ++be)
      for (int ga = 0; ga < m; ++ga)
        for (int de = 0; de < m; ++de)
          for (int mu = 0; mu < m; ++mu)
            for (int nu = 0; nu < m; ++nu)
              D(al, be) += Rh(al, be, ga, de) * inv(ga, nu) * inv(mu, de) * fx(mu) * std::conj(fx(nu));
  (void)n;
  const Form11 rhs = Y1(cp).real() * tautological_curvature(tm1, Q) + (1.0 / H1) * Form11(D).embed(dim);
  return finish(wirtinger_hessian(Y1, cp), rhs);
}

// (z, w, x) chart: H(𝓨₂) against 𝓨₂·H(−log 𝓗 − log 𝓗₁).
inline FormResidual nested_form(const MapTriple& tr, const NestedBundlePoint& R) {
  const ScalarField Y2 = Y2_field(tr, R.P.pivot, R.x_pivot);
  const auto cp = R.chart_point();
  const Form11 pot = wirtinger_hessian(nested_potential(tr, R.P.pivot, R.x_pivot), cp);
  return finish(wirtinger_hessian(Y2, cp), Y2(cp).real() * pot);
}

}  // namespace detail

// A fixed scale-invariant weight on (z, W) used by S03 when none is given.
inline ScalarField default_conformal_weight(const ComplexChart& base) {
  const int m = base.dim;
  auto phi = [m](auto zw) {
    using C = std::decay_t<decltype(zw[0])>;
    using T = decltype(C{}.re);
    T zz(0.0), ww(0.0);
    for (int a = 0; a < m; ++a) {
      zz = zz + norm2(zw[static_cast<std::size_t>(a)]);
      ww = ww + norm2(zw[static_cast<std::size_t>(m + a)]);
    }
    return 0.1 * zz + 0.05 * norm2(zw[static_cast<std::size_t>(m)]) / ww;
  };
  return make_real_scalar(ComplexChart::whole(2 * m), phi);
}

inline FormResidual verify_form_inequality(SuiteId suite, const MapTriple& tr, const SamplePoint& s,
                                           const std::optional<ScalarField>& phi = std::nullopt) {
  if (suite_shape(suite) != SuiteShape::form) throw Error("verify_form_inequality: not a form suite");
  const std::string why = suite_applicability(suite, tr);
  if (!why.empty()) throw MapError(suite_name(suite) + ": " + why);
  const BundlePoint& P = s.P;
  switch (suite) {
    case SuiteId::S1:
      detail::require_bundle_point(tr, P);
      return detail::conformal_family(tr, P, std::nullopt, true);
    case SuiteId::S03:
      detail::require_bundle_point(tr, P);
      return detail::conformal_family(tr, P, phi, true);
    case SuiteId::S_minus1:
      detail::require_bundle_point(tr, P);
      return detail::conformal_family(tr, P, std::nullopt, false);
    case SuiteId::S11:
      detail::require_bundle_point(tr, P);
      detail::require_variant(tr, P.z, kPluriharmonicTol);
      return detail::conformal_family(tr, P, std::nullopt, true);
    case SuiteId::S01:
      return detail::base_form(tr, P.z);
    case SuiteId::hessian:
      detail::require_variant(tr, P.z, kPluriharmonicTol);
      return detail::base_form(tr, P.z);
    case SuiteId::S2:
      if (s.X.size() != tr.n()) throw DimensionError("S2: fiber vector X has the wrong dimension");
      return detail::dual_form(tr, BundlePoint::make(P.z, s.X));
    case SuiteId::S3:
      detail::require_bundle_point(tr, P);
      if (s.X.size() != tr.n()) throw DimensionError("S3: fiber vector X has the wrong dimension");
      return detail::nested_form(tr, NestedBundlePoint::make(P, s.X));
    default: break;
  }
  throw Error("verify_form_inequality: unhandled suite");
}

struct TraceResidual {
  double value = 0.0;  // tr_h(LHS − RHS)
  double scale = 1.0;  // max(1, |tr_h LHS|)
};

inline TraceResidual verify_trace_inequality(SuiteId suite, const MapTriple& tr, std::span<const Cplx<double>> z) {
  if (suite != SuiteId::S02 && suite != SuiteId::hessian2) throw Error("verify_trace_inequality: not a trace suite");
  const std::string why = suite_applicability(suite, tr);
  if (!why.empty()) throw MapError(suite_name(suite) + ": " + why);
  if (suite == SuiteId::hessian2) detail::require_variant(tr, z, kPluriharmonicTol);
  const auto r = detail::base_form(tr, z);
  const Eigen::MatrixXcd inv = upper_index(tr.h(z));
  // Σ h^{αβ̄} A_{αβ̄}
  auto trace = [&](const Form11& a) { return inv.cwiseProduct(a.matrix()).sum().real(); };
  TraceResidual t;
  t.value = trace(r.lhs) - trace(r.rhs);
  t.scale = std::max(1.0, std::abs(trace(r.lhs)));
  return t;
}

// ---------------------------------------------------------------------------
// Maximum-principle probe

struct ProbeReport {
  std::string pattern;  // contradiction-shaped | degenerate | vacuous | other
  double y_max = 0.0;
  double first = 0.0;   // R^h(W,W̄,W,W̄)/|W|² · 𝓨(q) in normal coordinates at π(q)
  double second = 0.0;  // R^g(F,F̄,F,F̄)/𝓗
  std::optional<BundlePoint> q;
  bool compact = false;
  bool conclusion_admissible = false;  // compact chart and contradiction-shaped pattern
};

inline ProbeReport maximum_principle_probe(const MapTriple& tr, const std::vector<BundlePoint>& grid,
                                           bool compact = false, double tol = 1e-8) {
  if (grid.empty()) throw Error("maximum_principle_probe: empty grid");
  if (!tr.complex_target() || !tr.f.holomorphic) throw MapError("maximum_principle_probe: needs a holomorphic map");
  ProbeReport r;
  r.compact = compact;
  std::size_t best = 0;
  r.y_max = -1.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double y = generalized_Y(tr, grid[k]);
    if (y > r.y_max) {
      r.y_max = y;
      best = k;
    }
  }
  r.q = grid[best];
  if (r.y_max <= 1e-14) {
    r.pattern = "vacuous";
    return r;
  }
  const BundlePoint& q = grid[best];
  const auto nc = hermitian_normal_coordinates(tr.h, q.z);
  const Eigen::VectorXcd Wn = nc.linear.fullPivLu().solve(q.W);
  const std::vector<Cplx<double>> origin(static_cast<std::size_t>(tr.m()), Cplx<double>(0.0));
  r.first = horizontal_curvature_value(TautologicalMetric(nc.metric), BundlePoint::make(origin, Wn)) * r.y_max;

  const MapJet j = map_jet(tr.f, q.z, false);
  const Eigen::VectorXcd F = j.d * q.W;
  const double H = (q.W.transpose() * tr.h(q.z) * q.W.conjugate())(0, 0).real();
  r.second = chern_curvature(tr.g.hermitian(), to_cvec(j.value)).contract(F, F, F, F).real() / H;

  if (r.first > tol && r.second <= tol)
    r.pattern = "contradiction-shaped";
  else if (std::abs(r.first) <= tol && std::abs(r.second) <= tol)
    r.pattern = "degenerate";
  else
    r.pattern = "other";
  r.conclusion_admissible = compact && r.pattern == "contradiction-shaped";
  return r;
}

// ---------------------------------------------------------------------------
// Suite runner

struct VerificationCase {
  std::string name;
  MapTriple triple;
  std::optional<ScalarField> weight;  // φ for S03
  bool compact = false;
};

struct RunSettings {
  int samples = 50;
  std::uint64_t seed = 1;
  Tolerances tol;
  int workers = 0;               // 0: GED_WORKERS or hardware concurrency
  double sample_fraction = 0.8;  // of the source chart
  int probe_directions = 8;      // fiber directions per base point in the probe grid
};

enum class Verdict { pass, fail, not_applicable, error };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not_applicable";
    case Verdict::error: return "error";
  }
  return "?";
}

struct PointResidual {
  std::size_t index = 0;
  std::vector<double> coordinates;  // real coordinates of the chart point
  double residual = 0.0;
  double threshold = 0.0;
  bool ok = true;
  double slack = 0.0;  // distance from the threshold in the passing direction
  std::vector<std::complex<double>> eigenvector;
};

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

struct VerificationReport {
  std::string case_name;
  SuiteId suite = SuiteId::S1;
  Verdict verdict = Verdict::pass;
  std::string message;
  std::string residual_kind;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<PointResidual> points;
  std::optional<std::size_t> worst;  // index into points
  std::vector<HistogramBin> histogram;
  std::optional<ProbeReport> probe;
};

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t suite_seed(std::uint64_t seed, const std::string& case_name, SuiteId s) {
  return splitmix(seed ^ splitmix(fnv1a(case_name) + static_cast<std::uint64_t>(s)));
}

inline int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GED_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(k) for k in [0, count) on a pool; results land in caller-owned
// slots, so the outcome does not depend on scheduling.
template <class F>
void parallel_for(std::size_t count, int workers, F body) {
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), count);
  if (w <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) body(k);
    });
  for (auto& th : pool) th.join();
}

inline std::vector<SamplePoint> sample_points(const MapTriple& tr, int count, std::uint64_t seed, double fraction) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<SamplePoint> out;
  for (int k = 0; k < count; ++k) {
    auto z = tr.h.chart().sample(rng, fraction);
    Eigen::VectorXcd W(tr.m()), X(tr.n());
    for (int a = 0; a < tr.m(); ++a) W(a) = {nd(rng), nd(rng)};
    for (int a = 0; a < tr.n(); ++a) X(a) = {nd(rng), nd(rng)};
    out.push_back({BundlePoint::make(std::move(z), W), X});
  }
  return out;
}

inline std::vector<HistogramBin> histogram(const std::vector<PointResidual>& pts, int bins = 10) {
  if (pts.empty()) return {};
  double lo = pts.front().residual, hi = lo;
  for (const auto& p : pts) {
    lo = std::min(lo, p.residual);
    hi = std::max(hi, p.residual);
  }
  if (!(hi > lo)) return {{lo, hi, pts.size()}};
  std::vector<HistogramBin> h(static_cast<std::size_t>(bins));
  const double w = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) h[static_cast<std::size_t>(b)] = {lo + b * w, b + 1 == bins ? hi : lo + (b + 1) * w, 0};
  for (const auto& p : pts) {
    const int b = std::min(bins - 1, static_cast<int>((p.residual - lo) / w));
    ++h[static_cast<std::size_t>(b)].count;
  }
  return h;
}

namespace detail {

inline std::vector<double> real_coords(std::span<const Cplx<double>> c) { return pack<double>(c); }

inline std::vector<double> sample_coords(SuiteId s, const SamplePoint& sp) {
  switch (s) {
    case SuiteId::S01:
    case SuiteId::S02:
    case SuiteId::hessian:
    case SuiteId::hessian2: return real_coords(sp.P.z);
    case SuiteId::S2: return real_coords(BundlePoint::make(sp.P.z, sp.X).chart_point());
    case SuiteId::S3: return real_coords(NestedBundlePoint::make(sp.P, sp.X).chart_point());
    default: return real_coords(sp.P.chart_point());
  }
}

inline PointResidual evaluate_point(SuiteId s, const VerificationCase& c, const SamplePoint& sp,
                                    const Tolerances& tol) {
  const MapTriple& tr = c.triple;
  PointResidual p;
  p.coordinates = sample_coords(s, sp);
  switch (suite_shape(s)) {
    case SuiteShape::form: {
      std::optional<ScalarField> phi;
      if (s == SuiteId::S03) phi = c.weight ? c.weight : std::optional<ScalarField>(default_conformal_weight(tr.h.chart()));
      const auto r = verify_form_inequality(s, tr, sp, phi);
      p.residual = r.min_eigenvalue;
      p.threshold = -tol.relative * r.scale;
      p.slack = p.residual / r.scale + tol.relative;
      p.eigenvector.assign(r.eigenvector.data(), r.eigenvector.data() + r.eigenvector.size());
      break;
    }
    case SuiteShape::trace: {
      const auto r = verify_trace_inequality(s, tr, sp.P.z);
      p.residual = r.value;
      p.threshold = -tol.relative * r.scale;
      p.slack = p.residual / r.scale + tol.relative;
      break;
    }
    case SuiteShape::exact: {
      const auto r = verify_exact_identity(s, tr, sp.P);
      p.residual = r.residual;
      p.threshold = tol.exact;
      p.slack = tol.exact - r.residual;
      break;
    }
    case SuiteShape::psd: {
      const Form11 W = assemble_W_form(tr, sp.P);
      p.residual = min_eigenvalue(W);
      p.threshold = -tol.w_psd;
      p.slack = p.residual + tol.w_psd;
      const Eigen::VectorXcd v = min_eigenvector(W);
      p.eigenvector.assign(v.data(), v.data() + v.size());
      break;
    }
    case SuiteShape::probe: break;
  }
  p.ok = p.slack >= 0.0;
  return p;
}

inline std::string residual_kind(SuiteId s) {
  switch (suite_shape(s)) {
    case SuiteShape::form: return "min eigenvalue of LHS - RHS";
    case SuiteShape::trace: return "trace of LHS - RHS";
    case SuiteShape::exact: return "relative max-abs of LHS - RHS";
    case SuiteShape::psd: return "min eigenvalue of W";
    case SuiteShape::probe: return "Y on the probe grid";
  }
  return "";
}

inline double suite_tolerance(SuiteId s, const Tolerances& tol) {
  switch (suite_shape(s)) {
    case SuiteShape::form:
    case SuiteShape::trace: return tol.relative;
    case SuiteShape::exact: return tol.exact;
    case SuiteShape::psd: return tol.w_psd;
    case SuiteShape::probe: return tol.probe;
  }
  return 0.0;
}

}  // namespace detail

inline VerificationReport run_suite(const VerificationCase& c, SuiteId s, const RunSettings& cfg) {
  VerificationReport rep;
  rep.case_name = c.name;
  rep.suite = s;
  rep.seed = suite_seed(cfg.seed, c.name, s);
  rep.residual_kind = detail::residual_kind(s);
  rep.tolerance = detail::suite_tolerance(s, cfg.tol);
  if (cfg.samples < 1) throw Error("run_suite: sample count must be positive");

  if (const std::string why = suite_applicability(s, c.triple); !why.empty()) {
    rep.verdict = Verdict::not_applicable;
    rep.message = why;
    return rep;
  }
  try {
    const auto pts = sample_points(c.triple, cfg.samples, rep.seed, cfg.sample_fraction);
    for (const auto& sp : pts)
      if (const std::string why = point_applicability(s, c.triple, sp.P.z, cfg.tol); !why.empty()) {
        rep.verdict = Verdict::not_applicable;
        rep.message = why;
        return rep;
      }

    if (s == SuiteId::S5_probe) {
      std::vector<BundlePoint> grid;
      std::mt19937_64 rng(splitmix(rep.seed));
      std::normal_distribution<double> nd;
      for (const auto& sp : pts)
        for (int d = 0; d < cfg.probe_directions; ++d) {
          Eigen::VectorXcd W(c.triple.m());
          for (int a = 0; a < c.triple.m(); ++a) W(a) = {nd(rng), nd(rng)};
          grid.push_back(BundlePoint::make(sp.P.z, W));
        }
      rep.probe = maximum_principle_probe(c.triple, grid, c.compact, cfg.tol.probe);
      rep.message = "pattern: " + rep.probe->pattern;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        PointResidual p;
        p.index = k;
        p.coordinates = detail::real_coords(grid[k].chart_point());
        p.residual = generalized_Y(c.triple, grid[k]);
        p.slack = rep.probe->y_max - p.residual;
        rep.points.push_back(std::move(p));
      }
      rep.histogram = histogram(rep.points);
      return rep;
    }

    std::vector<PointResidual> results(pts.size());
    std::vector<std::string> errors(pts.size());
    parallel_for(pts.size(), worker_count(cfg.workers), [&](std::size_t k) {
      try {
        results[k] = detail::evaluate_point(s, c, pts[k], cfg.tol);
        results[k].index = k;
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    });
    for (std::size_t k = 0; k < errors.size(); ++k)
      if (!errors[k].empty()) {
        rep.verdict = Verdict::error;
        rep.message = "sample " + std::to_string(k) + ": " + errors[k];
        return rep;
      }
    rep.points = std::move(results);
  } catch (const std::exception& e) {
    rep.verdict = Verdict::error;
    rep.message = e.what();
    return rep;
  }
  std::size_t worst = 0;
  for (std::size_t k = 1; k < rep.points.size(); ++k)
    if (rep.points[k].slack < rep.points[worst].slack) worst = k;
  rep.worst = worst;
  rep.histogram = histogram(rep.points);
  const bool ok = std::all_of(rep.points.begin(), rep.points.end(), [](const PointResidual& p) { return p.ok; });
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  if (!ok) rep.message = "worst residual " + std::to_string(rep.points[worst].residual) + " at sample " + std::to_string(worst);
  return rep;
}

inline std::vector<VerificationReport> run_suites(const std::vector<VerificationCase>& cases,
                                                  const std::vector<SuiteId>& suites, const RunSettings& cfg) {
  std::vector<VerificationReport> out;
  for (const auto& c : cases)
    for (SuiteId s : suites) out.push_back(run_suite(c, s, cfg));
  return out;
}

}  // namespace ged

#endif  // GED_VERIFY_HPP
