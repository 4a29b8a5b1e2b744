#ifndef GED_PROJBUNDLE_HPP
#define GED_PROJBUNDLE_HPP

// Projectivized bundles P(E) -> M of trivialized Hermitian bundles over a
// chart: affine fiber charts, the tautological metric 𝓗 = h(W, W̄), its
// curvature −∂∂̄ log 𝓗 (+ ∂∂̄φ), and fiberwise Fubini–Study integration.
//
// A bundle chart has coordinates ζ = (z, w): z on the base, w the affine
// fiber coordinates W/W^{pivot} with the pivot entry removed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/legendre.hpp>

#include "ged/curvature.hpp"
#include "ged/form11.hpp"
#include "ged/metric.hpp"
#include "ged/wirtinger.hpp"

namespace ged {

// ---------------------------------------------------------------------------
// Bundle metrics: rank-r Hermitian metrics on a trivial bundle over a chart.

class BundleMetric {
 public:
  BundleMetric() = default;
  BundleMetric(ComplexChart base, int rank, ComplexField field, std::string name = {})
      : chart_(std::move(base)), rank_(rank), field_(std::move(field)), name_(std::move(name)) {
    if (rank_ < 1) throw DimensionError("BundleMetric: rank must be positive");
    if (field_.in_dim() != chart_.dim || field_.out_dim() != rank_ * rank_)
      throw DimensionError("BundleMetric: field shape does not match chart and rank");
  }
  explicit BundleMetric(const HermitianMetricField& h) : BundleMetric(h.chart(), h.dim(), h.field(), h.name()) {
    options = h.options;
  }

  int base_dim() const { return chart_.dim; }
  int rank() const { return rank_; }
  const ComplexChart& chart() const { return chart_; }
  const ComplexField& field() const { return field_; }
  const std::string& name() const { return name_; }
  DiffOptions options;

  template <class T>
  CMat<T> at(std::span<const Cplx<T>> z) const {
    const auto v = field_(z);
    return from_flat<T>(std::span<const Cplx<T>>(v), rank_, rank_);
  }
  Eigen::MatrixXcd operator()(std::span<const Cplx<double>> z) const { return to_eigen(at<double>(z)); }

  // The same data as a metric on the tangent bundle (rank = base dimension).
  HermitianMetricField as_tangent() const {
    if (rank_ != chart_.dim) throw DimensionError("BundleMetric: rank differs from the base dimension");
    HermitianMetricField h(chart_, field_, name_);
    h.options = options;
    return h;
  }

 private:
  ComplexChart chart_;
  int rank_ = 0;
  ComplexField field_;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Points and charts

inline constexpr double kPivotRatioTol = 1e-12;

// Homogeneous vector with entry 1 at `pivot` and the affine coordinates elsewhere.
template <class T>
std::vector<Cplx<T>> homogeneous(std::span<const Cplx<T>> w, int pivot) {
  std::vector<Cplx<T>> W(w.size() + 1);
  std::size_t k = 0;
  for (std::size_t a = 0; a < W.size(); ++a)
    W[a] = static_cast<int>(a) == pivot ? Cplx<T>(1.0) : w[k++];
  return W;
}

inline int largest_modulus_index(const Eigen::VectorXcd& W) {
  Eigen::Index i = 0;
  W.cwiseAbs().maxCoeff(&i);
  return static_cast<int>(i);
}

struct BundlePoint {
  std::vector<Cplx<double>> z;  // base point
  Eigen::VectorXcd W;           // homogeneous fiber coordinates
  int pivot = 0;                // affine chart index, W^{pivot} ≠ 0
  std::vector<Cplx<double>> w;  // affine coordinates W/W^{pivot} without the pivot entry

  // Pivot defaults to the largest |W^α|.
  static BundlePoint make(std::vector<Cplx<double>> z, Eigen::VectorXcd W, int pivot = -1) {
    if (W.size() < 1 || !(W.norm() > 0.0)) throw Error("BundlePoint: fiber vector must be nonzero");
    BundlePoint p;
    p.z = std::move(z);
    p.pivot = pivot < 0 ? largest_modulus_index(W) : pivot;
    if (p.pivot >= W.size()) throw DimensionError("BundlePoint: pivot out of range");
    if (!(std::abs(W(p.pivot)) > kPivotRatioTol * W.cwiseAbs().maxCoeff()))
      throw Error("BundlePoint: fiber vector vanishes at the pivot");
    const std::complex<double> s = W(p.pivot);
    for (Eigen::Index a = 0; a < W.size(); ++a)
      if (a != p.pivot) p.w.emplace_back(W(a) / s);
    p.W = std::move(W);
    return p;
  }

  int rank() const { return static_cast<int>(W.size()); }

  // W / W^{pivot}
  Eigen::VectorXcd affine() const { return W / W(pivot); }

  // (z, w)
  std::vector<Cplx<double>> chart_point() const {
    std::vector<Cplx<double>> c = z;
    c.insert(c.end(), w.begin(), w.end());
    return c;
  }

  BundlePoint with_pivot(int p) const { return make(z, W, p); }
};

// Chart of P(E) over `base` for a rank-r bundle: base domain times unbounded
// affine fiber coordinates.
inline ComplexChart bundle_chart(const ComplexChart& base, int rank) {
  return {base.dim + rank - 1, base.domain.concat(Domain::unbounded(2 * (rank - 1))), base.scale};
}

// ---------------------------------------------------------------------------
// Tautological metric

// 𝓗 = h(z)(W, W̄), optionally weighted as 𝓗e^{−φ}. The weight φ is a real
// field on ℂ^{m+r} evaluated at (z, W) and must be invariant under W ↦ λW.
struct TautologicalMetric {
  BundleMetric h;
  std::optional<ScalarField> phi;

  TautologicalMetric() = default;
  explicit TautologicalMetric(BundleMetric metric, std::optional<ScalarField> weight = std::nullopt)
      : h(std::move(metric)), phi(std::move(weight)) {
    if (phi) {
      if (phi->is_complex()) throw Error("TautologicalMetric: weight must be real-valued");
      if (phi->dim() != h.base_dim() + h.rank())
        throw DimensionError("TautologicalMetric: weight must be a field of (z, W)");
    }
  }
  explicit TautologicalMetric(const HermitianMetricField& metric, std::optional<ScalarField> weight = std::nullopt)
      : TautologicalMetric(BundleMetric(metric), std::move(weight)) {}

  int base_dim() const { return h.base_dim(); }
  int rank() const { return h.rank(); }
  int chart_dim() const { return base_dim() + rank() - 1; }
  ComplexChart chart() const { return bundle_chart(h.chart(), rank()); }
};

template <class T>
T tautological_H_at(const BundleMetric& h, std::span<const Cplx<T>> z, std::span<const Cplx<T>> W) {
  return sesquilinear(h.at<T>(z), W, W).re;
}

template <class T>
T weight_at(const std::optional<ScalarField>& phi, std::span<const Cplx<T>> z, std::span<const Cplx<T>> W) {
  if (!phi) return T(0.0);
  std::vector<Cplx<T>> zw(z.begin(), z.end());
  zw.insert(zw.end(), W.begin(), W.end());
  const auto x = pack<T>(std::span<const Cplx<T>>(zw));
  T y[1];
  phi->map.eval<T>(std::span<const T>(x), std::span<T>(y, 1));
  return y[0];
}

inline void check_bundle_point(const TautologicalMetric& tm, const BundlePoint& P) {
  if (static_cast<int>(P.z.size()) != tm.base_dim() || P.rank() != tm.rank())
    throw DimensionError("bundle point does not match the bundle dimensions");
}

// 𝓗 = h_{γδ̄}W^γW̄^δ (unweighted).
inline double tautological_H(const TautologicalMetric& tm, const BundlePoint& P) {
  check_bundle_point(tm, P);
  const auto W = to_cvec(P.W);
  return tautological_H_at<double>(tm.h, P.z, W);
}

// 𝓗_φ = 𝓗e^{−φ}.
inline double weighted_H(const TautologicalMetric& tm, const BundlePoint& P) {
  check_bundle_point(tm, P);
  const auto W = to_cvec(P.W);
  return tautological_H_at<double>(tm.h, P.z, W) * std::exp(-weight_at<double>(tm.phi, P.z, W));
}

// −log 𝓗 + φ on the (z, w) chart of the given pivot; its complex Hessian is
// the curvature of the tautological line bundle.
inline ScalarField tautological_potential(const TautologicalMetric& tm, int pivot) {
  const int m = tm.base_dim();
  const BundleMetric h = tm.h;
  const auto phi = tm.phi;
  auto f = [h, phi, m, pivot](auto zeta) {
    using C = std::decay_t<decltype(zeta[0])>;
    using T = decltype(C{}.re);
    const auto z = zeta.subspan(0, static_cast<std::size_t>(m));
    const auto W = homogeneous<T>(zeta.subspan(static_cast<std::size_t>(m)), pivot);
    const std::span<const Cplx<T>> Ws(W);
    T v = -log(tautological_H_at<T>(h, z, Ws));
    if (phi) v = v + weight_at<T>(phi, z, Ws);
    return v;
  };
  return make_real_scalar(tm.chart(), f, tm.h.options);
}

// Coefficient matrix of √−1∂∂̄log 𝓗_φ⁻¹ on the (z, w) chart, dimension m + r − 1.
inline Form11 tautological_curvature(const TautologicalMetric& tm, const BundlePoint& P) {
  check_bundle_point(tm, P);
  const ScalarField pot = tautological_potential(tm, P.pivot);
  return wirtinger_hessian(pot, P.chart_point());
}

// (√−1∂∂̄log 𝓗⁻¹)(u, ū) at u = (W, 0), requiring normal base coordinates at z.
inline double horizontal_curvature_value(const TautologicalMetric& tm, const BundlePoint& P) {
  check_bundle_point(tm, P);
  const auto jet = hermitian_jet(tm.h.as_tangent(), P.z, false);
  const auto nd = normal_defects(jet);
  if (nd.value > kNormalPointTol || nd.derivative > kNormalPointTol)
    throw PreconditionError("horizontal_curvature_value: base coordinates are not normal at the point (|h-δ| = " +
                            std::to_string(nd.value) + ", antisymmetry defect " + std::to_string(nd.derivative) +
                            ")");
  const Form11 taut = tautological_curvature(tm, P);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(taut.dim());
  u.head(tm.base_dim()) = P.W;
  return evaluate_form11(taut, u);
}

// ---------------------------------------------------------------------------
// RC-positivity of the tautological line bundle (sampled)

struct RcLinePoint {
  double max_eigenvalue = 0.0;       // of the full curvature form
  double base_max_eigenvalue = 0.0;  // of its base block
  bool rc_positive = false;
};

struct RcLineReport {
  std::vector<RcLinePoint> points;
  double min_max_eigenvalue = 0.0;  // sampled analogue of the uniform lower bound
  bool all_positive = false;
};

inline RcLineReport rc_positive_line_bundle(const TautologicalMetric& tm, const std::vector<BundlePoint>& sample) {
  if (sample.empty()) throw Error("rc_positive_line_bundle: empty sample");
  RcLineReport r;
  r.min_max_eigenvalue = std::numeric_limits<double>::infinity();
  r.all_positive = true;
  for (const auto& P : sample) {
    const Form11 c = tautological_curvature(tm, P);
    RcLinePoint p;
    p.max_eigenvalue = max_eigenvalue(c);
    p.base_max_eigenvalue = max_eigenvalue(c.block(0, tm.base_dim()));
    p.rc_positive = p.max_eigenvalue > kRcPositiveTol;
    r.min_max_eigenvalue = std::min(r.min_max_eigenvalue, p.max_eigenvalue);
    r.all_positive = r.all_positive && p.rc_positive;
    r.points.push_back(p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fiber integration

class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Nodes V on the unit sphere of ℂ^r with weights of the normalized
// Fubini–Study measure on P^{r−1} (total weight 1). The Hopf map pushes the
// uniform measure of S^{2r−1} to it. Under that measure the squared moduli
// t_k = |V_k|² are uniform on the simplex and the phases are independent and
// uniform. The simplex is parametrized by stick-breaking t_1 = u_1,
// t_k = u_k Π_{j<k}(1 − u_j), density (r−1)! Π_j (1 − u_j)^{r−1−j}, with
// Gauss–Legendre in each u_j; phases use the trapezoid rule, the first phase
// fixed by projective invariance.
struct FiberRule {
  std::vector<Eigen::VectorXcd> nodes;
  std::vector<double> weights;
};

inline std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b) {
  std::vector<std::pair<double, double>> out;
  const auto zeros = boost::math::legendre_p_zeros<double>(n);  // nonnegative zeros
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime<double>(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.emplace_back(mid + half * x, half * w);
    if (x != 0.0) out.emplace_back(mid - half * x, half * w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline FiberRule fiber_rule(int r, int order) {
  if (r < 1) throw DimensionError("fiber_rule: rank must be positive");
  if (order < 1) throw Error("fiber_rule: order must be positive");
  FiberRule rule;
  if (r == 1) {
    rule.nodes.push_back(Eigen::VectorXcd::Ones(1));
    rule.weights.push_back(1.0);
    return rule;
  }
  const auto gl = gauss_legendre(order, 0.0, 1.0);
  const int nt = 2 * order;
  double factorial = 1.0;
  for (int k = 2; k < r; ++k) factorial *= k;
  const double phase_w = std::pow(1.0 / nt, r - 1);
  const int n_u = static_cast<int>(gl.size());
  std::vector<int> iu(static_cast<std::size_t>(r - 1), 0);
  std::vector<int> it(static_cast<std::size_t>(r - 1), 0);
  while (true) {
    std::vector<double> rho(static_cast<std::size_t>(r));
    double rest = 1.0, w = factorial * phase_w;
    for (int j = 0; j < r - 1; ++j) {
      const auto& [u, wu] = gl[static_cast<std::size_t>(iu[static_cast<std::size_t>(j)])];
      rho[static_cast<std::size_t>(j)] = std::sqrt(rest * u);
      w *= wu * std::pow(1.0 - u, r - 2 - j);
      rest *= 1.0 - u;
    }
    rho[static_cast<std::size_t>(r - 1)] = std::sqrt(rest);
    for (std::fill(it.begin(), it.end(), 0);;) {
      Eigen::VectorXcd V(r);
      V(0) = rho[0];
      for (int k = 1; k < r; ++k)
        V(k) = std::polar(rho[static_cast<std::size_t>(k)], 2.0 * std::numbers::pi * it[static_cast<std::size_t>(k - 1)] / nt);
      rule.nodes.push_back(V);
      rule.weights.push_back(w);
      int k = 0;
      while (k < r - 1 && ++it[static_cast<std::size_t>(k)] == nt) it[static_cast<std::size_t>(k++)] = 0;
      if (k == r - 1) break;
    }
    int j = 0;
    while (j < r - 1 && ++iu[static_cast<std::size_t>(j)] == n_u) iu[static_cast<std::size_t>(j++)] = 0;
    if (j == r - 1) break;
  }
  return rule;
}

// A function of the homogeneous fiber vector at a fixed base point,
// invariant under W ↦ λW.
using FiberDensity = std::function<double(const Eigen::VectorXcd& W)>;

struct FiberIntegral {
  double value = 0.0;
  double coarse = 0.0;  // at the requested order
  double difference = 0.0;
  int order = 0;        // order of `value` (twice the requested one)
};

inline constexpr double kQuadratureTol = 1e-9;

// ∫_{P(E_z)} density dV_FS with total fiber volume 1, where dV_FS is the
// Fubini–Study measure of the Hermitian form h on the fiber. Substituting
// W = AV with Aᵀ h Ā = I reduces it to the standard one.
inline FiberIntegral fiber_integrate(const FiberDensity& density, const Eigen::MatrixXcd& h, int order,
                                     double tol = kQuadratureTol) {
  const int r = static_cast<int>(h.rows());
  require_positive(h, "fiber_integrate");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::MatrixXcd A = es.operatorInverseSqrt().conjugate();
  auto run = [&](int q) {
    const FiberRule rule = fiber_rule(r, q);
    CompensatedSum s;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) s.add(rule.weights[k] * density(A * rule.nodes[k]));
    return s.value();
  };
  FiberIntegral out;
  out.coarse = run(order);
  out.value = run(2 * order);
  out.order = 2 * order;
  out.difference = std::abs(out.value - out.coarse);
  if (!(out.difference <= tol * std::max(1.0, std::abs(out.value))))
    throw QuadratureError("fiber_integrate: quadrature did not converge (orders " + std::to_string(order) + " and " +
                          std::to_string(2 * order) + " differ by " + std::to_string(out.difference) + ")");
  return out;
}

// Density given as a real field on the (z, w) chart of `pivot`.
inline FiberIntegral fiber_integrate(const TautologicalMetric& tm, const ScalarField& density, int pivot,
                                     std::span<const Cplx<double>> z, int order, double tol = kQuadratureTol) {
  if (density.is_complex()) throw Error("fiber_integrate: density must be real-valued");
  if (density.dim() != tm.chart_dim()) throw DimensionError("fiber_integrate: density lives on a different chart");
  const std::vector<Cplx<double>> z0(z.begin(), z.end());
  auto f = [&](const Eigen::VectorXcd& W) {
    const BundlePoint P = BundlePoint::make(z0, W, pivot);
    return density(P.chart_point()).real();
  };
  return fiber_integrate(f, tm.h(z), order, tol);
}

}  // namespace ged

#endif  // GED_PROJBUNDLE_HPP
