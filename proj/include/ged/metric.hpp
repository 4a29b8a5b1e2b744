#ifndef GED_METRIC_HPP
#define GED_METRIC_HPP

// Hermitian metrics h_{αβ̄}(z) on complex charts and Riemannian metrics
// g_{ij}(x) on real charts, with their first and second derivative jets.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ged/chart.hpp"
#include "ged/diff.hpp"
#include "ged/field.hpp"
#include "ged/smallmat.hpp"
#include "ged/wirtinger.hpp"

namespace ged {

class MetricError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kHermitianDefectTol = 1e-12;

// ---------------------------------------------------------------------------
// Hermitian metrics

class HermitianMetricField {
 public:
  HermitianMetricField() = default;
  HermitianMetricField(ComplexChart chart, ComplexField field, std::string name = {})
      : chart_(std::move(chart)), field_(std::move(field)), name_(std::move(name)) {
    const int m = chart_.dim;
    if (field_.in_dim() != m || field_.out_dim() != m * m)
      throw DimensionError("HermitianMetricField: field shape does not match the chart dimension");
  }

  int dim() const { return chart_.dim; }
  const ComplexChart& chart() const { return chart_; }
  const ComplexField& field() const { return field_; }
  const std::string& name() const { return name_; }
  DiffOptions options;

  template <class T>
  CMat<T> at(std::span<const Cplx<T>> z) const {
    const auto v = field_(z);
    return from_flat<T>(std::span<const Cplx<T>>(v), dim(), dim());
  }

  Eigen::MatrixXcd operator()(std::span<const Cplx<double>> z) const { return to_eigen(at<double>(z)); }
  Eigen::MatrixXcd operator()(const std::vector<Cplx<double>>& z) const {
    return (*this)(std::span<const Cplx<double>>(z));
  }

 private:
  ComplexChart chart_;
  ComplexField field_;
  std::string name_;
};

// `f(span<const Cplx<T>> z, CMat<T>& h)` filling an m×m matrix.
template <class F>
HermitianMetricField make_hermitian_metric(ComplexChart chart, F f, std::string name = {}) {
  const int m = chart.dim;
  auto fill = [f, m](auto z, auto out) {
    using C = typename decltype(out)::element_type;
    using T = decltype(C{}.re);
    CMat<T> h(m, m);
    f(z, h);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out[static_cast<std::size_t>(a * m + b)] = h(a, b);
  };
  return HermitianMetricField(std::move(chart), make_complex_field(m, m * m, fill), std::move(name));
}

inline double hermitian_defect(const Eigen::MatrixXcd& h) { return (h - h.adjoint()).cwiseAbs().maxCoeff(); }

inline double min_hermitian_eigenvalue(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline void require_positive(const Eigen::MatrixXcd& h, const char* what) {
  const double defect = hermitian_defect(h);
  if (!(defect <= kHermitianDefectTol * std::max(1.0, h.cwiseAbs().maxCoeff())))
    throw MetricError(std::string(what) + ": metric is not Hermitian (defect " + std::to_string(defect) + ")");
  const double ev = min_hermitian_eigenvalue(h);
  if (!(ev > 0.0))
    throw MetricError(std::string(what) + ": metric is not positive definite (smallest eigenvalue " +
                      std::to_string(ev) + ")");
}

// Checks Hermitian symmetry and positivity at seeded interior probe points.
inline void validate_metric(const HermitianMetricField& g, int probes = 100, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < probes; ++k) {
    const auto z = g.chart().sample(rng, 0.9);
    require_positive(g(z), g.name().empty() ? "hermitian metric" : g.name().c_str());
  }
}

struct HermitianJet {
  Eigen::MatrixXcd h;                                // h_{ab̄}
  Eigen::MatrixXcd inv;                              // h^{ab̄}: inv(a,b) pairs with h_{·b̄}
  std::vector<Eigen::MatrixXcd> d;                   // d[c](a,b) = ∂_c h_{ab̄}
  std::vector<Eigen::MatrixXcd> dbar;                // dbar[c](a,b) = ∂_c̄ h_{ab̄}
  std::vector<std::vector<Eigen::MatrixXcd>> ddbar;  // ddbar[c][e](a,b) = ∂_c∂_ē h_{ab̄}
};

// inverse(transpose(h)): the contravariant metric with Σ_b h^{ab̄} h_{cb̄} = δ^a_c.
inline Eigen::MatrixXcd upper_index(const Eigen::MatrixXcd& h) { return h.transpose().inverse(); }

inline HermitianJet hermitian_jet(const HermitianMetricField& g, std::span<const Cplx<double>> z, bool second = true) {
  const int m = g.dim();
  const auto x = pack<double>(z);
  require_margin(g.chart().domain, x, (second ? 3 : 2) * g.options.step * g.chart().scale, "hermitian metric jet");
  HermitianJet j;
  j.h = g(z);
  require_positive(j.h, "hermitian metric jet");
  j.inv = upper_index(j.h);
  const DiffOptions opt = scaled(g.options, g.chart().scale);
  const auto w1 = wirtinger_first(g.field(), z, opt);
  j.d.assign(m, Eigen::MatrixXcd(m, m));
  j.dbar.assign(m, Eigen::MatrixXcd(m, m));
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        j.d[c](a, b) = w1.d(a * m + b, c);
        j.dbar[c](a, b) = w1.dbar(a * m + b, c);
      }
  if (second) {
    const auto w2 = wirtinger_second(g.field(), z, opt);
    j.ddbar.assign(m, std::vector<Eigen::MatrixXcd>(m, Eigen::MatrixXcd(m, m)));
    for (int c = 0; c < m; ++c)
      for (int e = 0; e < m; ++e)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) j.ddbar[c][e](a, b) = w2.ddbar[a * m + b](c, e);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Riemannian metrics

class RiemannianMetricField {
 public:
  RiemannianMetricField() = default;
  RiemannianMetricField(RealChart chart, RealMap map, std::string name = {})
      : chart_(std::move(chart)), map_(std::move(map)), name_(std::move(name)) {
    const int n = chart_.dim;
    if (map_.in_dim() != n || map_.out_dim() != n * n)
      throw DimensionError("RiemannianMetricField: field shape does not match the chart dimension");
  }

  int dim() const { return chart_.dim; }
  const RealChart& chart() const { return chart_; }
  const RealMap& map() const { return map_; }
  const std::string& name() const { return name_; }
  DiffOptions options;

  template <class T>
  std::vector<T> at(std::span<const T> x) const {
    return map_(x);  // row-major n×n
  }

  Eigen::MatrixXd operator()(std::span<const double> x) const {
    const int n = dim();
    const auto v = map_(x);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = v[static_cast<std::size_t>(i * n + j)];
    return g;
  }
  Eigen::MatrixXd operator()(const std::vector<double>& x) const { return (*this)(std::span<const double>(x)); }

 private:
  RealChart chart_;
  RealMap map_;
  std::string name_;
};

// `f(span<const T> x, span<T> g)` filling a row-major n×n matrix.
template <class F>
RiemannianMetricField make_riemannian_metric(RealChart chart, F f, std::string name = {}) {
  const int n = chart.dim;
  return RiemannianMetricField(std::move(chart), make_real_map(n, n * n, f), std::move(name));
}

inline void require_positive(const Eigen::MatrixXd& g, const char* what) {
  const double defect = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (!(defect <= kHermitianDefectTol * std::max(1.0, g.cwiseAbs().maxCoeff())))
    throw MetricError(std::string(what) + ": metric is not symmetric (defect " + std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues()(0) > 0.0))
    throw MetricError(std::string(what) + ": metric is not positive definite (smallest eigenvalue " +
                      std::to_string(es.eigenvalues()(0)) + ")");
}

inline void validate_metric(const RiemannianMetricField& g, int probes = 100, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < probes; ++k) {
    const auto x = g.chart().sample(rng, 0.9);
    require_positive(g(x), g.name().empty() ? "riemannian metric" : g.name().c_str());
  }
}

struct RiemannianJet {
  Eigen::MatrixXd g;
  Eigen::MatrixXd inv;
  std::vector<Eigen::MatrixXd> d;                   // d[k](i,j) = ∂_k g_{ij}
  std::vector<std::vector<Eigen::MatrixXd>> dd;     // dd[k][l](i,j) = ∂_k∂_l g_{ij}
};

inline RiemannianJet riemannian_jet(const RiemannianMetricField& g, std::span<const double> x, bool second = true) {
  const int n = g.dim();
  require_margin(g.chart().domain, x, (second ? 3 : 2) * g.options.step * g.chart().scale, "riemannian metric jet");
  RiemannianJet j;
  j.g = g(x);
  require_positive(j.g, "riemannian metric jet");
  j.inv = j.g.inverse();
  const DiffOptions opt = scaled(g.options, g.chart().scale);
  const Eigen::MatrixXd jac = jacobian(g.map(), x, opt);
  j.d.assign(n, Eigen::MatrixXd(n, n));
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) j.d[k](a, b) = jac(a * n + b, k);
  if (second) {
    const auto hs = hessian(g.map(), x, opt);
    j.dd.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd(n, n)));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) j.dd[k][l](a, b) = hs[static_cast<std::size_t>(a * n + b)](k, l);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Constructions

// The Riemannian metric 2·Re h on the underlying real chart, coordinates
// ordered (x_1, y_1, x_2, y_2, ...). For a Kähler h the two curvature
// conventions then agree: Riemannian sectional curvature of a complex line
// equals its holomorphic sectional curvature.
inline RiemannianMetricField realify(const HermitianMetricField& h) {
  const int m = h.dim();
  RealChart chart{2 * m, h.chart().domain, h.chart().scale};
  const ComplexField field = h.field();
  auto body = [field, m](auto x, auto out) {
    using T = typename decltype(out)::element_type;
    const auto z = unpack<T>(x);
    const auto v = field(std::span<const Cplx<T>>(z));
    const int n = 2 * m;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Cplx<T>& c = v[static_cast<std::size_t>(i * m + j)];
        out[static_cast<std::size_t>((2 * i) * n + 2 * j)] = 2.0 * c.re;
        out[static_cast<std::size_t>((2 * i) * n + 2 * j + 1)] = 2.0 * c.im;
        out[static_cast<std::size_t>((2 * i + 1) * n + 2 * j)] = -2.0 * c.im;
        out[static_cast<std::size_t>((2 * i + 1) * n + 2 * j + 1)] = 2.0 * c.re;
      }
  };
  EvalTuple fns;
  if (field.supports<double>()) std::get<EvalFn<double>>(fns) = [body](std::span<const double> x, std::span<double> y) { body(x, y); };
  if (field.supports<Dual<double>>())
    std::get<EvalFn<Dual<double>>>(fns) = [body](std::span<const Dual<double>> x, std::span<Dual<double>> y) { body(x, y); };
  if (field.supports<HyperDual>())
    std::get<EvalFn<HyperDual>>(fns) = [body](std::span<const HyperDual> x, std::span<HyperDual> y) { body(x, y); };
  if (field.supports<DualHD>())
    std::get<EvalFn<DualHD>>(fns) = [body](std::span<const DualHD> x, std::span<DualHD> y) { body(x, y); };
  RiemannianMetricField g(chart, RealMap(2 * m, 4 * m * m, std::move(fns)), h.name().empty() ? "" : h.name() + "-real");
  g.options = h.options;
  return g;
}

// Block-diagonal product metric on the concatenated chart.
inline RiemannianMetricField product(const RiemannianMetricField& a, const RiemannianMetricField& b) {
  const int na = a.dim();
  const int nb = b.dim();
  const int n = na + nb;
  RealChart chart{n, a.chart().domain.concat(b.chart().domain), std::min(a.chart().scale, b.chart().scale)};
  const RealMap ma = a.map();
  const RealMap mb = b.map();
  auto body = [ma, mb, na, nb, n](auto x, auto out) {
    using T = typename decltype(out)::element_type;
    std::vector<T> xa(x.begin(), x.begin() + na), xb(x.begin() + na, x.end());
    const auto ga = ma(std::span<const T>(xa));
    const auto gb = mb(std::span<const T>(xb));
    for (auto& o : out) o = T(0.0);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) out[static_cast<std::size_t>(i * n + j)] = ga[static_cast<std::size_t>(i * na + j)];
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j)
        out[static_cast<std::size_t>((na + i) * n + na + j)] = gb[static_cast<std::size_t>(i * nb + j)];
  };
  RiemannianMetricField g(chart, make_real_map(n, n * n, body), a.name() + "*" + b.name());
  g.options = a.options;
  return g;
}

}  // namespace ged

#endif  // GED_METRIC_HPP
