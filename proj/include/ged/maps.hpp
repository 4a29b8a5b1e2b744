#ifndef GED_MAPS_HPP
#define GED_MAPS_HPP

// Maps between charts. A map from a complex chart of dimension m stores its
// n components as a ComplexField; maps into real charts keep zero imaginary
// parts, so f^j_β̄ = conj(f^j_β) holds for them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ged/chart.hpp"
#include "ged/curvature.hpp"
#include "ged/diff.hpp"
#include "ged/field.hpp"
#include "ged/metric.hpp"
#include "ged/smallmat.hpp"

namespace ged {

class MapError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Target metrics: Hermitian (complex target) or Riemannian (real target).

class TargetMetric {
 public:
  TargetMetric() = default;
  TargetMetric(HermitianMetricField g) : g_(std::move(g)) {}     // NOLINT(google-explicit-constructor)
  TargetMetric(RiemannianMetricField g) : g_(std::move(g)) {}    // NOLINT(google-explicit-constructor)

  bool is_complex() const { return std::holds_alternative<HermitianMetricField>(g_); }
  int dim() const { return is_complex() ? hermitian().dim() : riemannian().dim(); }
  const HermitianMetricField& hermitian() const { return std::get<HermitianMetricField>(g_); }
  const RiemannianMetricField& riemannian() const { return std::get<RiemannianMetricField>(g_); }
  std::string name() const { return is_complex() ? hermitian().name() : riemannian().name(); }

  // g_{ij̄} or g_{ij} at the image point y (real parts used for real targets).
  template <class T>
  CMat<T> at(std::span<const Cplx<T>> y) const {
    if (is_complex()) return hermitian().at<T>(y);
    const int n = dim();
    std::vector<T> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)].re;
    const auto v = riemannian().at<T>(std::span<const T>(x));
    CMat<T> g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = Cplx<T>(v[static_cast<std::size_t>(i * n + j)], T(0.0));
    return g;
  }

 private:
  std::variant<HermitianMetricField, RiemannianMetricField> g_;
};

inline std::vector<double> real_parts(std::span<const Cplx<double>> y) {
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i].re;
  return x;
}

// ---------------------------------------------------------------------------
// Charted maps

inline constexpr double kHolomorphicTol = 1e-8;
inline constexpr int kMapProbes = 100;

struct ChartedMap {
  std::string name;
  ComplexChart source;
  int target_dim = 0;
  bool target_complex = true;
  bool holomorphic = false;
  ComplexField field;  // m -> n
  DiffOptions options;

  int source_dim() const { return source.dim; }
  std::vector<Cplx<double>> operator()(std::span<const Cplx<double>> z) const { return field(z); }
};

struct MapJet {
  Eigen::VectorXcd value;                // f(z)
  Eigen::MatrixXcd d;                    // d(i, a) = f^i_a
  Eigen::MatrixXcd dbar;                 // dbar(i, a) = f^i_ā
  std::vector<Eigen::MatrixXcd> dd;      // dd[i](a, b) = f^i_{ab}
  std::vector<Eigen::MatrixXcd> ddbar;   // ddbar[i](a, b) = f^i_{ab̄}
};

inline MapJet map_jet(const ChartedMap& f, std::span<const Cplx<double>> z, bool second = true) {
  if (static_cast<int>(z.size()) != f.source_dim()) throw DimensionError("map_jet: point has the wrong dimension");
  const auto x = pack<double>(z);
  require_margin(f.source.domain, x, (second ? 3 : 2) * f.options.step * f.source.scale, "map jet");
  const DiffOptions opt = scaled(f.options, f.source.scale);
  MapJet j;
  j.value = to_eigen(std::span<const Cplx<double>>(f(z)));
  const auto w1 = wirtinger_first(f.field, z, opt);
  j.d = w1.d;
  j.dbar = w1.dbar;
  if (second) {
    const auto w2 = wirtinger_second(f.field, z, opt);
    j.dd = w2.dd;
    j.ddbar = w2.ddbar;
  }
  return j;
}

// Checks at seeded probe points: real targets have real components, and
// holomorphic maps have |f^i_β̄| ≤ kHolomorphicTol.
inline void validate_map(const ChartedMap& f, int probes = kMapProbes, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < probes; ++k) {
    const auto z = f.source.sample(rng, 0.9);
    const auto v = f(z);
    if (!f.target_complex)
      for (const auto& c : v)
        if (c.im != 0.0) throw MapError("map '" + f.name + "': real target but complex component value");
    if (f.holomorphic) {
      const auto w = wirtinger_first(f.field, z, scaled(f.options, f.source.scale));
      const double anti = w.dbar.size() ? w.dbar.cwiseAbs().maxCoeff() : 0.0;
      if (anti > kHolomorphicTol)
        throw MapError("map '" + f.name + "' is flagged holomorphic but |∂̄f| = " + std::to_string(anti));
    }
  }
}

// `rule(span<const Cplx<T>> z, span<Cplx<T>> out)`
template <class F>
ChartedMap make_complex_map(std::string name, ComplexChart source, int n, bool holomorphic, F rule) {
  ChartedMap f;
  f.name = std::move(name);
  f.target_dim = n;
  f.target_complex = true;
  f.holomorphic = holomorphic;
  f.field = make_complex_field(source.dim, n, rule);
  f.source = std::move(source);
  validate_map(f);
  return f;
}

// `rule(span<const Cplx<T>> z, span<T> out)` with real components.
template <class F>
ChartedMap make_real_target_map(std::string name, ComplexChart source, int n, F rule) {
  auto wrapped = [rule, n](auto z, auto out) {
    using C = typename decltype(out)::element_type;
    using T = decltype(C{}.re);
    std::vector<T> r(static_cast<std::size_t>(n));
    rule(z, std::span<T>(r));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = Cplx<T>(r[static_cast<std::size_t>(i)], T(0.0));
  };
  ChartedMap f;
  f.name = std::move(name);
  f.target_dim = n;
  f.target_complex = false;
  f.holomorphic = false;
  f.field = make_complex_field(source.dim, n, wrapped);
  f.source = std::move(source);
  validate_map(f);
  return f;
}

// The real coordinates (Re f^1, Im f^1, ...) of a complex-target map.
inline ChartedMap real_coordinates(const ChartedMap& g) {
  if (!g.target_complex) throw MapError("real_coordinates: map already has a real target");
  const ComplexField inner = g.field;
  const int n = g.target_dim;
  auto rule = [inner, n](auto z, auto out) {
    const auto v = inner(z);
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(2 * i)] = v[static_cast<std::size_t>(i)].re;
      out[static_cast<std::size_t>(2 * i + 1)] = v[static_cast<std::size_t>(i)].im;
    }
  };
  ChartedMap f = make_real_target_map(g.name + "-real", g.source, 2 * n, rule);
  f.options = g.options;
  return f;
}

// ---------------------------------------------------------------------------
// A holomorphic or smooth map together with the metrics on both sides.

struct MapTriple {
  HermitianMetricField h;  // on the source chart
  TargetMetric g;
  ChartedMap f;

  MapTriple() = default;
  MapTriple(HermitianMetricField source_metric, TargetMetric target_metric, ChartedMap map)
      : h(std::move(source_metric)), g(std::move(target_metric)), f(std::move(map)) {
    if (f.source_dim() != h.dim()) throw DimensionError("MapTriple: map source and metric dimensions differ");
    if (f.target_dim != g.dim()) throw DimensionError("MapTriple: map target and metric dimensions differ");
    if (f.target_complex != g.is_complex())
      throw DimensionError("MapTriple: map target kind does not match the target metric");
  }

  int m() const { return h.dim(); }
  int n() const { return g.dim(); }
  bool complex_target() const { return g.is_complex(); }
};

// Target metric jet at f(z).
struct TargetJet {
  HermitianJet hermitian;
  RiemannianJet riemannian;
  Eigen::MatrixXcd g;    // g_{ij̄} or g_{ij}
  Eigen::MatrixXcd inv;  // g^{ij̄} (upper_index) or g^{ij}
};

inline TargetJet target_jet(const TargetMetric& g, const Eigen::VectorXcd& y, bool second = true) {
  TargetJet t;
  const auto yc = to_cvec(y);
  if (g.is_complex()) {
    t.hermitian = hermitian_jet(g.hermitian(), yc, second);
    t.g = t.hermitian.h;
    t.inv = t.hermitian.inv;
  } else {
    const auto x = real_parts(yc);
    t.riemannian = riemannian_jet(g.riemannian(), x, second);
    t.g = t.riemannian.g.cast<std::complex<double>>();
    t.inv = t.riemannian.inv.cast<std::complex<double>>();
  }
  return t;
}

}  // namespace ged

#endif  // GED_MAPS_HPP
