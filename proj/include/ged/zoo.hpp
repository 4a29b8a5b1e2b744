#ifndef GED_ZOO_HPP
#define GED_ZOO_HPP

// Named metrics and maps with documented, machine-checkable curvature facts.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ged/chart.hpp"
#include "ged/curvature.hpp"
#include "ged/maps.hpp"
#include "ged/metric.hpp"

namespace ged {

class ZooError : public Error {
 public:
  using Error::Error;
};

struct ZooParams {
  int dim = 0;               // metrics: dimension; maps: source dimension (0: entry default)
  int target_dim = 0;        // maps (0: entry default)
  double radius = 0.0;       // chart radius (0: entry default)
  std::optional<double> inner{};  // inner radius of annular charts
  int power = 2;             // power map exponent
  std::uint64_t seed = 7;    // perturbed metric, default linear map
  std::optional<Eigen::MatrixXcd> matrix{};     // linear map
  std::vector<std::complex<double>> value{};    // constant map
  bool realify = false;      // Hermitian metric -> 2 Re h; complex map -> real coordinates
  std::optional<ComplexChart> source{};         // maps: source chart (default: ball)
};

enum class ZooKind { hermitian_metric, riemannian_metric, holo_map, smooth_map };

inline std::string zoo_kind_name(ZooKind k) {
  switch (k) {
    case ZooKind::hermitian_metric: return "hermitian-metric";
    case ZooKind::riemannian_metric: return "riemannian-metric";
    case ZooKind::holo_map: return "holo-map";
    case ZooKind::smooth_map: return "smooth-map";
  }
  return "?";
}

struct CatalogFact {
  enum class Kind {
    hsc,                   // constant holomorphic sectional curvature `value`
    kahler,
    zero_curvature,
    sectional,             // constant sectional curvature `value`
    positive_definite,
    mixed_sectional_zero,  // product metrics: planes spanned by one vector from each factor
    holomorphic,
    pluriharmonic_flat,    // f_{αβ̄} = 0
    real_valued,
  };
  Kind kind;
  double value = 0.0;
  std::string oracle;
  int split = 0;  // mixed_sectional_zero: dimension of the first factor

  std::string describe() const {
    switch (kind) {
      case Kind::hsc: return "holomorphic sectional curvature = " + std::to_string(value);
      case Kind::kahler: return "Kahler";
      case Kind::zero_curvature: return "all curvature zero";
      case Kind::sectional: return "sectional curvature = " + std::to_string(value);
      case Kind::positive_definite: return "positive definite";
      case Kind::mixed_sectional_zero: return "mixed-plane sectional curvature zero";
      case Kind::holomorphic: return "holomorphic";
      case Kind::pluriharmonic_flat: return "pluri-harmonic into a flat target";
      case Kind::real_valued: return "real-valued components";
    }
    return "?";
  }
};

struct ZooEntry {
  std::string name;
  ZooKind kind = ZooKind::hermitian_metric;
  ZooParams params;
  std::variant<std::monostate, HermitianMetricField, RiemannianMetricField, ChartedMap> object;
  std::vector<CatalogFact> facts;
  bool compact = false;            // the chart is a fundamental domain of a compact quotient
  std::string fundamental_domain;  // metadata only

  bool is_metric() const { return kind == ZooKind::hermitian_metric || kind == ZooKind::riemannian_metric; }
  const HermitianMetricField& hermitian() const { return std::get<HermitianMetricField>(object); }
  const RiemannianMetricField& riemannian() const { return std::get<RiemannianMetricField>(object); }
  const ChartedMap& map() const { return std::get<ChartedMap>(object); }
  TargetMetric target() const {
    if (kind == ZooKind::hermitian_metric) return hermitian();
    if (kind == ZooKind::riemannian_metric) return riemannian();
    throw ZooError("zoo entry '" + name + "' is not a metric");
  }
};

inline const std::vector<std::string>& zoo_metric_names() {
  static const std::vector<std::string> names = {"flat",    "fubini-study", "poincare-disc", "torus",
                                                 "hopf",    "perturbed",    "euclidean",     "round-sphere",
                                                 "hyperbolic", "sphere-line"};
  return names;
}

inline const std::vector<std::string>& zoo_map_names() {
  static const std::vector<std::string> names = {"constant",  "identity",   "linear",         "power", "inclusion",
                                                 "projection", "real-part", "real-quadratic", "mixed"};
  return names;
}

namespace detail {

using FK = CatalogFact::Kind;

inline int pick(int v, int dflt) { return v > 0 ? v : dflt; }
inline double pick(double v, double dflt) { return v > 0.0 ? v : dflt; }

inline ComplexChart ball_chart(int m, double r) { return ComplexChart::ball(m, r); }

inline HermitianMetricField flat_metric(const ComplexChart& c, std::string name) {
  const int m = c.dim;
  return make_hermitian_metric(
      c,
      [m](auto, auto& h) {
        using C = std::decay_t<decltype(h(0, 0))>;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) h(a, b) = C(a == b ? 1.0 : 0.0);
      },
      std::move(name));
}

// ∂∂̄ log(1 + |z|²)
inline HermitianMetricField fubini_study(const ComplexChart& c) {
  const int m = c.dim;
  return make_hermitian_metric(
      c,
      [m](auto z, auto& h) {
        using C = std::decay_t<decltype(z[0])>;
        C one(1.0);
        for (int a = 0; a < m; ++a) one += z[static_cast<std::size_t>(a)] * conj(z[static_cast<std::size_t>(a)]);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            h(a, b) = (a == b ? C(1.0) / one : C(0.0)) -
                      conj(z[static_cast<std::size_t>(a)]) * z[static_cast<std::size_t>(b)] / (one * one);
      },
      "fubini-study");
}

// −∂∂̄ log(1 − |z|²)
inline HermitianMetricField poincare(const ComplexChart& c) {
  const int m = c.dim;
  return make_hermitian_metric(
      c,
      [m](auto z, auto& h) {
        using C = std::decay_t<decltype(z[0])>;
        C one(1.0);
        for (int a = 0; a < m; ++a) one -= z[static_cast<std::size_t>(a)] * conj(z[static_cast<std::size_t>(a)]);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            h(a, b) = (a == b ? C(1.0) / one : C(0.0)) +
                      conj(z[static_cast<std::size_t>(a)]) * z[static_cast<std::size_t>(b)] / (one * one);
      },
      "poincare-disc");
}

inline HermitianMetricField hopf(const ComplexChart& c) {
  const int m = c.dim;
  return make_hermitian_metric(
      c,
      [m](auto z, auto& h) {
        using C = std::decay_t<decltype(z[0])>;
        C r(0.0);
        for (int a = 0; a < m; ++a) r += z[static_cast<std::size_t>(a)] * conj(z[static_cast<std::size_t>(a)]);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) h(a, b) = a == b ? C(1.0) / r : C(0.0);
      },
      "hopf");
}

// δ + 0.1 (Bz)(Bz)† with a seeded complex matrix B.
inline HermitianMetricField perturbed(const ComplexChart& c, std::uint64_t seed) {
  const int m = c.dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd B(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) B(a, b) = {nd(rng), nd(rng)};
  return make_hermitian_metric(
      c,
      [m, B](auto z, auto& h) {
        using C = std::decay_t<decltype(z[0])>;
        using T = decltype(C{}.re);
        std::vector<C> v(static_cast<std::size_t>(m), C(0.0));
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            v[static_cast<std::size_t>(a)] += C(T(B(a, b).real()), T(B(a, b).imag())) * z[static_cast<std::size_t>(b)];
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            h(a, b) = C(a == b ? 1.0 : 0.0) + 0.1 * v[static_cast<std::size_t>(a)] * conj(v[static_cast<std::size_t>(b)]);
      },
      "perturbed");
}

inline RiemannianMetricField euclidean(int n) {
  return make_riemannian_metric(
      RealChart::whole(n),
      [n](auto, auto g) {
        using T = typename decltype(g)::element_type;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(i * n + j)] = T(i == j ? 1.0 : 0.0);
      },
      "euclidean");
}

// 4δ/(1 ± |x|²)², stereographic sphere (+) or Poincaré ball (−).
inline RiemannianMetricField conformal_ball(int n, double sign, RealChart chart, std::string name) {
  return make_riemannian_metric(
      std::move(chart),
      [n, sign](auto x, auto g) {
        using T = typename decltype(g)::element_type;
        T r(0.0);
        for (int i = 0; i < n; ++i) r = r + x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        const T d = 1.0 + sign * r;
        const T lam = 4.0 / (d * d);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(i * n + j)] = i == j ? lam : T(0.0);
      },
      std::move(name));
}

inline ComplexChart map_source(const ZooParams& p, int dflt_dim) {
  if (p.source) return *p.source;
  return ball_chart(pick(p.dim, dflt_dim), pick(p.radius, 0.9));
}

inline Eigen::MatrixXcd default_linear(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Eigen::MatrixXcd A(n, m);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) A(i, a) = {u(rng), u(rng)};
  return A;
}

inline ZooEntry build_metric(const std::string& name, const ZooParams& p) {
  ZooEntry e;
  e.name = name;
  e.params = p;
  e.kind = ZooKind::hermitian_metric;
  if (name == "flat") {
    e.object = flat_metric(ball_chart(pick(p.dim, 2), pick(p.radius, 1.0)), "flat");
    e.facts = {{FK::zero_curvature, 0.0, "constant metric"}, {FK::kahler, 0.0, "constant metric"}};
  } else if (name == "fubini-study") {
    e.object = fubini_study(ball_chart(pick(p.dim, 1), pick(p.radius, 1.0)));
    e.facts = {{FK::hsc, 2.0, "symbolic constant-curvature oracle"}, {FK::kahler, 0.0, "potential log(1+|z|^2)"}};
  } else if (name == "poincare-disc") {
    const double r = pick(p.radius, 0.95);
    if (r >= 1.0) throw ZooError("poincare-disc: radius must be below 1");
    e.object = poincare(ball_chart(pick(p.dim, 1), r));
    e.facts = {{FK::hsc, -2.0, "symbolic constant-curvature oracle"}, {FK::kahler, 0.0, "potential -log(1-|z|^2)"}};
  } else if (name == "torus") {
    const int m = pick(p.dim, 1);
    e.object = flat_metric(ball_chart(m, pick(p.radius, 1.0)), "torus");
    e.facts = {{FK::zero_curvature, 0.0, "constant metric"}, {FK::kahler, 0.0, "constant metric"}};
    e.compact = true;
    e.fundamental_domain = "C^" + std::to_string(m) + " / (Z + iZ)^" + std::to_string(m);
  } else if (name == "hopf") {
    const int m = pick(p.dim, 2);
    const double inner = p.inner.value_or(0.5);
    const double outer = pick(p.radius, 2.0);
    if (!(inner > 0.0)) throw ZooError("hopf: the annular chart must stay away from z = 0 (inner radius > 0)");
    if (!(outer > inner)) throw ZooError("hopf: outer radius must exceed the inner radius");
    e.object = hopf(ComplexChart::ball(m, outer, inner));
    e.facts = {{FK::positive_definite, 0.0, "eigenvalues of delta/|z|^2"}};
  } else if (name == "perturbed") {
    e.object = perturbed(ball_chart(pick(p.dim, 2), pick(p.radius, 1.0)), p.seed);
    e.facts = {{FK::positive_definite, 0.0, "identity plus a rank-one positive term"}};
  } else if (name == "euclidean") {
    e.kind = ZooKind::riemannian_metric;
    e.object = euclidean(pick(p.dim, 2));
    e.facts = {{FK::zero_curvature, 0.0, "constant metric"}, {FK::sectional, 0.0, "constant metric"}};
  } else if (name == "round-sphere") {
    e.kind = ZooKind::riemannian_metric;
    const int n = pick(p.dim, 2);
    e.object = conformal_ball(n, 1.0, RealChart::whole(n), "round-sphere");
    e.facts = {{FK::sectional, 1.0, "symbolic constant-curvature oracle"}};
  } else if (name == "hyperbolic") {
    e.kind = ZooKind::riemannian_metric;
    const int n = pick(p.dim, 2);
    const double r = pick(p.radius, 0.95);
    if (r >= 1.0) throw ZooError("hyperbolic: radius must be below 1");
    e.object = conformal_ball(n, -1.0, RealChart::ball(n, r), "hyperbolic");
    e.facts = {{FK::sectional, -1.0, "symbolic constant-curvature oracle"}};
  } else if (name == "sphere-line") {
    e.kind = ZooKind::riemannian_metric;
    e.object = product(conformal_ball(2, 1.0, RealChart::whole(2), "round-sphere"), euclidean(1));
    CatalogFact mixed{FK::mixed_sectional_zero, 0.0, "product of a surface and a line"};
    mixed.split = 2;
    e.facts = {mixed};
  } else {
    throw ZooError("unknown zoo metric '" + name + "'");
  }
  if (e.kind == ZooKind::hermitian_metric) validate_metric(e.hermitian());
  else validate_metric(e.riemannian());
  if (p.realify) {
    if (e.kind != ZooKind::hermitian_metric) throw ZooError(name + ": realify applies to Hermitian metrics");
    const bool surface = e.hermitian().dim() == 1;
    e.kind = ZooKind::riemannian_metric;
    e.object = realify(e.hermitian());
    std::vector<CatalogFact> facts;
    for (const auto& f : e.facts) {
      // 2 Re h: a complex line has sectional curvature equal to its holomorphic sectional curvature
      if (f.kind == FK::hsc && surface) facts.push_back({FK::sectional, f.value, f.oracle});
      if (f.kind == FK::zero_curvature || f.kind == FK::positive_definite) facts.push_back(f);
    }
    e.facts = facts;
  }
  return e;
}

inline ZooEntry build_map(const std::string& name, const ZooParams& p) {
  ZooEntry e;
  e.name = name;
  e.params = p;
  e.kind = ZooKind::holo_map;
  const std::vector<CatalogFact> holo = {{FK::holomorphic, 0.0, "complex-polynomial components"},
                                         {FK::pluriharmonic_flat, 0.0, "holomorphic"}};
  if (name == "constant") {
    const ComplexChart src = map_source(p, 1);
    const int n = pick(p.target_dim, p.value.empty() ? 1 : static_cast<int>(p.value.size()));
    std::vector<std::complex<double>> v = p.value;
    v.resize(static_cast<std::size_t>(n), 0.0);
    e.object = make_complex_map("constant", src, n, true, [v, n](auto z, auto out) {
      using C = std::decay_t<decltype(z[0])>;
      using T = decltype(C{}.re);
      for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = C(T(v[static_cast<std::size_t>(i)].real()), T(v[static_cast<std::size_t>(i)].imag()));
    });
    e.facts = holo;
  } else if (name == "identity") {
    const ComplexChart src = map_source(p, 1);
    const int m = src.dim;
    e.object = make_complex_map("identity", src, m, true, [m](auto z, auto out) {
      for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
    });
    e.facts = holo;
  } else if (name == "linear") {
    const ComplexChart src = map_source(p, 2);
    const int m = src.dim;
    const Eigen::MatrixXcd A = p.matrix ? *p.matrix : default_linear(pick(p.target_dim, m), m, p.seed);
    if (A.cols() != m) throw ZooError("linear: matrix has the wrong number of columns");
    const int n = static_cast<int>(A.rows());
    e.object = make_complex_map("linear", src, n, true, [A, m, n](auto z, auto out) {
      using C = std::decay_t<decltype(z[0])>;
      using T = decltype(C{}.re);
      for (int i = 0; i < n; ++i) {
        C s(0.0);
        for (int a = 0; a < m; ++a) s += C(T(A(i, a).real()), T(A(i, a).imag())) * z[static_cast<std::size_t>(a)];
        out[static_cast<std::size_t>(i)] = s;
      }
    });
    e.facts = holo;
  } else if (name == "power") {
    if (p.power < 1) throw ZooError("power: exponent must be positive");
    const ComplexChart src = map_source(p, 1);
    if (src.dim != 1) throw ZooError("power: needs a one-dimensional source");
    const int k = p.power;
    e.object = make_complex_map("power", src, 1, true, [k](auto z, auto out) {
      auto v = z[0];
      for (int t = 1; t < k; ++t) v = v * z[0];
      out[0] = v;
    });
    e.facts = holo;
  } else if (name == "inclusion") {
    const ComplexChart src = map_source(p, 1);
    if (src.dim != 1) throw ZooError("inclusion: needs a one-dimensional source");
    e.object = make_complex_map("inclusion", src, 2, true, [](auto z, auto out) {
      using C = std::decay_t<decltype(z[0])>;
      out[0] = z[0];
      out[1] = C(0.0);
    });
    e.facts = holo;
  } else if (name == "projection") {
    const ComplexChart src = map_source(p, 2);
    if (src.dim < 2) throw ZooError("projection: needs a source of dimension at least 2");
    e.object = make_complex_map("projection", src, 1, true, [](auto z, auto out) { out[0] = z[0]; });
    e.facts = holo;
  } else if (name == "real-part") {
    const ComplexChart src = map_source(p, 1);
    e.kind = ZooKind::smooth_map;
    e.object = make_real_target_map("real-part", src, 1, [](auto z, auto out) { out[0] = z[0].re; });
    e.facts = {{FK::real_valued, 0.0, "definition"}, {FK::pluriharmonic_flat, 0.0, "real part of a holomorphic function"}};
  } else if (name == "real-quadratic") {
    const ComplexChart src = map_source(p, 1);
    if (src.dim != 1) throw ZooError("real-quadratic: needs a one-dimensional source");
    e.kind = ZooKind::smooth_map;
    e.object = make_real_target_map("real-quadratic", src, 2, [](auto z, auto out) {
      const auto x = z[0].re;
      const auto y = z[0].im;
      out[0] = x + 0.3 * x * y;
      out[1] = y - 0.2 * x * x;
    });
    e.facts = {{FK::real_valued, 0.0, "definition"}};
  } else if (name == "mixed") {
    const ComplexChart src = map_source(p, 1);
    if (src.dim != 1) throw ZooError("mixed: needs a one-dimensional source");
    e.kind = ZooKind::smooth_map;
    e.object = make_complex_map("mixed", src, 1, false, [](auto z, auto out) {
      const auto zb = conj(z[0]);
      out[0] = z[0] + 0.3 * zb * zb;
    });
    e.facts = {};
  } else {
    throw ZooError("unknown zoo map '" + name + "'");
  }
  if (p.realify) {
    if (!e.map().target_complex) throw ZooError(name + ": realify applies to maps with a complex target");
    const bool pluri = std::any_of(e.facts.begin(), e.facts.end(), [](const CatalogFact& f) { return f.kind == FK::pluriharmonic_flat; });
    e.object = real_coordinates(e.map());
    e.kind = ZooKind::smooth_map;
    e.facts = {{FK::real_valued, 0.0, "definition"}};
    if (pluri) e.facts.push_back({FK::pluriharmonic_flat, 0.0, "real coordinates of a holomorphic map"});
  }
  return e;
}

}  // namespace detail

inline bool is_zoo_metric(const std::string& name) {
  const auto& v = zoo_metric_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

inline bool is_zoo_map(const std::string& name) {
  const auto& v = zoo_map_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

inline ZooEntry build_entry(const std::string& name, const ZooParams& params = {}) {
  if (is_zoo_metric(name)) return detail::build_metric(name, params);
  if (is_zoo_map(name)) return detail::build_map(name, params);
  throw ZooError("unknown zoo entry '" + name + "'");
}

inline std::vector<CatalogFact> catalog_facts(const std::string& name) { return build_entry(name).facts; }

// ---------------------------------------------------------------------------
// Fact checking at seeded probe points

inline constexpr double kFactTol = 1e-5;
inline constexpr double kMixedPlaneTol = 1e-6;

struct FactCheck {
  CatalogFact fact;
  double max_error = 0.0;  // positive_definite: smallest eigenvalue seen
  double tolerance = kFactTol;
  bool ok = true;
};

namespace detail {

inline Eigen::VectorXcd random_cvec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(n);
  for (int a = 0; a < n; ++a) v(a) = {nd(rng), nd(rng)};
  return v;
}

inline Eigen::VectorXd random_rvec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(n);
  for (int a = 0; a < n; ++a) v(a) = nd(rng);
  return v;
}

inline FactCheck check_metric_fact(const ZooEntry& e, const CatalogFact& f, int probes, std::mt19937_64& rng) {
  FactCheck c{f};
  if (f.kind == FK::mixed_sectional_zero) c.tolerance = kMixedPlaneTol;
  if (f.kind == FK::positive_definite) c.max_error = std::numeric_limits<double>::infinity();
  for (int k = 0; k < probes; ++k) {
    if (e.kind == ZooKind::hermitian_metric) {
      const auto& h = e.hermitian();
      const auto z = h.chart().sample(rng, 0.9);
      switch (f.kind) {
        case FK::hsc: {
          const auto v = random_cvec(rng, h.dim());
          c.max_error = std::max(c.max_error, std::abs(holomorphic_sectional_curvature(h, z, v) - f.value));
          break;
        }
        case FK::kahler: c.max_error = std::max(c.max_error, chern_curvature(h, z).kahler_defect()); break;
        case FK::zero_curvature: c.max_error = std::max(c.max_error, chern_curvature(h, z).max_abs()); break;
        case FK::positive_definite: c.max_error = std::min(c.max_error, min_hermitian_eigenvalue(h(z))); break;
        default: throw ZooError("fact does not apply to a Hermitian metric");
      }
    } else {
      const auto& g = e.riemannian();
      const auto x = g.chart().sample(rng, 0.9);
      const int n = g.dim();
      switch (f.kind) {
        case FK::sectional:
          if (n < 2) break;
          c.max_error = std::max(c.max_error, std::abs(riemannian_sectional_curvature(g, x, random_rvec(rng, n),
                                                                                   random_rvec(rng, n)) - f.value));
          break;
        case FK::zero_curvature: {
          const auto R = riemann_curvature(g, x);
          for (double v : R.r) c.max_error = std::max(c.max_error, std::abs(v));
          break;
        }
        case FK::positive_definite: {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g(x), Eigen::EigenvaluesOnly);
          c.max_error = std::min(c.max_error, es.eigenvalues()(0));
          break;
        }
        case FK::mixed_sectional_zero: {
          Eigen::VectorXd X = Eigen::VectorXd::Zero(n), Y = Eigen::VectorXd::Zero(n);
          X.head(f.split) = random_rvec(rng, f.split);
          Y.tail(n - f.split) = random_rvec(rng, n - f.split);
          c.max_error = std::max(c.max_error, std::abs(riemannian_sectional_curvature(g, x, X, Y)));
          break;
        }
        default: throw ZooError("fact does not apply to a Riemannian metric");
      }
    }
  }
  c.ok = f.kind == FK::positive_definite ? c.max_error > 0.0 : c.max_error <= c.tolerance;
  return c;
}

inline FactCheck check_map_fact(const ZooEntry& e, const CatalogFact& f, int probes, std::mt19937_64& rng) {
  const ChartedMap& m = e.map();
  FactCheck c{f};
  if (f.kind == FK::holomorphic) c.tolerance = kHolomorphicTol;
  if (f.kind == FK::real_valued) c.tolerance = 0.0;
  for (int k = 0; k < probes; ++k) {
    const auto z = m.source.sample(rng, 0.9);
    switch (f.kind) {
      case FK::holomorphic: {
        const auto j = map_jet(m, z, false);
        c.max_error = std::max(c.max_error, j.dbar.cwiseAbs().maxCoeff());
        break;
      }
      case FK::pluriharmonic_flat: {
        const auto j = map_jet(m, z, true);
        for (const auto& r : j.ddbar) c.max_error = std::max(c.max_error, r.cwiseAbs().maxCoeff());
        break;
      }
      case FK::real_valued:
        for (const auto& v : m(z)) c.max_error = std::max(c.max_error, std::abs(v.im));
        break;
      default: throw ZooError("fact does not apply to a map");
    }
  }
  c.ok = c.max_error <= c.tolerance;
  return c;
}

}  // namespace detail

inline std::vector<FactCheck> check_facts(const ZooEntry& e, int probes = 100, std::uint64_t seed = 9) {
  std::mt19937_64 rng(seed);
  std::vector<FactCheck> out;
  for (const auto& f : e.facts)
    out.push_back(e.is_metric() ? detail::check_metric_fact(e, f, probes, rng) : detail::check_map_fact(e, f, probes, rng));
  return out;
}

}  // namespace ged

#endif  // GED_ZOO_HPP
