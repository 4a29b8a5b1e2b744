#ifndef GED_RUNNER_HPP
#define GED_RUNNER_HPP

// Verification plans: parsing, case construction, execution and reports.
//
// A plan is a JSON document:
//
//   {
//     "seed": 7, "samples": 50, "quadrature_order": 8,
//     "tolerances": {"relative": 1e-6, "exact": 1e-4, "w_psd": 1e-8},
//     "suites": ["S1", "exact_holo"],
//     "cases": [
//       {"name": "fs-to-poincare",
//        "source": {"zoo": "fubini-study", "radius": 0.8},
//        "target": {"zoo": "poincare-disc"},
//        "map": {"zoo": "identity"}},
//       {"name": "inline",
//        "source": {"hermitian": [["1 + |z1|^2"]], "radius": 0.5},
//        "target": {"hermitian": [["1"]]},
//        "map": {"components": ["z1^2"], "holomorphic": true},
//        "weight": "0.1*|z1|^2"}
//     ],
//     "report": "report.json", "format": "structured"
//   }
//
// Inline metric entries use z1..zm (Hermitian) or x1..xn (Riemannian); map
// components use z1..zm and are real-valued when "real": true; a weight uses
// z1..zm and the fiber coordinates w1..wm.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ged/energy.hpp"
#include "ged/expr.hpp"
#include "ged/maps.hpp"
#include "ged/verify.hpp"
#include "ged/zoo.hpp"

namespace ged {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kPushforwardPoints = 5;

class ConfigError : public Error {
 public:
  enum class Kind { parse, semantic, range };
  ConfigError(Kind k, std::string where, const std::string& msg)
      : Error(kind_name(k) + " error at " + (where.empty() ? std::string("/") : where) + ": " + msg),
        kind(k),
        path(std::move(where)) {}
  static std::string kind_name(Kind k) {
    switch (k) {
      case Kind::parse: return "parse";
      case Kind::semantic: return "semantic";
      case Kind::range: return "range";
    }
    return "?";
  }
  Kind kind;
  std::string path;  // JSON pointer of the offending key
};

struct EntrySpec {
  std::string path;  // JSON pointer, for messages
  std::string zoo;
  ZooParams params;
  std::vector<std::vector<std::string>> hermitian;   // inline Hermitian metric
  std::vector<std::vector<std::string>> riemannian;  // inline Riemannian metric
  std::vector<std::string> components;               // inline map
  bool holomorphic = false;
  bool real = false;
};

struct CaseSpec {
  std::string name;
  EntrySpec source, target, map;
  std::optional<std::string> weight;
};

struct RunConfig {
  std::vector<CaseSpec> cases;
  std::vector<SuiteId> suites;
  int samples = 50;
  std::uint64_t seed = 1;
  int quadrature_order = 8;
  Tolerances tol;
  std::string report;
  std::string format = "text";
  int workers = 0;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline const json* member(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline void require_type(bool ok, const std::string& path, const char* what) {
  if (!ok) throw ConfigError(ConfigError::Kind::semantic, path, std::string("expected ") + what);
}

inline void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!known) throw ConfigError(ConfigError::Kind::semantic, path + "/" + it.key(), "unknown key '" + it.key() + "'");
  }
}

inline std::complex<double> parse_complex(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(ConfigError::Kind::semantic, path, "expected a number or [re, im]");
}

inline std::vector<std::vector<std::string>> parse_matrix(const json& j, const std::string& path) {
  require_type(j.is_array() && !j.empty(), path, "a non-empty square array of expression strings");
  std::vector<std::vector<std::string>> m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    require_type(j[r].is_array() && j[r].size() == j.size(), rp, "a row of the square matrix");
    std::vector<std::string> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      if (j[r][c].is_number()) {
        std::ostringstream os;
        os << std::setprecision(17) << j[r][c].get<double>();
        row.push_back(os.str());
      } else {
        require_type(j[r][c].is_string(), rp + "/" + std::to_string(c), "an expression string");
        row.push_back(j[r][c].get<std::string>());
      }
    }
    m.push_back(std::move(row));
  }
  return m;
}

inline int get_int(const json& j, const std::string& path, int lo, int hi) {
  if (!j.is_number_integer()) throw ConfigError(ConfigError::Kind::semantic, path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < lo || v > hi)
    throw ConfigError(ConfigError::Kind::range, path,
                      "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

inline double get_positive(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(ConfigError::Kind::semantic, path, "expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(ConfigError::Kind::range, path, "must be positive");
  return v;
}

inline EntrySpec parse_entry(const json& j, const std::string& path, bool is_map) {
  require_type(j.is_object(), path, "an object");
  check_keys(j, path,
             {"zoo", "dim", "target_dim", "radius", "inner", "power", "seed", "matrix", "value", "realify", "hermitian",
              "riemannian", "components", "holomorphic", "real"});
  EntrySpec e;
  e.path = path;
  if (const json* v = member(j, "dim")) e.params.dim = get_int(*v, path + "/dim", 1, 16);
  if (const json* v = member(j, "target_dim")) e.params.target_dim = get_int(*v, path + "/target_dim", 1, 16);
  if (const json* v = member(j, "radius")) e.params.radius = get_positive(*v, path + "/radius");
  if (const json* v = member(j, "inner")) {
    require_type(v->is_number(), path + "/inner", "a number");
    e.params.inner = v->get<double>();
  }
  if (const json* v = member(j, "power")) e.params.power = get_int(*v, path + "/power", 1, 64);
  if (const json* v = member(j, "seed")) {
    require_type(v->is_number_unsigned(), path + "/seed", "a non-negative integer");
    e.params.seed = v->get<std::uint64_t>();
  }
  if (const json* v = member(j, "realify")) {
    require_type(v->is_boolean(), path + "/realify", "a boolean");
    e.params.realify = v->get<bool>();
  }
  if (const json* v = member(j, "value")) {
    require_type(v->is_array(), path + "/value", "an array");
    for (std::size_t k = 0; k < v->size(); ++k) e.params.value.push_back(parse_complex((*v)[k], path + "/value/" + std::to_string(k)));
  }
  if (const json* v = member(j, "matrix")) {
    require_type(v->is_array() && !v->empty(), path + "/matrix", "a non-empty array of rows");
    const std::size_t cols = (*v)[0].is_array() ? (*v)[0].size() : 0;
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(v->size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < v->size(); ++r) {
      require_type((*v)[r].is_array() && (*v)[r].size() == cols, path + "/matrix/" + std::to_string(r), "rows of equal length");
      for (std::size_t c = 0; c < cols; ++c)
        A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            parse_complex((*v)[r][c], path + "/matrix/" + std::to_string(r) + "/" + std::to_string(c));
    }
    e.params.matrix = A;
  }
  if (const json* v = member(j, "holomorphic")) {
    require_type(v->is_boolean(), path + "/holomorphic", "a boolean");
    e.holomorphic = v->get<bool>();
  }
  if (const json* v = member(j, "real")) {
    require_type(v->is_boolean(), path + "/real", "a boolean");
    e.real = v->get<bool>();
  }
  if (const json* v = member(j, "hermitian")) e.hermitian = parse_matrix(*v, path + "/hermitian");
  if (const json* v = member(j, "riemannian")) e.riemannian = parse_matrix(*v, path + "/riemannian");
  if (const json* v = member(j, "components")) {
    require_type(v->is_array() && !v->empty(), path + "/components", "a non-empty array of expression strings");
    for (std::size_t k = 0; k < v->size(); ++k) {
      require_type((*v)[k].is_string(), path + "/components/" + std::to_string(k), "an expression string");
      e.components.push_back((*v)[k].get<std::string>());
    }
  }
  if (const json* v = member(j, "zoo")) {
    require_type(v->is_string(), path + "/zoo", "a zoo name");
    e.zoo = v->get<std::string>();
    const bool known = is_map ? is_zoo_map(e.zoo) : is_zoo_metric(e.zoo);
    if (!known)
      throw ConfigError(ConfigError::Kind::semantic, path + "/zoo",
                        std::string("unknown zoo ") + (is_map ? "map" : "metric") + " '" + e.zoo + "'");
  }
  const int forms = !e.zoo.empty() + !e.hermitian.empty() + !e.riemannian.empty() + !e.components.empty();
  if (forms != 1)
    throw ConfigError(ConfigError::Kind::semantic, path,
                      is_map ? "give exactly one of 'zoo' or 'components'" : "give exactly one of 'zoo', 'hermitian' or 'riemannian'");
  if (is_map && (!e.hermitian.empty() || !e.riemannian.empty()))
    throw ConfigError(ConfigError::Kind::semantic, path, "a map takes 'zoo' or 'components'");
  if (!is_map && !e.components.empty()) throw ConfigError(ConfigError::Kind::semantic, path, "a metric cannot have 'components'");
  return e;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::parse, "byte " + std::to_string(e.byte), e.what());
  }
  detail::require_type(j.is_object(), "", "a JSON object at the top level");
  detail::check_keys(j, "", {"schema_version", "seed", "samples", "quadrature_order", "tolerances", "suites", "cases",
                             "report", "format", "workers"});
  RunConfig c;
  if (const json* v = detail::member(j, "schema_version"))
    if (detail::get_int(*v, "/schema_version", 1, kReportSchemaVersion) != kReportSchemaVersion)
      throw ConfigError(ConfigError::Kind::range, "/schema_version", "unsupported schema version");
  if (const json* v = detail::member(j, "seed")) {
    detail::require_type(v->is_number_unsigned(), "/seed", "a non-negative integer");
    c.seed = v->get<std::uint64_t>();
  }
  if (const json* v = detail::member(j, "samples")) c.samples = detail::get_int(*v, "/samples", 1, 1000000);
  if (const json* v = detail::member(j, "quadrature_order")) c.quadrature_order = detail::get_int(*v, "/quadrature_order", 1, 64);
  if (const json* v = detail::member(j, "workers")) c.workers = detail::get_int(*v, "/workers", 0, 1024);
  if (const json* v = detail::member(j, "tolerances")) {
    detail::require_type(v->is_object(), "/tolerances", "an object");
    detail::check_keys(*v, "/tolerances", {"relative", "exact", "w_psd", "pluri", "probe"});
    if (const json* t = detail::member(*v, "relative")) c.tol.relative = detail::get_positive(*t, "/tolerances/relative");
    if (const json* t = detail::member(*v, "exact")) c.tol.exact = detail::get_positive(*t, "/tolerances/exact");
    if (const json* t = detail::member(*v, "w_psd")) c.tol.w_psd = detail::get_positive(*t, "/tolerances/w_psd");
    if (const json* t = detail::member(*v, "pluri")) c.tol.pluri = detail::get_positive(*t, "/tolerances/pluri");
    if (const json* t = detail::member(*v, "probe")) c.tol.probe = detail::get_positive(*t, "/tolerances/probe");
  }
  // An absent list means every suite; an empty list runs nothing.
  if (!detail::member(j, "suites")) c.suites.assign(kAllSuites.begin(), kAllSuites.end());
  if (const json* v = detail::member(j, "suites")) {
    detail::require_type(v->is_array(), "/suites", "an array of suite names");
    for (std::size_t k = 0; k < v->size(); ++k) {
      const std::string p = "/suites/" + std::to_string(k);
      detail::require_type((*v)[k].is_string(), p, "a suite name");
      const auto s = parse_suite((*v)[k].get<std::string>());
      if (!s) throw ConfigError(ConfigError::Kind::semantic, p, "unknown suite '" + (*v)[k].get<std::string>() + "'");
      c.suites.push_back(*s);
    }
  }
  if (const json* v = detail::member(j, "cases")) {
    detail::require_type(v->is_array(), "/cases", "an array of cases");
    for (std::size_t k = 0; k < v->size(); ++k) {
      const std::string p = "/cases/" + std::to_string(k);
      const json& cj = (*v)[k];
      detail::require_type(cj.is_object(), p, "an object");
      detail::check_keys(cj, p, {"name", "source", "target", "map", "weight"});
      CaseSpec cs;
      cs.name = "case" + std::to_string(k);
      if (const json* n = detail::member(cj, "name")) {
        detail::require_type(n->is_string(), p + "/name", "a string");
        cs.name = n->get<std::string>();
      }
      for (const char* key : {"source", "target", "map"})
        if (!detail::member(cj, key)) throw ConfigError(ConfigError::Kind::semantic, p, std::string("missing '") + key + "'");
      cs.source = detail::parse_entry(cj["source"], p + "/source", false);
      cs.target = detail::parse_entry(cj["target"], p + "/target", false);
      cs.map = detail::parse_entry(cj["map"], p + "/map", true);
      if (!cs.source.riemannian.empty() || (cs.source.params.realify))
        throw ConfigError(ConfigError::Kind::semantic, p + "/source", "the source must be a Hermitian metric");
      if (const json* w = detail::member(cj, "weight")) {
        detail::require_type(w->is_string(), p + "/weight", "an expression string");
        cs.weight = w->get<std::string>();
      }
      for (const auto& other : c.cases)
        if (other.name == cs.name) throw ConfigError(ConfigError::Kind::semantic, p + "/name", "duplicate case name '" + cs.name + "'");
      c.cases.push_back(std::move(cs));
    }
  }
  if (const json* v = detail::member(j, "report")) {
    detail::require_type(v->is_string(), "/report", "a path");
    c.report = v->get<std::string>();
  }
  if (const json* v = detail::member(j, "format")) {
    detail::require_type(v->is_string(), "/format", "\"text\" or \"structured\"");
    c.format = v->get<std::string>();
    if (c.format != "text" && c.format != "structured")
      throw ConfigError(ConfigError::Kind::semantic, "/format", "expected \"text\" or \"structured\"");
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigError::Kind::parse, path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Building cases

namespace detail {

inline constexpr double kRealExpressionTol = 1e-12;

inline std::vector<std::vector<Expr>> compile(const std::vector<std::vector<std::string>>& m, char prefix, int count,
                                              const std::string& path) {
  std::vector<std::vector<Expr>> out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::vector<Expr> row;
    for (std::size_t c = 0; c < m[r].size(); ++c) {
      try {
        row.push_back(Expr::parse(m[r][c], prefix, count));
      } catch (const ExprError& e) {
        throw ConfigError(ConfigError::Kind::parse, path + "/" + std::to_string(r) + "/" + std::to_string(c), e.what());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline HermitianMetricField inline_hermitian(const EntrySpec& e, const ComplexChart& chart) {
  const int m = static_cast<int>(e.hermitian.size());
  const auto ex = compile(e.hermitian, 'z', m, e.path + "/hermitian");
  auto h = make_hermitian_metric(
      chart,
      [ex, m](auto z, auto& H) {
        using C = std::decay_t<decltype(z[0])>;
        using T = decltype(C{}.re);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            H(a, b) = ex[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].template eval<T>(z);
      },
      "inline");
  validate_metric(h);
  return h;
}

inline RiemannianMetricField inline_riemannian(const EntrySpec& e, const RealChart& chart) {
  const int n = static_cast<int>(e.riemannian.size());
  const auto ex = compile(e.riemannian, 'x', n, e.path + "/riemannian");
  // Entries must be real: checked at the validation probes.
  std::mt19937_64 rng(1);
  for (int k = 0; k < kMapProbes; ++k) {
    const auto x = chart.sample(rng, 0.9);
    std::vector<Cplx<double>> xc(x.begin(), x.end());
    for (const auto& row : ex)
      for (const auto& v : row)
        if (std::abs(v.eval<double>(xc).im) > kRealExpressionTol)
          throw MetricError("inline Riemannian metric entry '" + v.text() + "' is not real-valued");
  }
  auto g = make_riemannian_metric(
      chart,
      [ex, n](auto x, auto g) {
        using T = typename decltype(g)::element_type;
        std::vector<Cplx<T>> xc(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xc[i] = Cplx<T>(x[i], T(0.0));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            g[static_cast<std::size_t>(i * n + j)] =
                ex[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].template eval<T>(std::span<const Cplx<T>>(xc)).re;
      },
      "inline");
  validate_metric(g);
  return g;
}

inline ChartedMap inline_map(const EntrySpec& e, const ComplexChart& source) {
  const int m = source.dim;
  const int n = static_cast<int>(e.components.size());
  std::vector<Expr> ex;
  for (std::size_t k = 0; k < e.components.size(); ++k) {
    try {
      ex.push_back(Expr::parse(e.components[k], 'z', m));
    } catch (const ExprError& err) {
      throw ConfigError(ConfigError::Kind::parse, e.path + "/components/" + std::to_string(k), err.what());
    }
  }
  ChartedMap f;
  f.name = "inline";
  f.target_dim = n;
  f.target_complex = !e.real;
  f.holomorphic = e.holomorphic && !e.real;
  f.field = make_complex_field(m, n, [ex, n](auto z, auto out) {
    using C = typename decltype(out)::element_type;
    using T = decltype(C{}.re);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = ex[static_cast<std::size_t>(i)].template eval<T>(z);
  });
  f.source = source;
  validate_map(f);
  return f;
}

inline ComplexChart complex_chart_for(const EntrySpec& e, int m) {
  return e.params.radius > 0.0 ? ComplexChart::ball(m, e.params.radius) : ComplexChart::whole(m);
}

inline RealChart real_chart_for(const EntrySpec& e, int n) {
  return e.params.radius > 0.0 ? RealChart::ball(n, e.params.radius) : RealChart::whole(n);
}

struct BuiltMetric {
  TargetMetric metric;
  bool compact = false;
};

inline BuiltMetric build_metric_spec(const EntrySpec& e) {
  if (!e.zoo.empty()) {
    const ZooEntry z = build_entry(e.zoo, e.params);
    return {z.target(), z.compact};
  }
  if (!e.hermitian.empty()) {
    const int m = static_cast<int>(e.hermitian.size());
    ComplexChart chart = complex_chart_for(e, m);
    HermitianMetricField h = inline_hermitian(e, chart);
    if (e.params.realify) return {realify(h), false};
    return {h, false};
  }
  const int n = static_cast<int>(e.riemannian.size());
  return {inline_riemannian(e, real_chart_for(e, n)), false};
}

inline ScalarField inline_weight(const std::string& text, int m, const std::string& path) {
  Expr ex;
  try {
    ex = Expr::parse(text, {{'z', m}, {'w', m}});
  } catch (const ExprError& e) {
    throw ConfigError(ConfigError::Kind::parse, path, e.what());
  }
  return make_real_scalar(ComplexChart::whole(2 * m), [ex](auto zw) {
    using C = std::decay_t<decltype(zw[0])>;
    using T = decltype(C{}.re);
    return ex.template eval<T>(zw).re;
  });
}

}  // namespace detail

inline VerificationCase build_case(const CaseSpec& cs) {
  const auto src = detail::build_metric_spec(cs.source);
  if (!src.metric.is_complex()) throw ConfigError(ConfigError::Kind::semantic, cs.source.path, "the source must be a Hermitian metric");
  const HermitianMetricField h = src.metric.hermitian();
  const auto tgt = detail::build_metric_spec(cs.target);
  ChartedMap f;
  if (!cs.map.zoo.empty()) {
    ZooParams p = cs.map.params;
    p.source = h.chart();
    f = build_entry(cs.map.zoo, p).map();
  } else {
    f = detail::inline_map(cs.map, h.chart());
  }
  VerificationCase c{cs.name, MapTriple(h, tgt.metric, f), std::nullopt, src.compact};
  if (cs.weight) c.weight = detail::inline_weight(*cs.weight, h.dim(), "/weight");
  return c;
}

// ---------------------------------------------------------------------------
// Execution and reports

struct CaseDiagnostics {
  std::string name;
  std::string error;             // construction failure
  double pushforward_max = 0.0;  // max |m π_*(𝓨) − u| over the diagnostic points
  int pushforward_points = 0;
};

struct ExecutionResult {
  int exit_code = 0;
  json report;
  std::vector<VerificationReport> suites;
  std::vector<CaseDiagnostics> cases;
  std::vector<std::string> warnings;
};

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

namespace detail {

inline json complex_array(const std::vector<std::complex<double>>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(json::array({c.real(), c.imag()}));
  return a;
}

inline json report_json(const VerificationReport& r) {
  json j;
  j["case"] = r.case_name;
  j["suite"] = suite_name(r.suite);
  j["verdict"] = verdict_name(r.verdict);
  j["message"] = r.message;
  j["seed"] = r.seed;
  j["residual_kind"] = r.residual_kind;
  j["tolerance"] = r.tolerance;
  j["samples"] = r.points.size();
  json res = json::array();
  for (const auto& p : r.points) res.push_back(p.residual);
  j["residuals"] = res;
  if (r.worst) {
    const auto& p = r.points[*r.worst];
    j["worst"] = {{"index", p.index},
                  {"point", p.coordinates},
                  {"residual", p.residual},
                  {"threshold", p.threshold},
                  {"eigenvector", complex_array(p.eigenvector)}};
  }
  json h = json::array();
  for (const auto& b : r.histogram) h.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  j["histogram"] = h;
  if (r.probe) {
    const auto& p = *r.probe;
    j["probe"] = {{"pattern", p.pattern},
                  {"y_max", p.y_max},
                  {"first", p.first},
                  {"second", p.second},
                  {"argmax", p.q ? json(pack<double>(p.q->chart_point())) : json()},
                  {"compact", p.compact},
                  {"conclusion_admissible", p.conclusion_admissible}};
  }
  return j;
}

inline CaseDiagnostics pushforward_diagnostic(const VerificationCase& c, const RunConfig& cfg) {
  CaseDiagnostics d;
  d.name = c.name;
  const auto pts = sample_points(c.triple, kPushforwardPoints, suite_seed(cfg.seed, c.name, SuiteId::S1) ^ 0x5eedULL, 0.8);
  for (const auto& sp : pts) {
    const auto pc = pushforward_energy_check(c.triple, sp.P.z, cfg.quadrature_order);
    d.pushforward_max = std::max(d.pushforward_max, pc.residual);
    ++d.pushforward_points;
  }
  return d;
}

}  // namespace detail

inline std::string text_report(const ExecutionResult& r) {
  std::ostringstream os;
  for (const auto& c : r.cases) {
    if (!c.error.empty())
      os << "case " << c.name << ": ERROR " << c.error << "\n";
    else
      os << "case " << c.name << ": pushforward |m pi_*(Y) - u| max " << std::scientific << std::setprecision(3)
         << c.pushforward_max << " over " << c.pushforward_points << " points\n";
  }
  for (const auto& s : r.suites) {
    os << std::left << std::setw(16) << s.case_name << " " << std::setw(12) << suite_name(s.suite) << " "
       << std::setw(15) << verdict_name(s.verdict);
    if (s.worst)
      os << " worst " << std::scientific << std::setprecision(3) << s.points[*s.worst].residual << " (tol "
         << s.tolerance << ")";
    if (!s.message.empty()) os << "  " << s.message;
    os << "\n";
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  os << "exit code " << r.exit_code << "\n";
  return os.str();
}

inline ExecutionResult execute(const RunConfig& cfg) {
  ExecutionResult out;
  RunSettings rs;
  rs.samples = cfg.samples;
  rs.seed = cfg.seed;
  rs.tol = cfg.tol;
  rs.workers = cfg.workers;

  bool error = false, fail = false;
  for (const auto& cs : cfg.cases) {
    VerificationCase vc;
    CaseDiagnostics diag;
    diag.name = cs.name;
    try {
      vc = build_case(cs);
      diag = detail::pushforward_diagnostic(vc, cfg);
    } catch (const std::exception& e) {
      diag.error = e.what();
      out.cases.push_back(diag);
      error = true;
      continue;
    }
    out.cases.push_back(diag);
    for (SuiteId s : cfg.suites) {
      VerificationReport r = run_suite(vc, s, rs);
      if (r.verdict == Verdict::error) error = true;
      if (r.verdict == Verdict::fail) fail = true;
      if (r.verdict == Verdict::not_applicable)
        out.warnings.push_back(cs.name + "/" + suite_name(s) + " not applicable: " + r.message);
      out.suites.push_back(std::move(r));
    }
  }
  out.exit_code = error ? 2 : (fail ? 1 : 0);

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["timestamp"] = utc_timestamp();
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["quadrature_order"] = cfg.quadrature_order;
  j["tolerances"] = {{"relative", cfg.tol.relative},
                     {"exact", cfg.tol.exact},
                     {"w_psd", cfg.tol.w_psd},
                     {"pluri", cfg.tol.pluri},
                     {"probe", cfg.tol.probe}};
  json cases = json::array();
  for (const auto& c : out.cases) {
    json cj;
    cj["name"] = c.name;
    cj["status"] = c.error.empty() ? "ok" : "error";
    if (!c.error.empty()) cj["error"] = c.error;
    cj["diagnostics"] = {{"pushforward_max_residual", c.pushforward_max}, {"pushforward_points", c.pushforward_points}};
    cases.push_back(cj);
  }
  j["cases"] = cases;
  json suites = json::array();
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& r : out.suites) {
    suites.push_back(detail::report_json(r));
    ++counts[static_cast<int>(r.verdict)];
  }
  j["suites"] = suites;
  j["warnings"] = out.warnings;
  j["summary"] = {{"pass", counts[0]},
                  {"fail", counts[1]},
                  {"not_applicable", counts[2]},
                  {"error", counts[3]},
                  {"exit_code", out.exit_code}};
  out.report = std::move(j);
  return out;
}

// Writes the report in the configured format; false when the file cannot be written.
inline bool write_report(const ExecutionResult& r, const std::string& path, const std::string& format) {
  std::ofstream f(path);
  if (!f) return false;
  if (format == "structured")
    f << r.report.dump(2) << "\n";
  else
    f << text_report(r);
  return static_cast<bool>(f);
}

}  // namespace ged

#endif  // GED_RUNNER_HPP
