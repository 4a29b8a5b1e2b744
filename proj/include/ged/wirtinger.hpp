#ifndef GED_WIRTINGER_HPP
#define GED_WIRTINGER_HPP

// Scalar fields on complex charts and their Wirtinger gradient and complex
// Hessian.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ged/chart.hpp"
#include "ged/diff.hpp"
#include "ged/field.hpp"
#include "ged/form11.hpp"

namespace ged {

// A real or complex valued function on a complex chart. Real fields have a
// single real output, complex fields an interleaved (re, im) pair.
struct ScalarField {
  ComplexChart chart;
  RealMap map;
  DiffOptions options;

  bool is_complex() const { return map.out_dim() == 2; }
  int dim() const { return chart.dim; }

  std::complex<double> operator()(std::span<const Cplx<double>> z) const {
    const auto x = pack<double>(z);
    const auto y = map(std::span<const double>(x));
    return {y[0], is_complex() ? y[1] : 0.0};
  }
};

// `f(span<const Cplx<T>> z) -> T`, instantiated for the listed scalar types.
template <class... Ts, class F>
ScalarField make_real_scalar_for(ComplexChart chart, F f, DiffOptions opt = {}) {
  const int m = chart.dim;
  auto body = [f](auto x, auto y) {
    using T = typename decltype(y)::element_type;
    const auto z = unpack<T>(x);
    y[0] = f(std::span<const Cplx<T>>(z));
  };
  return {std::move(chart), make_real_map_for<Ts...>(2 * m, 1, body), opt};
}

// `f(span<const Cplx<T>> z) -> T` for every scalar type.
template <class F>
ScalarField make_real_scalar(ComplexChart chart, F f, DiffOptions opt = {}) {
  return make_real_scalar_for<double, Dual<double>, HyperDual, DualHD>(std::move(chart), std::move(f), opt);
}

// `f(span<const Cplx<T>> z) -> Cplx<T>`
template <class F>
ScalarField make_complex_scalar(ComplexChart chart, F f, DiffOptions opt = {}) {
  const int m = chart.dim;
  auto body = [f](auto x, auto y) {
    using T = typename decltype(y)::element_type;
    const auto z = unpack<T>(x);
    const Cplx<T> w = f(std::span<const Cplx<T>>(z));
    y[0] = w.re;
    y[1] = w.im;
  };
  return {std::move(chart), make_real_map(2 * m, 2, body), opt};
}

inline DiffOptions scaled(const DiffOptions& opt, double scale) {
  DiffOptions o = opt;
  o.step = opt.step * scale;
  return o;
}

inline void check_point(const ScalarField& f, std::span<const Cplx<double>> z, int steps, const char* what) {
  if (static_cast<int>(z.size()) != f.dim()) throw DimensionError(std::string(what) + ": point has the wrong dimension");
  const auto x = pack<double>(z);
  require_margin(f.chart.domain, x, steps * f.options.step * f.chart.scale, what);
}

// ∂F/∂ζ^a. The ∂̄-derivatives of a real field are the conjugates.
inline Eigen::VectorXcd wirtinger_gradient(const ScalarField& f, std::span<const Cplx<double>> z) {
  check_point(f, z, 2, "wirtinger_gradient");
  const auto x = pack<double>(z);
  const Eigen::MatrixXd jac = jacobian(f.map, x, scaled(f.options, f.chart.scale));
  const int m = f.dim();
  Eigen::VectorXcd g(m);
  for (int a = 0; a < m; ++a) {
    const double ux = jac(0, 2 * a), uy = jac(0, 2 * a + 1);
    const double vx = f.is_complex() ? jac(1, 2 * a) : 0.0;
    const double vy = f.is_complex() ? jac(1, 2 * a + 1) : 0.0;
    g(a) = 0.5 * std::complex<double>(ux + vy, vx - uy);
  }
  return g;
}

// Matrix ∂²F/∂ζ^a∂ζ̄^b of a real field, Hermitian-symmetrized.
inline Form11 wirtinger_hessian(const ScalarField& f, std::span<const Cplx<double>> z) {
  if (f.is_complex()) throw Error("wirtinger_hessian: the complex Hessian form needs a real-valued field");
  check_point(f, z, 3, "wirtinger_hessian");
  const auto x = pack<double>(z);
  const auto hs = hessian(f.map, x, scaled(f.options, f.chart.scale));
  const Eigen::MatrixXd& h = hs[0];
  const int m = f.dim();
  Eigen::MatrixXcd a(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      const double xx = h(2 * p, 2 * q), yy = h(2 * p + 1, 2 * q + 1);
      const double xy = h(2 * p, 2 * q + 1), yx = h(2 * p + 1, 2 * q);
      a(p, q) = 0.25 * std::complex<double>(xx + yy, xy - yx);
    }
  return Form11(a);
}

}  // namespace ged

#endif  // GED_WIRTINGER_HPP
