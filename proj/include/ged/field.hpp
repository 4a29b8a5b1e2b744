#ifndef GED_FIELD_HPP
#define GED_FIELD_HPP

// Type-erased smooth maps R^N -> R^K.
//
// A RealMap stores one evaluator per scalar type in EvalScalars. Fields built
// from generic callables get all of them; composite fields whose bodies take
// derivatives of other fields provide only the subset they can support. Every
// map provides at least the double evaluator, which is all the
// finite-difference backend needs.

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ged/scalar.hpp"

namespace ged {

using DualHD = Dual<HyperDual>;

template <class T>
using EvalFn = std::function<void(std::span<const T>, std::span<T>)>;

using EvalTuple = std::tuple<EvalFn<double>, EvalFn<Dual<double>>, EvalFn<HyperDual>, EvalFn<DualHD>>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class RealMap {
 public:
  RealMap() = default;
  RealMap(int in_dim, int out_dim, EvalTuple fns)
      : in_dim_(in_dim), out_dim_(out_dim), fns_(std::make_shared<const EvalTuple>(std::move(fns))) {}

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool valid() const { return fns_ != nullptr; }

  template <class T>
  bool supports() const {
    return fns_ && static_cast<bool>(std::get<EvalFn<T>>(*fns_));
  }

  template <class T>
  void eval(std::span<const T> x, std::span<T> y) const {
    if (static_cast<int>(x.size()) != in_dim_ || static_cast<int>(y.size()) != out_dim_)
      throw DimensionError("RealMap::eval: argument size mismatch");
    const auto& fn = std::get<EvalFn<T>>(*fns_);
    if (!fn) throw Error("RealMap::eval: scalar type not supported by this field");
    fn(x, y);
  }

  template <class T>
  std::vector<T> operator()(std::span<const T> x) const {
    std::vector<T> y(out_dim_);
    eval<T>(x, y);
    return y;
  }
  std::vector<double> operator()(const std::vector<double>& x) const {
    return (*this)(std::span<const double>(x));
  }

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::shared_ptr<const EvalTuple> fns_;
};

template <class T>
struct type_tag {
  using type = T;
};

// Builds a RealMap from a generic callable `f(span<const T>, span<T>)`,
// instantiating it for the listed scalar types only.
template <class... Ts, class F>
RealMap make_real_map_for(int in_dim, int out_dim, F f) {
  EvalTuple fns;
  ((std::get<EvalFn<Ts>>(fns) = [f](std::span<const Ts> x, std::span<Ts> y) { f(x, y); }), ...);
  return RealMap(in_dim, out_dim, std::move(fns));
}

template <class F>
RealMap make_real_map(int in_dim, int out_dim, F f) {
  return make_real_map_for<double, Dual<double>, HyperDual, DualHD>(in_dim, out_dim, std::move(f));
}

// A double-only map: differentiable by finite differences only.
inline RealMap make_fd_only_map(int in_dim, int out_dim, EvalFn<double> f) {
  EvalTuple fns;
  std::get<EvalFn<double>>(fns) = std::move(f);
  return RealMap(in_dim, out_dim, std::move(fns));
}

// ---------------------------------------------------------------------------
// Complex-valued maps of complex variables, stored as real maps on
// interleaved (re, im) pairs.

template <class T>
std::vector<Cplx<T>> unpack(std::span<const T> x) {
  std::vector<Cplx<T>> z(x.size() / 2);
  for (std::size_t a = 0; a < z.size(); ++a) z[a] = Cplx<T>(x[2 * a], x[2 * a + 1]);
  return z;
}

template <class T>
void pack(std::span<const Cplx<T>> z, std::span<T> y) {
  for (std::size_t a = 0; a < z.size(); ++a) {
    y[2 * a] = z[a].re;
    y[2 * a + 1] = z[a].im;
  }
}

template <class T>
std::vector<T> pack(std::span<const Cplx<T>> z) {
  std::vector<T> y(2 * z.size());
  pack<T>(z, y);
  return y;
}

class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(int in_dim, int out_dim, RealMap map) : in_dim_(in_dim), out_dim_(out_dim), map_(std::move(map)) {
    if (map_.in_dim() != 2 * in_dim || map_.out_dim() != 2 * out_dim)
      throw DimensionError("ComplexField: real map has the wrong shape");
  }

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const RealMap& real() const { return map_; }
  bool valid() const { return map_.valid(); }

  template <class T>
  bool supports() const {
    return map_.supports<T>();
  }

  template <class T>
  std::vector<Cplx<T>> operator()(std::span<const Cplx<T>> z) const {
    const auto x = pack<T>(z);
    std::vector<T> y(2 * out_dim_);
    map_.eval<T>(x, y);
    return unpack<T>(y);
  }
  std::vector<Cplx<double>> operator()(const std::vector<Cplx<double>>& z) const {
    return (*this)(std::span<const Cplx<double>>(z));
  }

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  RealMap map_;
};

template <class... Ts, class F>
ComplexField make_complex_field_for(int in_dim, int out_dim, F f) {
  auto adapter = [f, out_dim](auto x, auto y) {
    using T = typename decltype(y)::element_type;
    const auto z = unpack<T>(x);
    std::vector<Cplx<T>> w(out_dim);
    f(std::span<const Cplx<T>>(z), std::span<Cplx<T>>(w));
    pack<T>(std::span<const Cplx<T>>(w), y);
  };
  return ComplexField(in_dim, out_dim, make_real_map_for<Ts...>(2 * in_dim, 2 * out_dim, adapter));
}

// `f(span<const Cplx<T>> z, span<Cplx<T>> out)` for every scalar type.
template <class F>
ComplexField make_complex_field(int in_dim, int out_dim, F f) {
  return make_complex_field_for<double, Dual<double>, HyperDual, DualHD>(in_dim, out_dim, std::move(f));
}

}  // namespace ged

#endif  // GED_FIELD_HPP
