#ifndef GED_SCALAR_HPP
#define GED_SCALAR_HPP

// Scalar types used by every field evaluator.
//
// Fields are written once as generic code over a real scalar T and are then
// instantiated for plain doubles, first-order dual numbers, hyper-dual numbers
// (exact second derivatives along two seeded directions) and duals over
// hyper-duals (first derivatives of quantities that are themselves
// differentiated twice). Cplx<T> carries complex arithmetic over any such T;
// std::complex is only specified for float/double/long double.

#include <cmath>
#include <complex>
#include <type_traits>

namespace ged {

// ---------------------------------------------------------------------------
// Dual<T>: v + d·ε, ε² = 0

template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(double x) : v(x), d(0.0) {}  // NOLINT(google-explicit-constructor)
  Dual(T value, T deriv) : v(value), d(deriv) {}
  template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
  Dual(const T& x) : v(x), d(0.0) {}  // NOLINT(google-explicit-constructor)
};

// ---------------------------------------------------------------------------
// HyperDual: v + a·ε1 + b·ε2 + ab·ε1ε2, ε1² = ε2² = 0

struct HyperDual {
  double v = 0.0;
  double a = 0.0;
  double b = 0.0;
  double ab = 0.0;

  HyperDual() = default;
  HyperDual(double x) : v(x) {}  // NOLINT(google-explicit-constructor)
  HyperDual(double v_, double a_, double b_, double ab_) : v(v_), a(a_), b(b_), ab(ab_) {}
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

// ---- value extraction ------------------------------------------------------

inline double value(double x) { return x; }
inline double value(const HyperDual& x) { return x.v; }
template <class T>
double value(const Dual<T>& x) {
  return value(x.v);
}

// ---- HyperDual arithmetic --------------------------------------------------

inline HyperDual operator+(const HyperDual& x, const HyperDual& y) {
  return {x.v + y.v, x.a + y.a, x.b + y.b, x.ab + y.ab};
}
inline HyperDual operator-(const HyperDual& x, const HyperDual& y) {
  return {x.v - y.v, x.a - y.a, x.b - y.b, x.ab - y.ab};
}
inline HyperDual operator-(const HyperDual& x) { return {-x.v, -x.a, -x.b, -x.ab}; }
inline HyperDual operator*(const HyperDual& x, const HyperDual& y) {
  return {x.v * y.v, x.v * y.a + x.a * y.v, x.v * y.b + x.b * y.v,
          x.v * y.ab + x.a * y.b + x.b * y.a + x.ab * y.v};
}
inline HyperDual operator*(double s, const HyperDual& x) { return {s * x.v, s * x.a, s * x.b, s * x.ab}; }
inline HyperDual operator*(const HyperDual& x, double s) { return s * x; }
inline HyperDual operator+(const HyperDual& x, double s) { return {x.v + s, x.a, x.b, x.ab}; }
inline HyperDual operator+(double s, const HyperDual& x) { return x + s; }
inline HyperDual operator-(const HyperDual& x, double s) { return {x.v - s, x.a, x.b, x.ab}; }
inline HyperDual operator-(double s, const HyperDual& x) { return {s - x.v, -x.a, -x.b, -x.ab}; }

// f(x) with f' and f'' evaluated at x.v
inline HyperDual chain(const HyperDual& x, double f0, double f1, double f2) {
  return {f0, f1 * x.a, f1 * x.b, f1 * x.ab + f2 * x.a * x.b};
}

inline HyperDual inverse(const HyperDual& x) {
  const double r = 1.0 / x.v;
  return chain(x, r, -r * r, 2.0 * r * r * r);
}
inline HyperDual operator/(const HyperDual& x, const HyperDual& y) { return x * inverse(y); }
inline HyperDual operator/(const HyperDual& x, double s) { return x * (1.0 / s); }
inline HyperDual operator/(double s, const HyperDual& y) { return s * inverse(y); }

inline HyperDual& operator+=(HyperDual& x, const HyperDual& y) { return x = x + y; }
inline HyperDual& operator-=(HyperDual& x, const HyperDual& y) { return x = x - y; }
inline HyperDual& operator*=(HyperDual& x, const HyperDual& y) { return x = x * y; }
inline HyperDual& operator/=(HyperDual& x, const HyperDual& y) { return x = x / y; }

inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.v);
  return chain(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) { return chain(x, std::log(x.v), 1.0 / x.v, -1.0 / (x.v * x.v)); }
inline HyperDual sqrt(const HyperDual& x) {
  const double s = std::sqrt(x.v);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
}
inline HyperDual sin(const HyperDual& x) {
  return chain(x, std::sin(x.v), std::cos(x.v), -std::sin(x.v));
}
inline HyperDual cos(const HyperDual& x) {
  return chain(x, std::cos(x.v), -std::sin(x.v), -std::cos(x.v));
}
inline HyperDual tanh(const HyperDual& x) {
  const double t = std::tanh(x.v);
  const double d = 1.0 - t * t;
  return chain(x, t, d, -2.0 * t * d);
}
inline HyperDual atan2(const HyperDual& y, const HyperDual& x) {
  // d atan2 = (x dy - y dx) / (x² + y²), expanded to second order
  const double r2 = x.v * x.v + y.v * y.v;
  const double fy = x.v / r2;
  const double fx = -y.v / r2;
  const double fyy = -2.0 * x.v * y.v / (r2 * r2);
  const double fxx = 2.0 * x.v * y.v / (r2 * r2);
  const double fxy = (y.v * y.v - x.v * x.v) / (r2 * r2);
  HyperDual out;
  out.v = std::atan2(y.v, x.v);
  out.a = fx * x.a + fy * y.a;
  out.b = fx * x.b + fy * y.b;
  out.ab = fx * x.ab + fy * y.ab + fxx * x.a * x.b + fyy * y.a * y.b + fxy * (x.a * y.b + y.a * x.b);
  return out;
}
inline HyperDual pow(const HyperDual& x, double p) {
  const double f0 = std::pow(x.v, p);
  return chain(x, f0, p * std::pow(x.v, p - 1.0), p * (p - 1.0) * std::pow(x.v, p - 2.0));
}

// ---- Dual<T> arithmetic ----------------------------------------------------

template <class T>
Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.v + y.v, x.d + y.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.v - y.v, x.d - y.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& x) {
  return {-x.v, -x.d};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.v * y.v, x.v * y.d + x.d * y.v};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  const T inv = T(1.0) / y.v;
  return {x.v * inv, (x.d * y.v - x.v * y.d) * (inv * inv)};
}
template <class T>
Dual<T> operator*(double s, const Dual<T>& x) {
  return {s * x.v, s * x.d};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, double s) {
  return {s * x.v, s * x.d};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, double s) {
  return {x.v * (1.0 / s), x.d * (1.0 / s)};
}
template <class T>
Dual<T> operator/(double s, const Dual<T>& y) {
  return Dual<T>(s) / y;
}
template <class T>
Dual<T> operator+(const Dual<T>& x, double s) {
  return {x.v + s, x.d};
}
template <class T>
Dual<T> operator+(double s, const Dual<T>& x) {
  return {x.v + s, x.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, double s) {
  return {x.v - s, x.d};
}
template <class T>
Dual<T> operator-(double s, const Dual<T>& x) {
  return {s - x.v, -x.d};
}
template <class T>
Dual<T>& operator+=(Dual<T>& x, const Dual<T>& y) {
  return x = x + y;
}
template <class T>
Dual<T>& operator-=(Dual<T>& x, const Dual<T>& y) {
  return x = x - y;
}
template <class T>
Dual<T>& operator*=(Dual<T>& x, const Dual<T>& y) {
  return x = x * y;
}
template <class T>
Dual<T>& operator/=(Dual<T>& x, const Dual<T>& y) {
  return x = x / y;
}

using std::atan2;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tanh;

template <class T>
Dual<T> exp(const Dual<T>& x) {
  const T e = exp(x.v);
  return {e, e * x.d};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.v), x.d / x.v};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  const T s = sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.v), cos(x.v) * x.d};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.v), -(sin(x.v) * x.d)};
}
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  const T t = tanh(x.v);
  return {t, (1.0 - t * t) * x.d};
}
template <class T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  const T r2 = x.v * x.v + y.v * y.v;
  return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  return {pow(x.v, p), p * pow(x.v, p - 1.0) * x.d};
}

// ---------------------------------------------------------------------------
// Cplx<T>: complex numbers over an arbitrary real scalar

template <class T>
struct Cplx {
  T re{};
  T im{};

  Cplx() = default;
  Cplx(double r) : re(r), im(0.0) {}  // NOLINT(google-explicit-constructor)
  Cplx(T r, T i) : re(r), im(i) {}
  Cplx(std::complex<double> c) : re(c.real()), im(c.imag()) {}  // NOLINT(google-explicit-constructor)
  template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
  Cplx(const T& r) : re(r), im(0.0) {}  // NOLINT(google-explicit-constructor)
};

template <class T>
Cplx<T> operator+(const Cplx<T>& x, const Cplx<T>& y) {
  return {x.re + y.re, x.im + y.im};
}
template <class T>
Cplx<T> operator-(const Cplx<T>& x, const Cplx<T>& y) {
  return {x.re - y.re, x.im - y.im};
}
template <class T>
Cplx<T> operator-(const Cplx<T>& x) {
  return {-x.re, -x.im};
}
template <class T>
Cplx<T> operator*(const Cplx<T>& x, const Cplx<T>& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Cplx<T> operator*(const T& s, const Cplx<T>& x) {
  return {s * x.re, s * x.im};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Cplx<T> operator*(const Cplx<T>& x, const T& s) {
  return {s * x.re, s * x.im};
}
template <class T>
Cplx<T> operator*(double s, const Cplx<T>& x) {
  return {s * x.re, s * x.im};
}
template <class T>
Cplx<T> operator*(const Cplx<T>& x, double s) {
  return {s * x.re, s * x.im};
}
template <class T>
T norm2(const Cplx<T>& x) {
  return x.re * x.re + x.im * x.im;
}
template <class T>
Cplx<T> conj(const Cplx<T>& x) {
  return {x.re, -x.im};
}
template <class T>
Cplx<T> operator/(const Cplx<T>& x, const Cplx<T>& y) {
  const T inv = T(1.0) / norm2(y);
  const Cplx<T> n = x * conj(y);
  return {n.re * inv, n.im * inv};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Cplx<T> operator/(const Cplx<T>& x, const T& s) {
  const T inv = T(1.0) / s;
  return {x.re * inv, x.im * inv};
}
template <class T>
Cplx<T> operator/(const Cplx<T>& x, double s) {
  return {x.re * (1.0 / s), x.im * (1.0 / s)};
}
template <class T>
Cplx<T>& operator+=(Cplx<T>& x, const Cplx<T>& y) {
  x.re = x.re + y.re;
  x.im = x.im + y.im;
  return x;
}
template <class T>
Cplx<T>& operator-=(Cplx<T>& x, const Cplx<T>& y) {
  x.re = x.re - y.re;
  x.im = x.im - y.im;
  return x;
}
template <class T>
Cplx<T>& operator*=(Cplx<T>& x, const Cplx<T>& y) {
  return x = x * y;
}

template <class T>
Cplx<T> exp(const Cplx<T>& x) {
  const T e = exp(x.re);
  return {e * cos(x.im), e * sin(x.im)};
}
template <class T>
Cplx<T> log(const Cplx<T>& x) {
  return {0.5 * log(norm2(x)), atan2(x.im, x.re)};
}
template <class T>
Cplx<T> ipow(Cplx<T> x, int k) {
  if (k < 0) return Cplx<T>(1.0) / ipow(x, -k);
  Cplx<T> r(1.0);
  while (k > 0) {
    if (k & 1) r = r * x;
    x = x * x;
    k >>= 1;
  }
  return r;
}
template <class T>
Cplx<T> cpow(const Cplx<T>& x, double p) {
  if (p == std::round(p) && std::abs(p) < 64) return ipow(x, static_cast<int>(p));
  return exp(Cplx<T>(p) * log(x));
}
template <class T>
Cplx<T> csqrt(const Cplx<T>& x) {
  return cpow(x, 0.5);
}

inline std::complex<double> to_std(const Cplx<double>& x) { return {x.re, x.im}; }
template <class T>
std::complex<double> complex_value(const Cplx<T>& x) {
  return {value(x.re), value(x.im)};
}

}  // namespace ged

#endif  // GED_SCALAR_HPP
