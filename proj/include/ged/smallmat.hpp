#ifndef GED_SMALLMAT_HPP
#define GED_SMALLMAT_HPP

// Dense complex matrices over a generic scalar, sized at run time. These are
// only used inside field evaluators (dimension <= a handful) where Eigen's
// scalar requirements get in the way; results leave as Eigen matrices.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ged/field.hpp"
#include "ged/scalar.hpp"

namespace ged {

template <class T>
class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), Cplx<T>(0.0)) {}

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Cplx<T>(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Cplx<T>& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Cplx<T>& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  std::span<const Cplx<T>> data() const { return a_; }
  std::span<Cplx<T>> data() { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cplx<T>> a_;
};

template <class T>
CMat<T> from_flat(std::span<const Cplx<T>> v, int rows, int cols) {
  CMat<T> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = v[static_cast<std::size_t>(i * cols + j)];
  return m;
}

template <class T>
CMat<T> transpose(const CMat<T>& m) {
  CMat<T> t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
CMat<T> conj(const CMat<T>& m) {
  CMat<T> t(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(i, j) = conj(m(i, j));
  return t;
}

template <class T>
CMat<T> operator*(const CMat<T>& x, const CMat<T>& y) {
  CMat<T> r(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < y.cols(); ++j) {
      Cplx<T> s(0.0);
      for (int k = 0; k < x.cols(); ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

// Inverse by Gauss-Jordan elimination with partial pivoting on the value part.
template <class T>
CMat<T> inverse(const CMat<T>& m) {
  const int n = m.rows();
  CMat<T> a = m;
  CMat<T> inv = CMat<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = -1.0;
    for (int r = col; r < n; ++r) {
      const double mag = std::abs(complex_value(a(r, col)));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (!(best > 0.0)) throw Error("inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    const Cplx<T> p = Cplx<T>(1.0) / a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * p;
      inv(col, j) = inv(col, j) * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Cplx<T> f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Contravariant metric g^{i j̄}, defined by g^{i j̄} g_{k j̄} = δ^i_k; as a
// matrix this is (Gᵀ)⁻¹.
template <class T>
CMat<T> upper_index(const CMat<T>& g) {
  return inverse(transpose(g));
}

// Σ A(i,j) u_i conj(v_j)
template <class T>
Cplx<T> sesquilinear(const CMat<T>& a, std::span<const Cplx<T>> u, std::span<const Cplx<T>> v) {
  Cplx<T> s(0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * u[i] * conj(v[j]);
  return s;
}

// ---- conversions ------------------------------------------------------------

inline Eigen::MatrixXcd to_eigen(const CMat<double>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = to_std(m(i, j));
  return e;
}

template <class T>
CMat<T> from_eigen(const Eigen::MatrixXcd& e) {
  CMat<T> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Cplx<T>(T(e(i, j).real()), T(e(i, j).imag()));
  return m;
}

inline std::vector<Cplx<double>> to_cvec(const Eigen::VectorXcd& v) {
  std::vector<Cplx<double>> r(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) r[static_cast<std::size_t>(i)] = Cplx<double>(v(i));
  return r;
}

inline Eigen::VectorXcd to_eigen(std::span<const Cplx<double>> v) {
  Eigen::VectorXcd e(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = to_std(v[i]);
  return e;
}

template <class T>
std::vector<Cplx<T>> lift(std::span<const Cplx<double>> v) {
  std::vector<Cplx<T>> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Cplx<T>(T(v[i].re), T(v[i].im));
  return r;
}

}  // namespace ged

#endif  // GED_SMALLMAT_HPP
