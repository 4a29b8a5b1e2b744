#ifndef GED_FORM11_HPP
#define GED_FORM11_HPP

// Real (1,1)-forms √−1 A_{ab̄} dζ^a ∧ dζ̄^b, stored as the Hermitian
// coefficient matrix A without the √−1 factor. The form is positive exactly
// when A is positive semidefinite.

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "ged/field.hpp"

namespace ged {

class Form11 {
 public:
  Form11() = default;
  explicit Form11(int dim) : a_(Eigen::MatrixXcd::Zero(dim, dim)) {}
  explicit Form11(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw DimensionError("Form11: coefficient matrix must be square");
    a_ = 0.5 * (a + a.adjoint());
  }

  int dim() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return a_; }
  std::complex<double> operator()(int a, int b) const { return a_(a, b); }

  Form11 operator+(const Form11& o) const { return Form11(a_ + o.a_); }
  Form11 operator-(const Form11& o) const { return Form11(a_ - o.a_); }
  Form11 operator*(double s) const { return Form11(s * a_); }
  friend Form11 operator*(double s, const Form11& f) { return f * s; }

  // Max-abs entry.
  double max_abs() const { return a_.size() ? a_.cwiseAbs().maxCoeff() : 0.0; }

  // Zero-padded embedding into a larger chart, occupying indices [offset, offset+dim).
  Form11 embed(int total, int offset = 0) const {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(total, total);
    b.block(offset, offset, dim(), dim()) = a_;
    return Form11(b);
  }

  Form11 block(int offset, int size) const { return Form11(Eigen::MatrixXcd(a_.block(offset, offset, size, size))); }

 private:
  Eigen::MatrixXcd a_;
};

// u† A u; real because A is Hermitian.
inline double evaluate_form11(const Form11& form, const Eigen::VectorXcd& u) {
  if (u.size() != form.dim()) throw DimensionError("evaluate_form11: vector dimension does not match the form");
  // Σ A_{ab̄} u^a ū^b
  return (u.transpose() * form.matrix() * u.conjugate())(0, 0).real();
}

inline Eigen::VectorXd eigenvalues(const Form11& form) {
  if (form.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(form.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Smallest eigenvalue; an empty form reports 0.
inline double min_eigenvalue(const Form11& form) {
  const auto ev = eigenvalues(form);
  return ev.size() ? ev(0) : 0.0;
}

inline double max_eigenvalue(const Form11& form) {
  const auto ev = eigenvalues(form);
  return ev.size() ? ev(ev.size() - 1) : 0.0;
}

// Eigenvector of the smallest eigenvalue, in the convention of
// evaluate_form11 (so that evaluate_form11(A, v) = λ_min).
inline Eigen::VectorXcd min_eigenvector(const Form11& form) {
  if (form.dim() == 0) return {};
  // Σ A_{ab̄} u^a ū^b = x†Ax with x = ū.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(form.matrix());
  return es.eigenvectors().col(0).conjugate();
}

}  // namespace ged

#endif  // GED_FORM11_HPP
