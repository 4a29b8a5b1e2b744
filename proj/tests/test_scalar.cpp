// Dual, hyper-dual and complex scalars; the expression evaluator.

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "ged/expr.hpp"
#include "ged/scalar.hpp"

using namespace ged;

namespace {

// f(x) = exp(x) sin(x) / (1 + x²), with derivatives by hand.
double f0(double x) { return std::exp(x) * std::sin(x) / (1 + x * x); }
double f1(double x) {
  const double q = 1 + x * x;
  return std::exp(x) * ((std::sin(x) + std::cos(x)) / q - 2 * x * std::sin(x) / (q * q));
}

template <class T>
T f(const T& x) {
  return exp(x) * sin(x) / (1.0 + x * x);
}



}  // namespace

TEST(Dual, FirstDerivativeMatchesHandDerivative) {
  for (double x : {-1.3, 0.0, 0.4, 2.1}) {
    const auto y = f(Dual<double>(x, 1.0));
    EXPECT_NEAR(y.v, f0(x), 1e-14);
    EXPECT_NEAR(y.d, f1(x), 1e-13);
  }
}

TEST(HyperDual, SecondDerivativeMatchesCentralDifferenceOfFirst) {
  for (double x : {-0.7, 0.3, 1.5}) {
    const auto y = f(HyperDual(x, 1.0, 1.0, 0.0));
    EXPECT_NEAR(y.a, f1(x), 1e-13);
    EXPECT_NEAR(y.b, f1(x), 1e-13);
    const double h = 1e-5;
    EXPECT_NEAR(y.ab, (f1(x + h) - f1(x - h)) / (2 * h), 1e-8);
  }
}

TEST(HyperDual, MixedPartialOfProduct) {
  // ∂x∂y (x² y³) = 6 x y²
  const double x0 = 0.8, y0 = -1.1;
  const HyperDual x(x0, 1.0, 0.0, 0.0), y(y0, 0.0, 1.0, 0.0);
  const auto v = x * x * y * y * y;
  EXPECT_NEAR(v.ab, 6 * x0 * y0 * y0, 1e-13);
}

TEST(NestedDual, DualOfDualGivesSecondDerivative) {
  const double x = 0.6;
  Dual<Dual<double>> t(Dual<double>(x, 1.0), Dual<double>(1.0, 0.0));
  const auto y = f(t);
  EXPECT_NEAR(y.d.v, f1(x), 1e-13);
  const double h = 1e-5;
  EXPECT_NEAR(y.d.d, (f1(x + h) - f1(x - h)) / (2 * h), 1e-8);
}

TEST(Cplx, ArithmeticMatchesStdComplex) {
  const std::complex<double> a(0.3, -1.2), b(-0.7, 0.4);
  const Cplx<double> A(a), B(b);
  EXPECT_NEAR(std::abs(to_std(A * B) - a * b), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_std(A / B) - a / b), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_std(exp(A)) - std::exp(a)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_std(log(B)) - std::log(b)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(to_std(ipow(A, 5)) - std::pow(a, 5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(to_std(ipow(A, -2)) - std::pow(a, -2)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(to_std(cpow(B, 0.37)) - std::pow(b, 0.37)), 0.0, 1e-14);
  EXPECT_NEAR(norm2(A), std::norm(a), 1e-15);
  EXPECT_NEAR(std::abs(to_std(conj(A)) - std::conj(a)), 0.0, 0.0);
}

TEST(Expr, EvaluatesLikeStdComplex) {
  const std::vector<Cplx<double>> z = {Cplx<double>(0.3, 0.2), Cplx<double>(-0.5, 0.1)};
  const std::complex<double> z1(0.3, 0.2), z2(-0.5, 0.1), i(0, 1);
  struct Case {
    const char* text;
    std::complex<double> want;
  };
  const Case cases[] = {
      {"1 + |z1|^2", 1.0 + std::norm(z1)},
      {"(1 + |z1|^2 + |z2|^2)^-2", std::pow(1.0 + std::norm(z1) + std::norm(z2), -2)},
      {"conj(z1)*z2 - i*z1^3", std::conj(z1) * z2 - i * std::pow(z1, 3)},
      {"exp(z1) / log(2 + z2)", std::exp(z1) / std::log(2.0 + z2)},
      {"re(z1) + im(z2) + abs2(z1 - z2)", z1.real() + z2.imag() + std::norm(z1 - z2)},
      {"-z1^2", -(z1 * z1)},
      {"2^-1", 0.5},
      {"(1 + z1)^0.5", std::pow(1.0 + z1, 0.5)},
      {"1.5e-1 * z2", 0.15 * z2},
  };
  for (const auto& c : cases) {
    const Expr e = Expr::parse(c.text, 'z', 2);
    EXPECT_NEAR(std::abs(to_std(e.eval<double>(z)) - c.want), 0.0, 1e-14) << c.text;
  }
}

TEST(Expr, VariableGroupsAreNumberedInOrder) {
  const Expr e = Expr::parse("z1 + 10*w1 + 100*w2", {{'z', 1}, {'w', 2}});
  const std::vector<Cplx<double>> v = {Cplx<double>(1.0), Cplx<double>(2.0), Cplx<double>(3.0)};
  EXPECT_DOUBLE_EQ(e.eval<double>(v).re, 1 + 20 + 300);
}

TEST(Expr, DifferentiatesThroughDualScalars) {
  // d/dx of |z1|^2 along the real axis at x = 0.4 is 0.8.
  const Expr e = Expr::parse("|z1|^2", 'z', 1);
  const std::vector<Cplx<Dual<double>>> z = {Cplx<Dual<double>>(Dual<double>(0.4, 1.0), Dual<double>(0.0, 0.0))};
  EXPECT_NEAR(e.eval<Dual<double>>(z).re.d, 0.8, 1e-15);
}

TEST(Expr, ReportsErrorsWithPositions) {
  auto pos = [](const char* text) {
    try {
      Expr::parse(text, 'z', 1);
    } catch (const ExprError& e) {
      return static_cast<long>(e.position);
    }
    return -1L;
  };
  EXPECT_EQ(pos("z2"), 0);
  EXPECT_EQ(pos("1 + foo(z1)"), 4);
  EXPECT_EQ(pos("(z1"), 3);
  EXPECT_EQ(pos("|z1|"), 4);
  EXPECT_EQ(pos("z1 ^ z1"), 5);
  EXPECT_EQ(pos("z1 )"), 3);
  EXPECT_EQ(pos(""), 0);
}
