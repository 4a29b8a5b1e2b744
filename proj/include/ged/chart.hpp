#ifndef GED_CHART_HPP
#define GED_CHART_HPP

// Coordinate charts. A domain is a product of blocks; each block is a
// (possibly hollow) ball in a consecutive run of real coordinates. A complex
// coordinate z^a occupies the real pair (x_a, y_a) = (2a, 2a+1).

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ged/field.hpp"
#include "ged/scalar.hpp"

namespace ged {

class BoundaryError : public Error {
 public:
  using Error::Error;
};

struct DomainBlock {
  int first = 0;  // first real coordinate
  int count = 1;  // number of real coordinates
  std::vector<double> center;
  double outer = std::numeric_limits<double>::infinity();
  double inner = 0.0;
};

class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<DomainBlock> blocks) : blocks_(std::move(blocks)) {
    for (const auto& b : blocks_) {
      if (b.count < 1 || static_cast<int>(b.center.size()) != b.count) throw Error("Domain: malformed block");
      if (!(b.outer > b.inner) || b.inner < 0.0) throw Error("Domain: empty block");
      real_dim_ = std::max(real_dim_, b.first + b.count);
    }
  }

  int real_dim() const { return real_dim_; }
  const std::vector<DomainBlock>& blocks() const { return blocks_; }

  // Distance from x to the boundary; negative outside.
  double boundary_distance(std::span<const double> x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks_) {
      double r2 = 0.0;
      for (int k = 0; k < b.count; ++k) {
        const double t = x[static_cast<std::size_t>(b.first + k)] - b.center[static_cast<std::size_t>(k)];
        r2 += t * t;
      }
      const double r = std::sqrt(r2);
      d = std::min(d, b.outer - r);
      if (b.inner > 0.0) d = std::min(d, r - b.inner);
    }
    return d;
  }

  Domain concat(const Domain& other) const {
    std::vector<DomainBlock> bl = blocks_;
    for (auto b : other.blocks_) {
      b.first += real_dim_;
      bl.push_back(b);
    }
    Domain d(bl);
    d.real_dim_ = real_dim_ + other.real_dim_;
    return d;
  }

  static Domain unbounded(int real_dim) {
    Domain d;
    d.real_dim_ = real_dim;
    return d;
  }

  // Uniform-ish sample inside every block, keeping `margin` from each boundary.
  // Unbounded blocks and free coordinates draw from [-1, 1].
  template <class Rng>
  std::vector<double> sample(Rng& rng, double fraction) const {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(real_dim_));
    for (auto& t : x) t = u(rng);
    for (const auto& b : blocks_) {
      if (!std::isfinite(b.outer)) continue;
      std::vector<double> dir(static_cast<std::size_t>(b.count));
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (auto& t : dir) {
          t = u(rng);
          n2 += t * t;
        }
      } while (n2 > 1.0 || n2 < 1e-6);
      const double n = std::sqrt(n2);
      const double lo = b.inner + (1.0 - fraction) * 0.5 * (b.outer - b.inner);
      const double hi = b.outer - (1.0 - fraction) * 0.5 * (b.outer - b.inner);
      const double r = b.inner > 0.0 ? lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng)
                                     : fraction * b.outer * std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng),
                                                                     1.0 / b.count);
      for (int k = 0; k < b.count; ++k)
        x[static_cast<std::size_t>(b.first + k)] =
            b.center[static_cast<std::size_t>(k)] + r * dir[static_cast<std::size_t>(k)] / n;
    }
    return x;
  }

 private:
  std::vector<DomainBlock> blocks_;
  int real_dim_ = 0;
};

// A chart on C^m. `scale` sets the finite-difference step unit.
struct ComplexChart {
  int dim = 1;
  Domain domain;
  double scale = 1.0;

  static ComplexChart whole(int m) { return {m, Domain::unbounded(2 * m), 1.0}; }

  // |z - c| < outer (and > inner) as one ball in C^m.
  static ComplexChart ball(int m, double outer, double inner = 0.0, std::vector<Cplx<double>> center = {}) {
    DomainBlock b;
    b.first = 0;
    b.count = 2 * m;
    b.center.assign(static_cast<std::size_t>(2 * m), 0.0);
    for (std::size_t a = 0; a < center.size(); ++a) {
      b.center[2 * a] = center[a].re;
      b.center[2 * a + 1] = center[a].im;
    }
    b.outer = outer;
    b.inner = inner;
    return {m, Domain({b}), 1.0};
  }

  // Product of discs |z^a - c^a| < radius.
  static ComplexChart polydisc(int m, double radius) {
    std::vector<DomainBlock> bl;
    for (int a = 0; a < m; ++a) {
      DomainBlock b;
      b.first = 2 * a;
      b.count = 2;
      b.center = {0.0, 0.0};
      b.outer = radius;
      bl.push_back(b);
    }
    return {m, Domain(bl), 1.0};
  }

  double boundary_distance(std::span<const Cplx<double>> z) const {
    return domain.boundary_distance(pack<double>(z));
  }

  template <class Rng>
  std::vector<Cplx<double>> sample(Rng& rng, double fraction = 0.8) const {
    const auto x = domain.sample(rng, fraction);
    return unpack<double>(std::span<const double>(x));
  }
};

// A chart on R^n.
struct RealChart {
  int dim = 1;
  Domain domain;
  double scale = 1.0;

  static RealChart whole(int n) { return {n, Domain::unbounded(n), 1.0}; }
  static RealChart ball(int n, double outer, std::vector<double> center = {}) {
    DomainBlock b;
    b.first = 0;
    b.count = n;
    b.center = center.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : center;
    b.outer = outer;
    return {n, Domain({b}), 1.0};
  }

  double boundary_distance(std::span<const double> x) const { return domain.boundary_distance(x); }

  template <class Rng>
  std::vector<double> sample(Rng& rng, double fraction = 0.8) const {
    return domain.sample(rng, fraction);
  }
};

inline void require_margin(const Domain& d, std::span<const double> x, double margin, const char* what) {
  const double dist = d.boundary_distance(x);
  if (!(dist >= margin))
    throw BoundaryError(std::string(what) + ": point within " + std::to_string(margin) +
                        " of the chart boundary (distance " + std::to_string(dist) + ")");
}

}  // namespace ged

#endif  // GED_CHART_HPP
