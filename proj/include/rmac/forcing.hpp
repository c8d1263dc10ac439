#pragma once

// Discrete right-hand sides built from analytic forcing g = (g^x, g^y).
//
// Averaged mode (the reconstructed scheme): line averages over the momentum
// control intervals,
//   f^x_{i,j+1/2} = (1/h_i) int_{x_{i-1/2}}^{x_{i+1/2}} g^x(x, y_{j+1/2}, t) dx,
// computed with Gauss-Legendre quadrature on each half interval
// [x_{i-1/2}, x_i], [x_i, x_{i+1/2}].  Pointwise mode (classical scheme):
// f^x_{i,j+1/2} = g^x(x_i, y_{j+1/2}, t).

#include <rmac/field.hpp>
#include <rmac/grid.hpp>

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace rmac {

using ScalarFn = std::function<double(double x, double y, double t)>;

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Nodes/weights by Newton iteration on the Legendre polynomial.
inline GaussRule gauss_legendre(int n) {
  require(n >= 1, "quadrature order must be >= 1");
  GaussRule r;
  r.nodes.resize(static_cast<size_t>(n));
  r.weights.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int m = 2; m <= n; ++m) {
      double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[static_cast<size_t>(n - 1 - k)] = x;
    r.weights[static_cast<size_t>(n - 1 - k)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

inline const GaussRule& cached_gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

inline double gauss_integrate(const GaussRule& r, double a, double b,
                              const std::function<double(double)>& f) {
  const double c = 0.5 * (a + b), s = 0.5 * (b - a);
  double acc = 0.0;
  for (size_t k = 0; k < r.nodes.size(); ++k)
    acc += r.weights[k] * f(c + s * r.nodes[k]);
  return acc * s;
}

enum class RhsMode { averaged, pointwise };

struct ForcingSpec {
  ScalarFn gx;
  ScalarFn gy;
  RhsMode mode = RhsMode::averaged;
  int quadrature_order = 6;
};

// Momentum loads on the velocity lattices; only the interior rows carry
// equations, boundary entries stay zero.
struct VelocityRhs {
  Field fx;  // XFace
  Field fy;  // YFace
};

inline VelocityRhs make_rhs(const StaggeredGrid2D& g) {
  return {make_field(g, Lattice::XFace), make_field(g, Lattice::YFace)};
}

inline void rhs_axpy(VelocityRhs& r, double alpha, const VelocityRhs& s) {
  for (size_t k = 0; k < r.fx.a.data().size(); ++k)
    r.fx.a.data()[k] += alpha * s.fx.a.data()[k];
  for (size_t k = 0; k < r.fy.a.data().size(); ++k)
    r.fy.a.data()[k] += alpha * s.fy.a.data()[k];
}

inline VelocityRhs assemble_rhs(const ForcingSpec& spec, const StaggeredGrid2D& g,
                                double t) {
  require(static_cast<bool>(spec.gx) && static_cast<bool>(spec.gy),
          "assemble_rhs: forcing functions not set");
  VelocityRhs out = make_rhs(g);
  if (spec.mode == RhsMode::pointwise) {
    for (int i = 1; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        out.fx(i, j) = spec.gx(g.x.node(i), g.y.mid(j), t);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 1; j < g.ny(); ++j)
        out.fy(i, j) = spec.gy(g.x.mid(i), g.y.node(j), t);
    return out;
  }
  const GaussRule& rule = cached_gauss_rule(spec.quadrature_order);
  for (int i = 1; i < g.nx(); ++i) {
    const double xl = g.x.mid(i - 1), xc = g.x.node(i), xr = g.x.mid(i);
    for (int j = 0; j < g.ny(); ++j) {
      const double y = g.y.mid(j);
      auto f = [&](double x) { return spec.gx(x, y, t); };
      out.fx(i, j) =
          (gauss_integrate(rule, xl, xc, f) + gauss_integrate(rule, xc, xr, f)) /
          g.x.hnode(i);
    }
  }
  for (int j = 1; j < g.ny(); ++j) {
    const double yl = g.y.mid(j - 1), yc = g.y.node(j), yr = g.y.mid(j);
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.x.mid(i);
      auto f = [&](double y) { return spec.gy(x, y, t); };
      out.fy(i, j) =
          (gauss_integrate(rule, yl, yc, f) + gauss_integrate(rule, yc, yr, f)) /
          g.y.hnode(j);
    }
  }
  return out;
}

// Averaged right-hand side of a gradient field grad(phi).  The line average
// of d(phi)/dx over [x_{i-1/2}, x_{i+1/2}] is exactly the difference of the
// cell-midpoint values divided by h_i, so no quadrature is involved.
inline VelocityRhs gradient_perturbation(const ScalarFn& phi, const StaggeredGrid2D& g,
                                         double t) {
  VelocityRhs out = make_rhs(g);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      out.fx(i, j) =
          (phi(g.x.mid(i), g.y.mid(j), t) - phi(g.x.mid(i - 1), g.y.mid(j), t)) /
          g.x.hnode(i);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j)
      out.fy(i, j) =
          (phi(g.x.mid(i), g.y.mid(j), t) - phi(g.x.mid(i), g.y.mid(j - 1), t)) /
          g.y.hnode(j);
  return out;
}

}  // namespace rmac
