#pragma once

// Manufactured solutions with analytically derived forcing
//   g = du/dt - mu*Lap(u) + grad(p) (+ (u.grad)u for Navier-Stokes),
// used to measure exact errors of the discrete schemes.

#include <rmac/field.hpp>
#include <rmac/forcing.hpp>
#include <rmac/grid.hpp>

#include <cmath>
#include <random>
#include <string>

namespace rmac {

enum class Model { stokes, navier_stokes };

struct ManufacturedCase {
  std::string name;
  Model model = Model::stokes;
  double lambda = 1.0;
  double mu = 1.0;

  ScalarFn ux, uy, p;
  ScalarFn gx, gy;
  ScalarFn div_u;  // analytic divergence, used by the construction check

  ForcingSpec forcing(RhsMode mode, int quadrature_order = 6) const {
    return {gx, gy, mode, quadrature_order};
  }

  Velocity sample_velocity(const StaggeredGrid2D& g, double t) const {
    Velocity w = make_velocity(g);
    for (int i = 0; i <= g.nx(); ++i) {
      for (int j = 0; j < g.ny(); ++j) w.x.face(i, j) = ux(g.x.node(i), g.y.mid(j), t);
      w.x.wall_bottom[static_cast<size_t>(i)] = ux(g.x.node(i), 0.0, t);
      w.x.wall_top[static_cast<size_t>(i)] = ux(g.x.node(i), g.ly(), t);
    }
    for (int j = 0; j <= g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) w.y.face(i, j) = uy(g.x.mid(i), g.y.node(j), t);
      w.y.wall_left[static_cast<size_t>(j)] = uy(0.0, g.y.node(j), t);
      w.y.wall_right[static_cast<size_t>(j)] = uy(g.lx(), g.y.node(j), t);
    }
    return w;
  }

  Pressure sample_pressure(const StaggeredGrid2D& g, double t) const {
    Pressure z = make_pressure(g);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) z.cells(i, j) = p(g.x.mid(i), g.y.mid(j), t);
    return z;
  }
};

namespace detail {

inline void check_solenoidal(const ManufacturedCase& c) {
  std::mt19937_64 rng(0x5eedull);
  for (int k = 0; k < 100; ++k) {
    const double x = unit_draw(rng), y = unit_draw(rng), t = unit_draw(rng);
    require(std::abs(c.div_u(x, y, t)) <= 1e-12,
            c.name + ": exact velocity is not divergence-free");
  }
}

}  // namespace detail

// Trigonometric Stokes case on the unit square:
//   u^x =  pi e^t sin^2(pi x) sin(2 pi y)
//   u^y = -pi e^t sin(2 pi x) sin^2(pi y)
//   p   = lambda e^t sin^3(4 pi x) sin^3(4 pi y)
inline ManufacturedCase example1(double lambda = 1.0, double mu = 1.0,
                                 Model model = Model::stokes) {
  const double pi = M_PI;
  ManufacturedCase c;
  c.name = "example1";
  c.model = model;
  c.lambda = lambda;
  c.mu = mu;

  auto sq = [](double v) { return v * v; };
  auto ux = [=](double x, double y, double t) {
    return pi * std::exp(t) * sq(std::sin(pi * x)) * std::sin(2 * pi * y);
  };
  auto uy = [=](double x, double y, double t) {
    return -pi * std::exp(t) * std::sin(2 * pi * x) * sq(std::sin(pi * y));
  };
  auto pr = [=](double x, double y, double t) {
    auto cb = [](double v) { return v * v * v; };
    return lambda * std::exp(t) * cb(std::sin(4 * pi * x)) * cb(std::sin(4 * pi * y));
  };

  auto ux_x = [=](double x, double y, double t) {
    return pi * pi * std::exp(t) * std::sin(2 * pi * x) * std::sin(2 * pi * y);
  };
  auto ux_y = [=](double x, double y, double t) {
    return 2 * pi * pi * std::exp(t) * sq(std::sin(pi * x)) * std::cos(2 * pi * y);
  };
  auto uy_x = [=](double x, double y, double t) {
    return -2 * pi * pi * std::exp(t) * std::cos(2 * pi * x) * sq(std::sin(pi * y));
  };
  auto uy_y = [=](double x, double y, double t) {
    return -pi * pi * std::exp(t) * std::sin(2 * pi * x) * std::sin(2 * pi * y);
  };
  auto lap_ux = [=](double x, double y, double t) {
    return 2 * pi * pi * pi * std::exp(t) * std::cos(2 * pi * x) * std::sin(2 * pi * y) -
           4 * pi * pi * pi * std::exp(t) * sq(std::sin(pi * x)) * std::sin(2 * pi * y);
  };
  auto lap_uy = [=](double x, double y, double t) {
    return 4 * pi * pi * pi * std::exp(t) * std::sin(2 * pi * x) * sq(std::sin(pi * y)) -
           2 * pi * pi * pi * std::exp(t) * std::sin(2 * pi * x) * std::cos(2 * pi * y);
  };
  auto p_x = [=](double x, double y, double t) {
    auto cb = [](double v) { return v * v * v; };
    return lambda * std::exp(t) * 12 * pi * sq(std::sin(4 * pi * x)) *
           std::cos(4 * pi * x) * cb(std::sin(4 * pi * y));
  };
  auto p_y = [=](double x, double y, double t) {
    auto cb = [](double v) { return v * v * v; };
    return lambda * std::exp(t) * cb(std::sin(4 * pi * x)) * 12 * pi *
           sq(std::sin(4 * pi * y)) * std::cos(4 * pi * y);
  };

  const bool convective = (model == Model::navier_stokes);
  c.ux = ux;
  c.uy = uy;
  c.p = pr;
  c.gx = [=](double x, double y, double t) {
    double g = ux(x, y, t) - mu * lap_ux(x, y, t) + p_x(x, y, t);
    if (convective) g += ux(x, y, t) * ux_x(x, y, t) + uy(x, y, t) * ux_y(x, y, t);
    return g;
  };
  c.gy = [=](double x, double y, double t) {
    double g = uy(x, y, t) - mu * lap_uy(x, y, t) + p_y(x, y, t);
    if (convective) g += ux(x, y, t) * uy_x(x, y, t) + uy(x, y, t) * uy_y(x, y, t);
    return g;
  };
  c.div_u = [=](double x, double y, double t) {
    return ux_x(x, y, t) + uy_y(x, y, t);
  };
  detail::check_solenoidal(c);
  return c;
}

// Polynomial Navier-Stokes case on the unit square:
//   u^x = -256 t A(x) B(y),  u^y = 256 t A(y) B(x)
//   with A(s) = s^2 (s-1)^2, B(s) = s (s-1) (2s-1) = A'(s)/2,
//   p = 10 lambda e^t ((x-1/2)^3 y^2 + (1-x)^3 (y-1/2)^3).
inline ManufacturedCase example2(double lambda = 1.0, double mu = 1.0,
                                 Model model = Model::navier_stokes) {
  ManufacturedCase c;
  c.name = "example2";
  c.model = model;
  c.lambda = lambda;
  c.mu = mu;

  auto A = [](double s) { return s * s * (s - 1) * (s - 1); };
  auto B = [](double s) { return s * (s - 1) * (2 * s - 1); };
  auto Bp = [](double s) { return 6 * s * s - 6 * s + 1; };
  auto App = [&Bp](double s) { return 2 * Bp(s); };
  auto Bpp = [](double s) { return 12 * s - 6; };

  auto ux = [=](double x, double y, double t) { return -256 * t * A(x) * B(y); };
  auto uy = [=](double x, double y, double t) { return 256 * t * A(y) * B(x); };
  auto pr = [=](double x, double y, double t) {
    auto cb = [](double v) { return v * v * v; };
    return 10 * lambda * std::exp(t) *
           (cb(x - 0.5) * y * y + cb(1 - x) * cb(y - 0.5));
  };

  auto ux_t = [=](double x, double y, double) { return -256 * A(x) * B(y); };
  auto uy_t = [=](double x, double y, double) { return 256 * A(y) * B(x); };
  auto ux_x = [=](double x, double y, double t) { return -512 * t * B(x) * B(y); };
  auto ux_y = [=](double x, double y, double t) { return -256 * t * A(x) * Bp(y); };
  auto uy_x = [=](double x, double y, double t) { return 256 * t * A(y) * Bp(x); };
  auto uy_y = [=](double x, double y, double t) { return 512 * t * B(y) * B(x); };
  auto lap_ux = [=](double x, double y, double t) {
    return -256 * t * (App(x) * B(y) + A(x) * Bpp(y));
  };
  auto lap_uy = [=](double x, double y, double t) {
    return 256 * t * (App(y) * B(x) + A(y) * Bpp(x));
  };
  auto p_x = [=](double x, double y, double t) {
    auto sq = [](double v) { return v * v; };
    auto cb = [](double v) { return v * v * v; };
    return 10 * lambda * std::exp(t) *
           (3 * sq(x - 0.5) * y * y - 3 * sq(1 - x) * cb(y - 0.5));
  };
  auto p_y = [=](double x, double y, double t) {
    auto sq = [](double v) { return v * v; };
    auto cb = [](double v) { return v * v * v; };
    return 10 * lambda * std::exp(t) *
           (2 * cb(x - 0.5) * y + 3 * cb(1 - x) * sq(y - 0.5));
  };

  const bool convective = (model == Model::navier_stokes);
  c.ux = ux;
  c.uy = uy;
  c.p = pr;
  c.gx = [=](double x, double y, double t) {
    double g = ux_t(x, y, t) - mu * lap_ux(x, y, t) + p_x(x, y, t);
    if (convective) g += ux(x, y, t) * ux_x(x, y, t) + uy(x, y, t) * ux_y(x, y, t);
    return g;
  };
  c.gy = [=](double x, double y, double t) {
    double g = uy_t(x, y, t) - mu * lap_uy(x, y, t) + p_y(x, y, t);
    if (convective) g += ux(x, y, t) * uy_x(x, y, t) + uy(x, y, t) * uy_y(x, y, t);
    return g;
  };
  c.div_u = [=](double x, double y, double t) {
    return ux_x(x, y, t) + uy_y(x, y, t);
  };
  detail::check_solenoidal(c);
  return c;
}

inline ManufacturedCase make_case(const std::string& name, double lambda, double mu,
                                  Model model) {
  if (name == "example1") return example1(lambda, mu, model);
  if (name == "example2") return example2(lambda, mu, model);
  throw std::invalid_argument("unknown case: " + name);
}

}  // namespace rmac
