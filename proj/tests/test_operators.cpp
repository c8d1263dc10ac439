#include <catch2/catch_amalgamated.hpp>

#include <rmac/operators.hpp>

#include <random>

using namespace rmac;
using Catch::Approx;

namespace {

std::mt19937_64 rng(2024);

double draw() { return 2.0 * detail::unit_draw(rng) - 1.0; }

Field random_field(const StaggeredGrid2D& g, Lattice l) {
  Field f = make_field(g, l);
  for (double& v : f.a.data()) v = draw();
  return f;
}

Field sample(const StaggeredGrid2D& g, Lattice l, double (*fn)(double, double)) {
  Field f = make_field(g, l);
  for (int i = 0; i < f.a.nx(); ++i)
    for (int j = 0; j < f.a.ny(); ++j) {
      double x = (l == Lattice::Cell || l == Lattice::YFace) ? g.x.mid(i) : g.x.node(i);
      double y = (l == Lattice::Cell || l == Lattice::XFace) ? g.y.mid(j) : g.y.node(j);
      f(i, j) = fn(x, y);
    }
  return f;
}

}  // namespace

TEST_CASE("d_x is the exact difference quotient", "[operators]") {
  auto g = build_random_nonuniform(7, 5, 1.0, 1.0, 1.8, 9);
  Field f = sample(g, Lattice::XFace, [](double x, double) { return x; });
  Field d = d_x(g, f);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) REQUIRE(d(i, j) == Approx(1.0).margin(1e-13));
}

TEST_CASE("d_x of x^2 over one cell", "[operators]") {
  auto g = StaggeredGrid2D{make_axis({0.0, 0.3, 0.6, 1.0}), make_axis({0.0, 0.5, 1.0})};
  Field f = sample(g, Lattice::XFace, [](double x, double) { return x * x; });
  Field d = d_x(g, f);
  // (0.3^2 - 0^2)/0.3 = 0.3
  REQUIRE(d(0, 0) == Approx(0.3).margin(1e-15));
}

TEST_CASE("D_x composed with d_x gives the three-point second difference",
          "[operators]") {
  auto g = build_random_nonuniform(5, 5, 1.0, 1.0, 1.6, 21);
  Field f = random_field(g, Lattice::XFace);
  Field inner = d_x(g, f);
  Field composed = D_x(g, inner);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double expect = (inner(i, j) - inner(i - 1, j)) / g.x.hnode(i);
      REQUIRE(composed(i, j) == Approx(expect).margin(1e-13));
    }
}

TEST_CASE("d_t", "[operators]") {
  auto g = build_uniform(4, 4);
  Field a = random_field(g, Lattice::Cell);

  Field zero = d_t(a, a, 0.1);
  for (double v : zero.a.data()) REQUIRE(v == 0.0);

  Field b = a;
  const double c = 1.7, dt = 0.1;
  for (double& v : b.a.data()) v += dt * c;
  Field rate = d_t(b, a, dt);
  for (double v : rate.a.data()) REQUIRE(v == Approx(c).margin(1e-12));

  Field r = random_field(g, Lattice::Cell);
  Field dr = d_t(r, a, dt);
  for (size_t k = 0; k < dr.a.data().size(); ++k)
    REQUIRE(dr.a.data()[k] == Approx((r.a.data()[k] - a.a.data()[k]) / dt));

  REQUIRE_THROWS_AS(d_t(a, b, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(d_t(a, random_field(g, Lattice::Corner), 0.1),
                    std::invalid_argument);
}

TEST_CASE("divergence of sampled linear solenoidal field vanishes", "[operators]") {
  auto g = build_random_nonuniform(6, 9, 1.0, 1.0, 1.5, 4);
  Velocity w = make_velocity(g);
  for (int i = 0; i <= g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) w.x.face(i, j) = g.x.node(i);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j <= g.ny(); ++j) w.y.face(i, j) = -g.y.node(j);
  Field div = divergence(g, w);
  for (double v : div.a.data()) REQUIRE(v == Approx(0.0).margin(1e-14));

  Field z = divergence(g, make_velocity(g));
  for (double v : z.a.data()) REQUIRE(v == 0.0);
}

TEST_CASE("interpolations are exact on linears and constants", "[operators]") {
  auto g = build_random_nonuniform(7, 6, 1.0, 1.0, 1.9, 17);
  Field lin = sample(g, Lattice::XFace, [](double x, double) { return x; });
  Field to_cell = interp_x(g, lin);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      REQUIRE(to_cell(i, j) == Approx(g.x.mid(i)).margin(1e-14));

  Field cell_lin = sample(g, Lattice::Cell, [](double x, double) { return x; });
  Field to_node = interp_x(g, cell_lin);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      REQUIRE(to_node(i, j) == Approx(g.x.node(i)).margin(1e-14));

  Field cst = make_field(g, Lattice::Cell, 3.25);
  Field cst_i = interp_y(g, cst);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j) REQUIRE(cst_i(i, j) == Approx(3.25).margin(1e-14));
}

TEST_CASE("half-to-node interpolation weights on a non-uniform axis", "[operators]") {
  // axis {0, .2, .5, 1}: midpoints .1, .35, .75; x^2 there is .01, .1225, .5625.
  // Linear interpolation at x_1 = 0.2:
  //   (h_{1/2} f_{3/2} + h_{3/2} f_{1/2}) / (2 h_1)
  //   = (0.2*0.1225 + 0.3*0.01) / 0.5 = 0.055
  auto g = StaggeredGrid2D{make_axis({0.0, 0.2, 0.5, 1.0}), make_axis({0.0, 0.5, 1.0})};
  Field f = sample(g, Lattice::Cell, [](double x, double) { return x * x; });
  Field out = interp_x(g, f);
  REQUIRE(out(1, 0) == Approx(0.055).margin(1e-15));
}

TEST_CASE("interpolation reduces to arithmetic mean on uniform grids", "[operators]") {
  auto g = build_uniform(6, 6);
  Field f = random_field(g, Lattice::Cell);
  Field n = interp_x(g, f);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      REQUIRE(n(i, j) == Approx(0.5 * (f(i - 1, j) + f(i, j))).margin(1e-14));
}

TEST_CASE("lattice mismatch is a usage error", "[operators]") {
  auto g = build_uniform(4, 4);
  Field cell = make_field(g, Lattice::Cell);
  REQUIRE_THROWS_AS(d_x(g, cell), std::invalid_argument);
  Field corner = make_field(g, Lattice::Corner);
  REQUIRE_THROWS_AS(D_x(g, corner), std::invalid_argument);
  REQUIRE_THROWS_AS(ip_l2M(g, cell, corner), std::invalid_argument);
}

TEST_CASE("norm of a constant equals the constant on the unit square", "[norms]") {
  auto g = build_random_nonuniform(8, 5, 1.0, 1.0, 1.5, 2);
  Field f = make_field(g, Lattice::Cell, 2.0);
  REQUIRE(norm_l2M(g, f) == Approx(2.0).epsilon(1e-13));
}

TEST_CASE("inner product symmetry and bilinearity", "[norms]") {
  auto g = build_random_nonuniform(6, 6, 1.0, 1.0, 1.5, 8);
  Field f = random_field(g, Lattice::Cell);
  Field q = random_field(g, Lattice::Cell);
  Field r = random_field(g, Lattice::Cell);
  REQUIRE(ip_l2M(g, f, q) == Approx(ip_l2M(g, q, f)).margin(1e-14));
  Field combo = make_field(g, Lattice::Cell);
  const double a = 0.7, b = -1.3;
  for (size_t k = 0; k < combo.a.data().size(); ++k)
    combo.a.data()[k] = a * f.a.data()[k] + b * q.a.data()[k];
  REQUIRE(ip_l2M(g, combo, r) ==
          Approx(a * ip_l2M(g, f, r) + b * ip_l2M(g, q, r)).margin(1e-13));
}

TEST_CASE("summation by parts in both directions", "[norms]") {
  auto g = build_random_nonuniform(7, 6, 1.0, 1.0, 1.7, 15);

  Field q = random_field(g, Lattice::Cell);
  Field vx = random_field(g, Lattice::XFace);
  for (int j = 0; j < g.ny(); ++j) vx(0, j) = vx(g.nx(), j) = 0.0;
  const double lhs_x = ip_l2TM(g, D_x(g, q), vx);
  const double rhs_x = -ip_l2M(g, q, d_x(g, vx));
  REQUIRE(lhs_x == Approx(rhs_x).epsilon(1e-13).margin(1e-13));

  Field vy = random_field(g, Lattice::YFace);
  for (int i = 0; i < g.nx(); ++i) vy(i, 0) = vy(i, g.ny()) = 0.0;
  const double lhs_y = ip_l2MT(g, D_y(g, q), vy);
  const double rhs_y = -ip_l2M(g, q, d_y(g, vy));
  REQUIRE(lhs_y == Approx(rhs_y).epsilon(1e-13).margin(1e-13));
}

TEST_CASE("velocity norms: homogeneity and triangle inequality", "[norms]") {
  auto g = build_random_nonuniform(6, 7, 1.0, 1.0, 1.5, 12);
  auto random_velocity = [&g]() {
    Velocity w = make_velocity(g);
    for (double& v : w.x.face.a.data()) v = draw();
    for (double& v : w.y.face.a.data()) v = draw();
    return w;
  };
  Velocity a = random_velocity();
  Velocity b = random_velocity();
  const double s = -2.75;
  Velocity sa = a;
  for (double& v : sa.x.face.a.data()) v *= s;
  for (double& v : sa.y.face.a.data()) v *= s;
  REQUIRE(norm_vel_l2(g, sa) == Approx(std::abs(s) * norm_vel_l2(g, a)).epsilon(1e-13));
  REQUIRE(norm_grad(g, sa) == Approx(std::abs(s) * norm_grad(g, a)).epsilon(1e-13));

  Velocity sum = a;
  velocity_axpy(sum, 1.0, b);
  REQUIRE(norm_vel_l2(g, sum) <=
          norm_vel_l2(g, a) + norm_vel_l2(g, b) + 1e-13);
  REQUIRE(norm_grad(g, sum) <= norm_grad(g, a) + norm_grad(g, b) + 1e-13);
}

TEST_CASE("zero-mean projection", "[norms]") {
  auto g = build_random_nonuniform(5, 9, 1.0, 1.0, 1.5, 33);
  Field f = random_field(g, Lattice::Cell);
  Field p = project_zero_mean(g, f);
  REQUIRE(std::abs(cell_mean(g, p)) <= 1e-13);
}
