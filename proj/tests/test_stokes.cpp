#include <catch2/catch_amalgamated.hpp>

#include <rmac/diagnostics.hpp>
#include <rmac/manufactured.hpp>
#include <rmac/stokes.hpp>

#include "test_util.hpp"

using namespace rmac;
using Catch::Approx;

namespace {

SaddleSystem assemble_zero(const StaggeredGrid2D& g, const StepperConfig& c) {
  Velocity w0 = make_velocity(g);
  VelocityRhs f0 = make_rhs(g);
  return assemble(g, c, w0, f0);
}

}  // namespace

TEST_CASE("system dimensions", "[stokes][assembly]") {
  auto g = build_uniform(5, 3);
  StepperConfig c;
  auto s = assemble_zero(g, c);
  REQUIRE(s.dofs.size() == (5 - 1) * 3 + 5 * (3 - 1) + 5 * 3 + 1);
  REQUIRE(s.M.rows() == s.dofs.size());
  REQUIRE(s.M.cols() == s.dofs.size());
}

TEST_CASE("interior u^x diagonal on uniform 4x4 with mu=1, dt=1",
          "[stokes][assembly]") {
  auto g = build_uniform(4, 4);
  StepperConfig c;
  c.mu = 1.0;
  c.dt = 1.0;
  auto s = assemble_zero(g, c);
  // h k / dt + mu (2k/h + 2h/k) with h = k = 0.25
  const int row = s.dofs.ux(2, 1);
  REQUIRE(s.A.coeff(row, row) == Approx(0.0625 + 4.0).margin(1e-14));
}

TEST_CASE("velocity block is symmetric", "[stokes][assembly]") {
  auto g = build_random_nonuniform(5, 6, 1.0, 1.0, 1.7, 41);
  StepperConfig c;
  c.mu = 0.37;
  c.dt = 0.05;
  auto s = assemble_zero(g, c);
  SpMat diff = SpMat(s.A.transpose()) - s.A;
  double m = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SpMat::InnerIterator it(diff, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  REQUIRE(m <= 1e-13 * c.mu / 0.01);
}

TEST_CASE("divergence block equals the negative transpose of the gradient block",
          "[stokes][assembly]") {
  auto g = build_random_nonuniform(6, 4, 1.0, 1.0, 1.5, 43);
  StepperConfig c;
  auto s = assemble_zero(g, c);
  SpMat diff = SpMat(s.G.transpose()) + s.B;
  REQUIRE(diff.nonZeros() >= 0);
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SpMat::InnerIterator it(diff, k); it; ++it) REQUIRE(it.value() == 0.0);
  // composed matrix symmetric exactly
  SpMat mdiff = SpMat(s.M.transpose()) - s.M;
  for (int k = 0; k < mdiff.outerSize(); ++k)
    for (SpMat::InnerIterator it(mdiff, k); it; ++it) REQUIRE(it.value() == 0.0);
}

TEST_CASE("divergence rows reproduce the volume-weighted discrete divergence",
          "[stokes][assembly]") {
  auto g = build_random_nonuniform(5, 5, 1.0, 1.0, 1.5, 47);
  StepperConfig c;
  auto s = assemble_zero(g, c);
  std::mt19937_64 rng(7);
  Velocity w = make_velocity(g);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      w.x.face(i, j) = 2.0 * detail::unit_draw(rng) - 1.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j)
      w.y.face(i, j) = 2.0 * detail::unit_draw(rng) - 1.0;
  Eigen::VectorXd xu = Eigen::VectorXd::Zero(s.dofs.n_ux + s.dofs.n_uy);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) xu[s.dofs.ux(i, j)] = w.x.face(i, j);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j) xu[s.dofs.uy(i, j)] = w.y.face(i, j);
  Eigen::VectorXd bv = s.B * xu;
  Field div = divergence(g, w);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double vol = g.x.hmid(i) * g.y.hmid(j);
      REQUIRE(bv[i * g.ny() + j] == Approx(vol * div(i, j)).margin(1e-14));
    }
}

TEST_CASE("zero rhs gives the zero solution", "[stokes][solve]") {
  auto g = build_uniform(4, 4);
  StepperConfig c;
  StokesStepper stepper(g, c);
  auto r = stepper.step(make_velocity(g), make_rhs(g));
  for (double v : r.w.x.face.a.data()) REQUIRE(v == 0.0);
  for (double v : r.w.y.face.a.data()) REQUIRE(v == 0.0);
  for (double v : r.z.cells.a.data()) REQUIRE(v == 0.0);
}

TEST_CASE("sparse step matches a dense elimination oracle", "[stokes][solve]") {
  for (auto [nx, ny] : {std::pair{4, 4}, std::pair{5, 3}}) {
    auto g = build_random_nonuniform(nx, ny, 1.0, 1.0, 1.5, 53);
    StepperConfig c;
    c.mu = 0.8;
    c.dt = 0.02;
    std::mt19937_64 rng(99);
    Velocity w_old = rmac_test::random_solenoidal(g, rng, 1, 0.5);
    VelocityRhs f = make_rhs(g);
    for (int i = 1; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        f.fx(i, j) = 2.0 * detail::unit_draw(rng) - 1.0;
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 1; j < g.ny(); ++j)
        f.fy(i, j) = 2.0 * detail::unit_draw(rng) - 1.0;

    auto s = assemble(g, c, w_old, f);
    const int n = s.dofs.size();
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (int k = 0; k < s.M.outerSize(); ++k)
      for (SpMat::InnerIterator it(s.M, k); it; ++it)
        dense[static_cast<size_t>(it.row())][static_cast<size_t>(it.col())] = it.value();
    std::vector<double> b(s.rhs.data(), s.rhs.data() + n);
    auto x_dense = rmac_test::dense_gauss_solve(dense, b);

    StokesStepper stepper(g, c);
    auto r = stepper.step(w_old, f);
    double max_diff = 0.0;
    for (int i = 1; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        max_diff = std::max(max_diff, std::abs(r.w.x.face(i, j) -
                                               x_dense[static_cast<size_t>(s.dofs.ux(i, j))]));
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 1; j < g.ny(); ++j)
        max_diff = std::max(max_diff, std::abs(r.w.y.face(i, j) -
                                               x_dense[static_cast<size_t>(s.dofs.uy(i, j))]));
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        max_diff = std::max(max_diff, std::abs(r.z.cells(i, j) -
                                               x_dense[static_cast<size_t>(s.dofs.p(i, j))]));
    REQUIRE(max_diff <= 1e-12);
  }
}

TEST_CASE("single step is discretely divergence-free and zero-mean",
          "[stokes][solve]") {
  auto g = build_uniform(8, 8);
  StepperConfig c;
  c.dt = 1.0 / 64.0;
  auto cs = example1(1.0, 1.0);
  VelocityRhs f = assemble_rhs(cs.forcing(RhsMode::averaged), g, c.dt);
  StokesStepper stepper(g, c);
  auto r = stepper.step(cs.sample_velocity(g, 0.0), f);
  const double scale = std::max(1.0, norm_vel_l2(g, r.w));
  REQUIRE(max_divergence(g, r.w) <= 10.0 * c.solver_tol * scale);
  REQUIRE(std::abs(cell_mean(g, r.z.cells)) <= 10.0 * c.solver_tol);
}

TEST_CASE("zero forcing keeps the zero state", "[stokes][run]") {
  auto g = build_uniform(6, 6);
  StepperConfig c;
  c.dt = 0.25;
  ForcingSpec zero{[](double, double, double) { return 0.0; },
                   [](double, double, double) { return 0.0; }};
  auto res = run_stokes(g, c, zero, 1.0);
  REQUIRE(res.steps == 4);
  REQUIRE(norm_vel_l2(g, res.w) == 0.0);
  REQUIRE(norm_l2M(g, res.z.cells) == 0.0);
}

TEST_CASE("gradient forcing moves only the pressure", "[stokes][run]") {
  auto g = build_random_nonuniform(10, 10, 1.0, 1.0, 1.5, 61);
  StepperConfig c;
  c.dt = 0.1;
  auto phi = [](double x, double y, double) {
    auto cb = [](double v) { return v * v * v; };
    return cb(std::sin(4.0 * M_PI * x)) * cb(std::sin(4.0 * M_PI * y));
  };
  auto phi_x = [](double x, double y, double) {
    auto sq = [](double v) { return v * v; };
    auto cb = [](double v) { return v * v * v; };
    return 12.0 * M_PI * sq(std::sin(4 * M_PI * x)) * std::cos(4 * M_PI * x) *
           cb(std::sin(4 * M_PI * y));
  };
  auto phi_y = [phi_x](double x, double y, double t) { return phi_x(y, x, t); };
  ForcingSpec grad{phi_x, phi_y, RhsMode::averaged, 8};

  Field phi_cells = make_field(g, Lattice::Cell);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) phi_cells(i, j) = phi(g.x.mid(i), g.y.mid(j), 0.0);
  Field ph_phi = project_zero_mean(g, phi_cells);

  auto res = run_stokes(
      g, c, grad, 0.5,
      [&](int, double, const Velocity& w, const Pressure& z, const SolveReport&) {
        REQUIRE(norm_vel_l2(g, w) <= 10.0 * c.solver_tol);
        for (int i = 0; i < g.nx(); ++i)
          for (int j = 0; j < g.ny(); ++j)
            REQUIRE(z.cells(i, j) == Approx(ph_phi(i, j)).margin(1e-9));
      });
  REQUIRE(res.steps == 5);
}

TEST_CASE("unconditional energy dissipation with zero forcing", "[stokes][run]") {
  auto g = build_random_nonuniform(10, 10, 1.0, 1.0, 1.5, 71);
  std::mt19937_64 rng(5);
  Velocity w0 = rmac_test::random_solenoidal(g, rng, 1);
  for (double dt : {0.1, 1.0}) {
    StepperConfig c;
    c.dt = dt;
    StokesStepper stepper(g, c);
    Velocity w = w0;
    double e_prev = kinetic_energy(g, w);
    for (int n = 0; n < 5; ++n) {
      auto r = stepper.step(w, make_rhs(g));
      w = r.w;
      const double e = kinetic_energy(g, w);
      const double dn = norm_grad(g, w);
      const double scale = std::max(1.0, norm_vel_l2(g, w));
      REQUIRE(e <= e_prev - dt * c.mu * dn * dn + 10.0 * c.solver_tol * scale);
      e_prev = e;
    }
  }
}

TEST_CASE("one factorization reused across steps is bit-identical to refactorizing",
          "[stokes][run]") {
  auto g = build_uniform(6, 6);
  StepperConfig c;
  c.dt = 0.05;
  auto cs = example1(1.0, 1.0);
  ForcingSpec forcing = cs.forcing(RhsMode::averaged);

  StokesStepper reused(g, c);
  Velocity wa = make_velocity(g);
  for (int n = 1; n <= 3; ++n)
    wa = reused.step(wa, assemble_rhs(forcing, g, n * c.dt)).w;

  Velocity wb = make_velocity(g);
  for (int n = 1; n <= 3; ++n) {
    StokesStepper fresh(g, c);
    wb = fresh.step(wb, assemble_rhs(forcing, g, n * c.dt)).w;
  }
  REQUIRE(wa.x.face.a.data() == wb.x.face.a.data());
  REQUIRE(wa.y.face.a.data() == wb.y.face.a.data());
}

TEST_CASE("minres fallback agrees with the direct solver", "[stokes][solve]") {
  auto g = build_uniform(5, 5);
  StepperConfig direct;
  direct.dt = 0.1;
  StepperConfig iterative = direct;
  iterative.linear_solver = LinearSolverKind::minres;
  iterative.solver_tol = 1e-9;
  auto cs = example1(1.0, 1.0);
  VelocityRhs f = assemble_rhs(cs.forcing(RhsMode::averaged), g, direct.dt);
  Velocity w0 = cs.sample_velocity(g, 0.0);
  auto ra = StokesStepper(g, direct).step(w0, f);
  auto rb = StokesStepper(g, iterative).step(w0, f);
  Velocity diff = ra.w;
  velocity_axpy(diff, -1.0, rb.w);
  REQUIRE(norm_vel_l2(g, diff) <= 1e-6);
  REQUIRE(rb.report.iterations > 0);
}
