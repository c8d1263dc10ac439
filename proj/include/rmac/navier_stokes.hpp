#pragma once

// Fully implicit reconstructed scheme for the Navier-Stokes equations:
// the Stokes saddle system plus the skew-structured convective term
//
//   alpha^x = 1/2 [ W^x D_x(P^x W^x) + P^x d_x((W^x)^2)
//                   + P^y(P^x W^y . D_y W^x) + d_y(P^y W^x . P^x W^y) ]
//   alpha^y = 1/2 [ W^y D_y(P^y W^y) + P^y d_y((W^y)^2)
//                   + P^x(P^y W^x . D_x W^y) + d_x(P^y W^x . P^x W^y) ]
//
// solved per step by Picard iteration with the convective term lagged into
// the right-hand side, so the constant Stokes factorization is reused.

#include <rmac/operators.hpp>
#include <rmac/stokes.hpp>

#include <vector>

namespace rmac {

struct NonlinearConfig {
  double picard_tol = 1e-10;
  int max_iters = 50;
  double relaxation = 1.0;

  void validate(const StepperConfig& c) const {
    require(picard_tol >= c.solver_tol, "picard_tol must be >= solver_tol");
    require(max_iters >= 1, "max_iters must be >= 1");
    require(relaxation > 0.0 && relaxation <= 1.0, "relaxation must be in (0,1]");
  }
};

// Convective term on the momentum lattices (interior rows, boundary zero).
inline VelocityRhs nonlinear_term(const StaggeredGrid2D& g, const Velocity& w) {
  check_lattice(w.x.face, Lattice::XFace, "nonlinear_term");
  check_lattice(w.y.face, Lattice::YFace, "nonlinear_term");
  VelocityRhs alpha = make_rhs(g);

  // shared corner interpolants
  Field px_wy = interp_x_corner(g, w.y);   // P^x W^y
  Field py_wx = interp_y_corner(g, w.x);   // P^y W^x
  Field cross = make_field(g, Lattice::Corner);
  for (int i = 0; i <= g.nx(); ++i)
    for (int j = 0; j <= g.ny(); ++j) cross(i, j) = py_wx(i, j) * px_wy(i, j);

  {  // x component
    Field px_wx = interp_x(g, w.x.face);           // Cell
    Field dpx = D_x(g, px_wx);                     // XFace interior
    Field wx_sq = w.x.face;
    for (double& v : wx_sq.a.data()) v *= v;
    Field px_dsq = interp_x(g, d_x(g, wx_sq));     // XFace interior
    Field dy_wx = D_y_corner(g, w.x);              // Corner
    Field adv = make_field(g, Lattice::Corner);
    for (int i = 0; i <= g.nx(); ++i)
      for (int j = 0; j <= g.ny(); ++j) adv(i, j) = px_wy(i, j) * dy_wx(i, j);
    Field py_adv = interp_y(g, adv);               // XFace
    Field dy_cross = d_y(g, cross);                // XFace
    for (int i = 1; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        alpha.fx(i, j) = 0.5 * (w.x.face(i, j) * dpx(i, j) + px_dsq(i, j) +
                                py_adv(i, j) + dy_cross(i, j));
  }
  {  // y component
    Field py_wy = interp_y(g, w.y.face);           // Cell
    Field dpy = D_y(g, py_wy);                     // YFace interior
    Field wy_sq = w.y.face;
    for (double& v : wy_sq.a.data()) v *= v;
    Field py_dsq = interp_y(g, d_y(g, wy_sq));     // YFace interior
    Field dx_wy = D_x_corner(g, w.y);              // Corner
    Field adv = make_field(g, Lattice::Corner);
    for (int i = 0; i <= g.nx(); ++i)
      for (int j = 0; j <= g.ny(); ++j) adv(i, j) = py_wx(i, j) * dx_wy(i, j);
    Field px_adv = interp_x(g, adv);               // YFace
    Field dx_cross = d_x(g, cross);                // YFace
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 1; j < g.ny(); ++j)
        alpha.fy(i, j) = 0.5 * (w.y.face(i, j) * dpy(i, j) + py_dsq(i, j) +
                                px_adv(i, j) + dx_cross(i, j));
  }
  return alpha;
}

struct NsStepReport {
  SolveReport linear;
  int picard_iters = 0;
  double final_update = 0.0;
  double nonlinear_residual = 0.0;
};

class NsStepper {
 public:
  NsStepper(const StaggeredGrid2D& grid, const StepperConfig& config,
            const NonlinearConfig& nl, bool include_convection = true)
      : stepper_(grid, config), nl_(nl), convective_(include_convection) {
    nl_.validate(config);
  }

  const StaggeredGrid2D& grid() const { return stepper_.grid(); }
  const StokesStepper& inner() const { return stepper_; }

  std::tuple<Velocity, Pressure, NsStepReport> step(const Velocity& w_old,
                                                    const VelocityRhs& f) {
    const StaggeredGrid2D& g = stepper_.grid();
    NsStepReport report;
    if (!convective_) {
      StepResult lin = stepper_.step(w_old, f);
      report.linear = lin.report;
      report.picard_iters = 1;
      return {std::move(lin.w), std::move(lin.z), report};
    }
    Velocity w = w_old;
    Pressure z = make_pressure(g);
    std::vector<double> history;
    for (int it = 1; it <= nl_.max_iters; ++it) {
      VelocityRhs eff = f;
      rhs_axpy(eff, -1.0, nonlinear_term(g, w));
      StepResult lin = stepper_.step(w_old, eff);
      Velocity w_next = lin.w;
      if (nl_.relaxation != 1.0) {
        for (size_t k = 0; k < w_next.x.face.a.data().size(); ++k)
          w_next.x.face.a.data()[k] = (1.0 - nl_.relaxation) * w.x.face.a.data()[k] +
                                      nl_.relaxation * lin.w.x.face.a.data()[k];
        for (size_t k = 0; k < w_next.y.face.a.data().size(); ++k)
          w_next.y.face.a.data()[k] = (1.0 - nl_.relaxation) * w.y.face.a.data()[k] +
                                      nl_.relaxation * lin.w.y.face.a.data()[k];
      }
      Velocity diff = w_next;
      velocity_axpy(diff, -1.0, w);
      const double scale = std::max(1.0, norm_vel_l2(g, w_next));
      const double update = norm_vel_l2(g, diff) / scale;
      history.push_back(update);
      w = std::move(w_next);
      z = std::move(lin.z);
      report.linear = lin.report;
      report.picard_iters = it;
      report.final_update = update;
      if (update <= nl_.picard_tol) {
        report.nonlinear_residual = nonlinear_residual(w_old, f, w, z);
        if (report.nonlinear_residual <= 10.0 * nl_.picard_tol * scale) {
          return {std::move(w), std::move(z), report};
        }
      }
    }
    throw SolverError("picard iteration did not converge within max_iters", history);
  }

  // Residual of the fully implicit momentum/divergence system at (w, z),
  // measured in the unweighted vector norm of the assembled rows.
  double nonlinear_residual(const Velocity& w_old, const VelocityRhs& f,
                            const Velocity& w, const Pressure& z) const {
    const StaggeredGrid2D& g = stepper_.grid();
    const SaddleSystem& s = stepper_.system();
    VelocityRhs eff = f;
    rhs_axpy(eff, -1.0, nonlinear_term(g, w));
    Eigen::VectorXd rhs = saddle_rhs(g, stepper_.config(), s.dofs, w_old, eff);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(s.dofs.size());
    for (int i = 1; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) x[s.dofs.ux(i, j)] = w.x.face(i, j);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 1; j < g.ny(); ++j) x[s.dofs.uy(i, j)] = w.y.face(i, j);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) x[s.dofs.p(i, j)] = z.cells(i, j);
    return (s.M * x - rhs).norm();
  }

 private:
  StokesStepper stepper_;
  NonlinearConfig nl_;
  bool convective_;
};

using NsStepObserver = std::function<void(int, double, const Velocity&, const Pressure&,
                                          const NsStepReport&)>;

inline RunResult run_navier_stokes(const StaggeredGrid2D& g, const StepperConfig& c,
                                   const NonlinearConfig& nl, const ForcingSpec& forcing,
                                   double t_final, const NsStepObserver& observer = {},
                                   const Velocity* initial = nullptr) {
  const double steps_real = t_final / c.dt;
  const int n_steps = static_cast<int>(std::lround(steps_real));
  require(n_steps >= 1 && std::abs(steps_real - n_steps) < 1e-8,
          "run: T must be a positive integer multiple of dt");
  NsStepper stepper(g, c, nl);
  RunResult res;
  res.w = initial ? *initial : make_velocity(g);
  res.z = make_pressure(g);
  for (int n = 1; n <= n_steps; ++n) {
    const double t = n * c.dt;
    VelocityRhs f = assemble_rhs(forcing, g, t);
    try {
      auto [w, z, rep] = stepper.step(res.w, f);
      res.w = std::move(w);
      res.z = std::move(z);
      res.steps = n;
      if (observer) observer(n, t, res.w, res.z, rep);
    } catch (SolverError& e) {
      throw SolverError("step " + std::to_string(n) + ": " + e.what(),
                        e.residual_history);
    }
  }
  return res;
}

}  // namespace rmac
