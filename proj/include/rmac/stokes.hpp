#pragma once

// Backward-Euler time stepping for the Stokes saddle system.  The matrix
// depends only on (grid, mu, dt) and is factorized once per stepper.

#include <rmac/forcing.hpp>
#include <rmac/saddle.hpp>

#include <functional>

namespace rmac {

struct StepResult {
  Velocity w;
  Pressure z;
  SolveReport report;
};

class StokesStepper {
 public:
  StokesStepper(const StaggeredGrid2D& grid, const StepperConfig& config)
      : grid_(grid), config_(config) {
    config_.validate();
    Velocity w0 = make_velocity(grid_);
    VelocityRhs f0 = make_rhs(grid_);
    system_ = assemble(grid_, config_, w0, f0);
    solver_.factorize(system_.M);
  }

  const StaggeredGrid2D& grid() const { return grid_; }
  const StepperConfig& config() const { return config_; }
  const SaddleSystem& system() const { return system_; }

  StepResult step(const Velocity& w_old, const VelocityRhs& f) {
    Eigen::VectorXd rhs = saddle_rhs(grid_, config_, system_.dofs, w_old, f);
    StepResult out;
    Eigen::VectorXd x = solver_.solve(system_.M, rhs, config_, out.report);
    scatter_solution(grid_, system_.dofs, x, out.w, out.z);
    return out;
  }

 private:
  StaggeredGrid2D grid_;
  StepperConfig config_;
  SaddleSystem system_;
  SaddleSolver solver_;
};

// Called after every accepted step with (n, t^n, W^n, Z^n, report).
using StepObserver =
    std::function<void(int, double, const Velocity&, const Pressure&, const SolveReport&)>;

struct RunResult {
  Velocity w;
  Pressure z;
  int steps = 0;
};

// Time loop W^0 -> W^N with forcing evaluated at t^n.  T must be an integer
// multiple of dt; initial data defaults to the homogeneous W^0 = 0.
inline RunResult run_stokes(const StaggeredGrid2D& g, const StepperConfig& c,
                            const ForcingSpec& forcing, double t_final,
                            const StepObserver& observer = {},
                            const Velocity* initial = nullptr) {
  const double steps_real = t_final / c.dt;
  const int n_steps = static_cast<int>(std::lround(steps_real));
  require(n_steps >= 1 && std::abs(steps_real - n_steps) < 1e-8,
          "run: T must be a positive integer multiple of dt");
  StokesStepper stepper(g, c);
  RunResult res;
  res.w = initial ? *initial : make_velocity(g);
  res.z = make_pressure(g);
  for (int n = 1; n <= n_steps; ++n) {
    const double t = n * c.dt;
    VelocityRhs f = assemble_rhs(forcing, g, t);
    StepResult sr;
    try {
      sr = stepper.step(res.w, f);
    } catch (SolverError& e) {
      throw SolverError("step " + std::to_string(n) + ": " + e.what(),
                        e.residual_history);
    }
    res.w = std::move(sr.w);
    res.z = std::move(sr.z);
    res.steps = n;
    if (observer) observer(n, t, res.w, res.z, sr.report);
  }
  return res;
}

}  // namespace rmac
