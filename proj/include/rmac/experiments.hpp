#pragma once

// Error measurement against manufactured solutions, convergence studies
// with the dt = 1/N^2 refinement rule, and lambda/mu robustness sweeps.
//
// Velocity errors compare W^n with the exact solution sampled at the
// staggered nodes; pressure errors compare Z^n with the zero-mean cell
// projection of the exact pressure.  All norms are maximized over
// n = 1..N (discrete l^inf in time).

#include <rmac/diagnostics.hpp>
#include <rmac/manufactured.hpp>
#include <rmac/navier_stokes.hpp>
#include <rmac/stokes.hpp>

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rmac {

struct GridSpec {
  bool uniform = true;
  double ratio = 1.5;      // target max/min spacing ratio when non-uniform
  std::uint64_t seed = 1;  // draw seed for the coarsest family member
};

struct ErrorRecord {
  std::string case_name;
  std::string scheme;
  std::string model;
  int nx = 0, ny = 0;
  double dt = 0.0, t_final = 1.0;
  double lambda = 1.0, mu = 1.0;
  double eu_l2 = 0.0, ep_l2 = 0.0;      // l^inf(l^2) velocity / l^inf(l^2,M) pressure
  double eu_linf = 0.0, ep_linf = 0.0;  // l^inf(l^inf)
  std::optional<double> rate_u_l2, rate_p_l2, rate_u_linf, rate_p_linf;
  double wallclock_s = 0.0;
};

inline void write_error_csv_header(std::ostream& os) {
  os << "case,scheme,Nx,Ny,dt,lambda,mu,eu_l2,rate_u,ep_l2,rate_p,eu_linf,ep_linf,"
        "wallclock_s\n";
}

inline void write_error_csv_row(std::ostream& os, const ErrorRecord& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? std::to_string(*v) : std::string("");
  };
  os << r.case_name << ',' << r.scheme << ',' << r.nx << ',' << r.ny << ',' << r.dt
     << ',' << r.lambda << ',' << r.mu << ',' << r.eu_l2 << ',' << opt(r.rate_u_l2)
     << ',' << r.ep_l2 << ',' << opt(r.rate_p_l2) << ',' << r.eu_linf << ','
     << r.ep_linf << ',' << r.wallclock_s << "\n";
}

// Running l^inf-in-time error maxima, fed one step at a time.
class ErrorAccumulator {
 public:
  ErrorAccumulator(const StaggeredGrid2D& g, const ManufacturedCase& c)
      : grid_(&g), case_(&c) {}

  void observe(double t, const Velocity& w, const Pressure& z) {
    const StaggeredGrid2D& g = *grid_;
    Velocity ew = case_->sample_velocity(g, t);
    for (size_t k = 0; k < ew.x.face.a.data().size(); ++k)
      ew.x.face.a.data()[k] = w.x.face.a.data()[k] - ew.x.face.a.data()[k];
    for (size_t k = 0; k < ew.y.face.a.data().size(); ++k)
      ew.y.face.a.data()[k] = w.y.face.a.data()[k] - ew.y.face.a.data()[k];
    Field ep = project_zero_mean(g, case_->sample_pressure(g, t).cells);
    for (size_t k = 0; k < ep.a.data().size(); ++k)
      ep.a.data()[k] = z.cells.a.data()[k] - ep.a.data()[k];
    eu_l2_ = std::max(eu_l2_, norm_vel_l2(g, ew));
    ep_l2_ = std::max(ep_l2_, norm_l2M(g, ep));
    eu_linf_ = std::max(eu_linf_, norm_vel_linf(g, ew));
    ep_linf_ = std::max(ep_linf_, norm_linf(ep));
  }

  double eu_l2() const { return eu_l2_; }
  double ep_l2() const { return ep_l2_; }
  double eu_linf() const { return eu_linf_; }
  double ep_linf() const { return ep_linf_; }

 private:
  const StaggeredGrid2D* grid_;
  const ManufacturedCase* case_;
  double eu_l2_ = 0.0, ep_l2_ = 0.0, eu_linf_ = 0.0, ep_linf_ = 0.0;
};

// Errors of a stored trajectory (small runs / tests).
inline ErrorRecord compute_errors(const Trajectory& traj, const ManufacturedCase& c,
                                  const StaggeredGrid2D& g) {
  ErrorAccumulator acc(g, c);
  for (size_t n = 1; n < traj.size(); ++n) acc.observe(traj[n].t, traj[n].w, traj[n].z);
  ErrorRecord r;
  r.case_name = c.name;
  r.model = c.model == Model::stokes ? "stokes" : "ns";
  r.nx = g.nx();
  r.ny = g.ny();
  r.lambda = c.lambda;
  r.mu = c.mu;
  r.eu_l2 = acc.eu_l2();
  r.ep_l2 = acc.ep_l2();
  r.eu_linf = acc.eu_linf();
  r.ep_linf = acc.ep_linf();
  return r;
}

struct RunOptions {
  Scheme scheme = Scheme::rmac;
  double solver_tol = 1e-11;
  int quadrature_order = 6;
  NonlinearConfig nonlinear;
  double t_final = 1.0;
};

// One full run of a manufactured case; initial data is the exact solution
// sampled at t = 0.
inline ErrorRecord run_case(const StaggeredGrid2D& g, const ManufacturedCase& c,
                            double dt, const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  StepperConfig sc;
  sc.mu = c.mu;
  sc.dt = dt;
  sc.scheme = opt.scheme;
  sc.solver_tol = opt.solver_tol;
  const RhsMode mode =
      opt.scheme == Scheme::rmac ? RhsMode::averaged : RhsMode::pointwise;
  ForcingSpec forcing = c.forcing(mode, opt.quadrature_order);
  Velocity w0 = c.sample_velocity(g, 0.0);
  ErrorAccumulator acc(g, c);
  if (c.model == Model::stokes) {
    run_stokes(
        g, sc, forcing, opt.t_final,
        [&](int, double t, const Velocity& w, const Pressure& z, const SolveReport&) {
          acc.observe(t, w, z);
        },
        &w0);
  } else {
    run_navier_stokes(
        g, sc, opt.nonlinear, forcing, opt.t_final,
        [&](int, double t, const Velocity& w, const Pressure& z, const NsStepReport&) {
          acc.observe(t, w, z);
        },
        &w0);
  }
  ErrorRecord r;
  r.case_name = c.name;
  r.scheme = opt.scheme == Scheme::rmac ? "rmac" : "mac";
  r.model = c.model == Model::stokes ? "stokes" : "ns";
  r.nx = g.nx();
  r.ny = g.ny();
  r.dt = dt;
  r.t_final = opt.t_final;
  r.lambda = c.lambda;
  r.mu = c.mu;
  r.eu_l2 = acc.eu_l2();
  r.ep_l2 = acc.ep_l2();
  r.eu_linf = acc.eu_linf();
  r.ep_linf = acc.ep_linf();
  r.wallclock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Nested grid family: the coarsest level is drawn once, finer levels halve
// every cell, which preserves the spacing ratio.
inline std::vector<StaggeredGrid2D> grid_family(const GridSpec& spec,
                                                const std::vector<int>& levels) {
  require(!levels.empty(), "grid family needs at least one level");
  for (size_t k = 1; k < levels.size(); ++k)
    require(levels[k] == 2 * levels[k - 1],
            "grid family levels must double (nested halving refinement)");
  std::vector<StaggeredGrid2D> grids;
  grids.push_back(spec.uniform
                      ? build_uniform(levels[0], levels[0])
                      : build_random_nonuniform(levels[0], levels[0], 1.0, 1.0,
                                                spec.ratio, spec.seed));
  for (size_t k = 1; k < levels.size(); ++k)
    grids.push_back(refine_halved(grids.back()));
  return grids;
}

// dt = 1/N^2 refinement; rates are log2 ratios between consecutive levels.
inline std::vector<ErrorRecord> convergence_study(const ManufacturedCase& c,
                                                  const GridSpec& gspec,
                                                  const std::vector<int>& levels,
                                                  const RunOptions& opt) {
  require(levels.size() >= 2, "convergence study needs at least 2 levels");
  auto grids = grid_family(gspec, levels);
  std::vector<ErrorRecord> records;
  for (size_t k = 0; k < grids.size(); ++k) {
    const double dt = 1.0 / (static_cast<double>(levels[k]) * levels[k]);
    ErrorRecord r = run_case(grids[k], c, dt, opt);
    if (!records.empty()) {
      const ErrorRecord& prev = records.back();
      r.rate_u_l2 = std::log2(prev.eu_l2 / r.eu_l2);
      r.rate_p_l2 = std::log2(prev.ep_l2 / r.ep_l2);
      r.rate_u_linf = std::log2(prev.eu_linf / r.eu_linf);
      r.rate_p_linf = std::log2(prev.ep_linf / r.ep_linf);
    }
    records.push_back(std::move(r));
  }
  return records;
}

enum class SweepAxis { lambda, mu };

// One record per parameter value on a fixed grid and dt.
inline std::vector<ErrorRecord> robustness_sweep(const std::string& case_name,
                                                 Model model, const StaggeredGrid2D& g,
                                                 double dt, SweepAxis axis,
                                                 const std::vector<double>& values,
                                                 const RunOptions& opt) {
  std::vector<ErrorRecord> records;
  for (double v : values) {
    const double lambda = axis == SweepAxis::lambda ? v : 1.0;
    const double mu = axis == SweepAxis::mu ? v : 1.0;
    ManufacturedCase c = make_case(case_name, lambda, mu, model);
    records.push_back(run_case(g, c, dt, opt));
  }
  return records;
}

}  // namespace rmac
