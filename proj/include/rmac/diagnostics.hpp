#pragma once

// Conserved-quantity evaluators and run-level conservation checks:
// kinetic energy, linear momentum, angular momentum (against x_hat = (y,-x)),
// viscous dissipation and the per-cell mass residual.

#include <rmac/operators.hpp>
#include <rmac/stokes.hpp>

#include <array>
#include <optional>
#include <ostream>
#include <vector>

namespace rmac {

inline double kinetic_energy(const StaggeredGrid2D& g, const Velocity& w) {
  const double n = norm_vel_l2(g, w);
  return 0.5 * n * n;
}

// ((W^x,1)_{l2,T,M}, (W^y,1)_{l2,M,T})
inline std::array<double, 2> momentum(const StaggeredGrid2D& g, const Velocity& w) {
  Field onex = make_field(g, Lattice::XFace, 1.0);
  Field oney = make_field(g, Lattice::YFace, 1.0);
  return {ip_l2TM(g, w.x.face, onex), ip_l2MT(g, w.y.face, oney)};
}

// (W^x, y)_{l2,T,M} - (W^y, x)_{l2,M,T} with y at y_{j+1/2}, x at x_{i+1/2}.
inline double angular_momentum(const StaggeredGrid2D& g, const Velocity& w) {
  Field yv = make_field(g, Lattice::XFace);
  for (int i = 0; i <= g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) yv(i, j) = g.y.mid(j);
  Field xv = make_field(g, Lattice::YFace);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j <= g.ny(); ++j) xv(i, j) = g.x.mid(i);
  return ip_l2TM(g, w.x.face, yv) - ip_l2MT(g, w.y.face, xv);
}

inline double max_divergence(const StaggeredGrid2D& g, const Velocity& w) {
  return norm_linf(divergence(g, w));
}

struct Snapshot {
  double t = 0.0;
  Velocity w;
  Pressure z;
};

using Trajectory = std::vector<Snapshot>;  // entry 0 is the initial state

struct ConservationTolerances {
  double energy = 1e-9;    // slack on the dissipation inequality
  double momentum = 1e-8;  // per-step drift, scale-relative
  double mass = 1e-10;     // max cell divergence, scale-relative
};

struct ConservationReport {
  std::vector<double> time;
  std::vector<double> energy;
  std::vector<double> dissipation;  // dt * mu * ||DW^n||^2, 0 at n=0
  std::vector<double> momentum_x;
  std::vector<double> momentum_y;
  std::vector<double> angular;
  std::vector<double> max_div;
  bool energy_checked = false;
  bool momentum_checked = false;
  bool energy_violated = false;
  bool momentum_violated = false;
  bool mass_violated = false;

  bool clean() const { return !energy_violated && !momentum_violated && !mass_violated; }

  void write_csv(std::ostream& os) const {
    os << "step,t,energy,dissipation,momentum_x,momentum_y,angular_momentum,max_div\n";
    for (size_t n = 0; n < time.size(); ++n)
      os << n << ',' << time[n] << ',' << energy[n] << ',' << dissipation[n] << ','
         << momentum_x[n] << ',' << momentum_y[n] << ',' << angular[n] << ','
         << max_div[n] << "\n";
  }
};

struct CheckOptions {
  double mu = 1.0;
  double dt = 1.0;
  bool zero_forcing = false;     // enables the energy-dissipation check
  bool compact_support = false;  // enables momentum/angular-momentum checks
  ConservationTolerances tol;
};

inline ConservationReport check_run(const StaggeredGrid2D& g, const Trajectory& traj,
                                    const CheckOptions& opt) {
  ConservationReport rep;
  rep.energy_checked = opt.zero_forcing;
  rep.momentum_checked = opt.compact_support;
  for (const Snapshot& s : traj) {
    rep.time.push_back(s.t);
    rep.energy.push_back(kinetic_energy(g, s.w));
    const double dn = norm_grad(g, s.w);
    rep.dissipation.push_back(opt.dt * opt.mu * dn * dn);
    auto m = momentum(g, s.w);
    rep.momentum_x.push_back(m[0]);
    rep.momentum_y.push_back(m[1]);
    rep.angular.push_back(angular_momentum(g, s.w));
    rep.max_div.push_back(max_divergence(g, s.w));
  }
  for (size_t n = 1; n < traj.size(); ++n) {
    const double scale = std::max(1.0, norm_vel_l2(g, traj[n].w));
    if (opt.zero_forcing &&
        rep.energy[n] > rep.energy[n - 1] - rep.dissipation[n] + opt.tol.energy * scale)
      rep.energy_violated = true;
    if (opt.compact_support) {
      if (std::abs(rep.momentum_x[n] - rep.momentum_x[n - 1]) > opt.tol.momentum * scale ||
          std::abs(rep.momentum_y[n] - rep.momentum_y[n - 1]) > opt.tol.momentum * scale ||
          std::abs(rep.angular[n] - rep.angular[n - 1]) > opt.tol.momentum * scale)
        rep.momentum_violated = true;
    }
    if (rep.max_div[n] > opt.tol.mass * scale) rep.mass_violated = true;
  }
  return rep;
}

}  // namespace rmac
