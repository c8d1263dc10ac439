#pragma once

// One backward-Euler momentum/divergence saddle system.
//
// Unknowns: interior u^x (i=1..Nx-1, j=0..Ny-1), interior u^y
// (i=0..Nx-1, j=1..Ny-1), all cell pressures, one Lagrange multiplier for
// the weighted zero pressure mean.  Each momentum row is the pointwise
// scheme multiplied by its control volume (h_i k_{j+1/2} for u^x rows,
// h_{i+1/2} k_j for u^y rows), each constraint row by the cell volume, so
// the composed matrix
//   [ A   G   0 ]
//   [-B   0   m ]
//   [ 0  m^T  0 ]
// is symmetric: A = A^T and the divergence block satisfies B = -G^T.

#include <rmac/field.hpp>
#include <rmac/forcing.hpp>
#include <rmac/grid.hpp>
#include <rmac/operators.hpp>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <memory>
#include <string>
#include <vector>

namespace rmac {

enum class Scheme { rmac, mac };
enum class LinearSolverKind { sparse_direct, minres };

struct StepperConfig {
  double mu = 1.0;
  double dt = 1e-2;
  Scheme scheme = Scheme::rmac;
  LinearSolverKind linear_solver = LinearSolverKind::sparse_direct;
  double solver_tol = 1e-11;

  void validate() const {
    require(mu > 0.0, "config: mu must be positive");
    require(dt > 0.0, "config: dt must be positive");
    require(solver_tol >= 1e-14, "config: solver_tol must be >= 1e-14");
  }
};

struct SolverError : std::runtime_error {
  std::vector<double> residual_history;
  explicit SolverError(const std::string& what, std::vector<double> history = {})
      : std::runtime_error(what), residual_history(std::move(history)) {}
};

struct DofMap {
  int nx = 0, ny = 0;
  int n_ux = 0, n_uy = 0, n_p = 0;

  void init(const StaggeredGrid2D& g) {
    nx = g.nx();
    ny = g.ny();
    n_ux = (nx - 1) * ny;
    n_uy = nx * (ny - 1);
    n_p = nx * ny;
  }
  int size() const { return n_ux + n_uy + n_p + 1; }
  // interior u^x at (x_i, y_{j+1/2}), i in [1, nx-1]
  int ux(int i, int j) const { return (i - 1) * ny + j; }
  // interior u^y at (x_{i+1/2}, y_j), j in [1, ny-1]
  int uy(int i, int j) const { return n_ux + i * (ny - 1) + (j - 1); }
  int p(int i, int j) const { return n_ux + n_uy + i * ny + j; }
  int mult() const { return n_ux + n_uy + n_p; }
};

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

struct SaddleSystem {
  DofMap dofs;
  SpMat A;             // velocity block, n_u x n_u
  SpMat G;             // weighted pressure gradient, n_u x n_p
  SpMat B;             // weighted divergence, n_p x n_u
  Eigen::VectorXd m;   // cell measures h_{i+1/2} k_{j+1/2}
  SpMat M;             // composed symmetric system
  Eigen::VectorXd rhs;
};

namespace detail {

inline void assemble_velocity_block(const StaggeredGrid2D& g, const StepperConfig& c,
                                    const DofMap& d, std::vector<Triplet>& t) {
  const double mu = c.mu, idt = 1.0 / c.dt;
  // u^x rows, control volume h_i k_{j+1/2}
  for (int i = 1; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const int row = d.ux(i, j);
      const double vol = g.x.hnode(i) * g.y.hmid(j);
      double diag = vol * idt;
      // -mu (d_x W^x_{i+1/2} - d_x W^x_{i-1/2})/h_i, times vol
      diag += mu * g.y.hmid(j) * (1.0 / g.x.hmid(i) + 1.0 / g.x.hmid(i - 1));
      if (i + 1 < g.nx())
        t.emplace_back(row, d.ux(i + 1, j), -mu * g.y.hmid(j) / g.x.hmid(i));
      if (i - 1 >= 1)
        t.emplace_back(row, d.ux(i - 1, j), -mu * g.y.hmid(j) / g.x.hmid(i - 1));
      // -mu (D_y W^x_{i,j+1} - D_y W^x_{i,j})/k_{j+1/2}, times vol; the wall
      // rows j=0 and j=Ny-1 use k_0, k_Ny with zero wall values.
      const double k_up = g.y.hnode(j + 1), k_dn = g.y.hnode(j);
      diag += mu * g.x.hnode(i) * (1.0 / k_up + 1.0 / k_dn);
      if (j + 1 < g.ny())
        t.emplace_back(row, d.ux(i, j + 1), -mu * g.x.hnode(i) / k_up);
      if (j - 1 >= 0)
        t.emplace_back(row, d.ux(i, j - 1), -mu * g.x.hnode(i) / k_dn);
      t.emplace_back(row, row, diag);
    }
  }
  // u^y rows, control volume h_{i+1/2} k_j
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 1; j < g.ny(); ++j) {
      const int row = d.uy(i, j);
      const double vol = g.x.hmid(i) * g.y.hnode(j);
      double diag = vol * idt;
      const double h_rt = g.x.hnode(i + 1), h_lf = g.x.hnode(i);
      diag += mu * g.y.hnode(j) * (1.0 / h_rt + 1.0 / h_lf);
      if (i + 1 < g.nx())
        t.emplace_back(row, d.uy(i + 1, j), -mu * g.y.hnode(j) / h_rt);
      if (i - 1 >= 0)
        t.emplace_back(row, d.uy(i - 1, j), -mu * g.y.hnode(j) / h_lf);
      diag += mu * g.x.hmid(i) * (1.0 / g.y.hmid(j) + 1.0 / g.y.hmid(j - 1));
      if (j + 1 < g.ny())
        t.emplace_back(row, d.uy(i, j + 1), -mu * g.x.hmid(i) / g.y.hmid(j));
      if (j - 1 >= 1)
        t.emplace_back(row, d.uy(i, j - 1), -mu * g.x.hmid(i) / g.y.hmid(j - 1));
      t.emplace_back(row, row, diag);
    }
  }
}

// vol * D_x Z on u^x rows: coefficients +-k_{j+1/2}; analogous for u^y.
inline void assemble_gradient_block(const StaggeredGrid2D& g, const DofMap& d,
                                    std::vector<Triplet>& t) {
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const int row = d.ux(i, j);
      t.emplace_back(row, d.p(i, j) - d.n_ux - d.n_uy, g.y.hmid(j));
      t.emplace_back(row, d.p(i - 1, j) - d.n_ux - d.n_uy, -g.y.hmid(j));
    }
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j) {
      const int row = d.uy(i, j);
      t.emplace_back(row, d.p(i, j) - d.n_ux - d.n_uy, g.x.hmid(i));
      t.emplace_back(row, d.p(i, j - 1) - d.n_ux - d.n_uy, -g.x.hmid(i));
    }
}

// cell volume * (d_x W^x + d_y W^y): coefficients +-k_{j+1/2}, +-h_{i+1/2};
// Dirichlet boundary unknowns are eliminated.
inline void assemble_divergence_block(const StaggeredGrid2D& g, const DofMap& d,
                                      std::vector<Triplet>& t) {
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const int row = d.p(i, j) - d.n_ux - d.n_uy;
      if (i + 1 < g.nx()) t.emplace_back(row, d.ux(i + 1, j), g.y.hmid(j));
      if (i >= 1) t.emplace_back(row, d.ux(i, j), -g.y.hmid(j));
      if (j + 1 < g.ny()) t.emplace_back(row, d.uy(i, j + 1), g.x.hmid(i));
      if (j >= 1) t.emplace_back(row, d.uy(i, j), -g.x.hmid(i));
    }
}

}  // namespace detail

// Momentum loads enter multiplied by the control volumes; W_old provides
// the d_t history term.
inline Eigen::VectorXd saddle_rhs(const StaggeredGrid2D& g, const StepperConfig& c,
                                  const DofMap& d, const Velocity& w_old,
                                  const VelocityRhs& f) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d.size());
  const double idt = 1.0 / c.dt;
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double vol = g.x.hnode(i) * g.y.hmid(j);
      rhs[d.ux(i, j)] = vol * (f.fx(i, j) + idt * w_old.x.face(i, j));
    }
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j) {
      const double vol = g.x.hmid(i) * g.y.hnode(j);
      rhs[d.uy(i, j)] = vol * (f.fy(i, j) + idt * w_old.y.face(i, j));
    }
  return rhs;
}

inline SaddleSystem assemble(const StaggeredGrid2D& g, const StepperConfig& c,
                             const Velocity& w_old, const VelocityRhs& f) {
  c.validate();
  require(w_old.x.face.a.nx() == g.nx() + 1 && w_old.x.face.a.ny() == g.ny(),
          "assemble: velocity lattice does not match grid");
  SaddleSystem s;
  s.dofs.init(g);
  const DofMap& d = s.dofs;
  const int n_u = d.n_ux + d.n_uy;

  std::vector<Triplet> ta, tg, tb;
  detail::assemble_velocity_block(g, c, d, ta);
  detail::assemble_gradient_block(g, d, tg);
  detail::assemble_divergence_block(g, d, tb);

  s.A.resize(n_u, n_u);
  s.A.setFromTriplets(ta.begin(), ta.end());
  s.G.resize(n_u, d.n_p);
  s.G.setFromTriplets(tg.begin(), tg.end());
  s.B.resize(d.n_p, n_u);
  s.B.setFromTriplets(tb.begin(), tb.end());

  s.m.resize(d.n_p);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      s.m[d.p(i, j) - n_u] = g.x.hmid(i) * g.y.hmid(j);

  std::vector<Triplet> tm;
  tm.reserve(ta.size() + 2 * tg.size() + 2 * static_cast<size_t>(d.n_p));
  for (const auto& e : ta) tm.emplace_back(e.row(), e.col(), e.value());
  for (const auto& e : tg) tm.emplace_back(e.row(), n_u + e.col(), e.value());
  // divergence rows enter negated so the composed matrix is symmetric
  for (const auto& e : tb) tm.emplace_back(n_u + e.row(), e.col(), -e.value());
  for (int k = 0; k < d.n_p; ++k) {
    tm.emplace_back(n_u + k, d.mult(), s.m[k]);
    tm.emplace_back(d.mult(), n_u + k, s.m[k]);
  }
  s.M.resize(d.size(), d.size());
  s.M.setFromTriplets(tm.begin(), tm.end());
  s.rhs = saddle_rhs(g, c, d, w_old, f);
  return s;
}

struct SolveReport {
  double rel_residual = 0.0;
  int iterations = 0;        // 0 for direct solves
  bool refactorized = false;
};

// Direct or MINRES solver with one reusable factorization; the matrix is
// constant across time steps for fixed (grid, mu, dt).
class SaddleSolver {
 public:
  void factorize(const SpMat& M) {
    lu_ = std::make_unique<Eigen::SparseLU<SpMat>>();
    lu_->compute(M);
    if (lu_->info() != Eigen::Success)
      throw SolverError("sparse factorization failed (singular saddle system?)");
    matrix_ = &M;
  }

  Eigen::VectorXd solve(const SpMat& M, const Eigen::VectorXd& rhs,
                        const StepperConfig& c, SolveReport& report) {
    Eigen::VectorXd x;
    if (c.linear_solver == LinearSolverKind::sparse_direct) {
      if (!lu_ || matrix_ != &M) {
        factorize(M);
        report.refactorized = true;
      }
      x = lu_->solve(rhs);
      report.iterations = 0;
    } else {
      Eigen::MINRES<SpMat, Eigen::Lower | Eigen::Upper,
                    Eigen::IdentityPreconditioner>
          minres;
      minres.setTolerance(c.solver_tol * 1e-2);
      minres.setMaxIterations(50 * M.rows());
      minres.compute(M);
      x = minres.solve(rhs);
      report.iterations = static_cast<int>(minres.iterations());
    }
    const double rhs_norm = rhs.norm();
    const double res = (M * x - rhs).norm();
    report.rel_residual = rhs_norm > 0.0 ? res / rhs_norm : res;
    if (!(report.rel_residual <= c.solver_tol) && rhs_norm > 0.0)
      throw SolverError("saddle solve residual " + std::to_string(report.rel_residual) +
                            " exceeds tolerance",
                        {report.rel_residual});
    return x;
  }

 private:
  std::unique_ptr<Eigen::SparseLU<SpMat>> lu_;
  const SpMat* matrix_ = nullptr;
};

// Scatter a solution vector back onto staggered fields; Dirichlet boundary
// entries and wall rows are zero by construction.
inline void scatter_solution(const StaggeredGrid2D& g, const DofMap& d,
                             const Eigen::VectorXd& x, Velocity& w, Pressure& z) {
  w = make_velocity(g);
  z = make_pressure(g);
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) w.x.face(i, j) = x[d.ux(i, j)];
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j) w.y.face(i, j) = x[d.uy(i, j)];
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) z.cells(i, j) = x[d.p(i, j)];
}

}  // namespace rmac
