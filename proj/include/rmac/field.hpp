#pragma once

// Staggered field storage. Four lattices on an Nx x Ny grid:
//
//   Cell    (x_{i+1/2}, y_{j+1/2})   Nx     x Ny       pressure home
//   Corner  (x_i,       y_j)         (Nx+1) x (Ny+1)
//   XFace   (x_i,       y_{j+1/2})   (Nx+1) x Ny       u^x home
//   YFace   (x_{i+1/2}, y_j)         Nx     x (Ny+1)   u^y home
//
// Velocity components additionally carry the tangential wall rows/columns
// (u^x at y_0 and y_Ny, u^y at x_0 and x_Nx) used by the near-wall D_y/D_x
// differences; homogeneous Dirichlet data sets them to zero.

#include <rmac/grid.hpp>

#include <algorithm>
#include <vector>

namespace rmac {

class Array2D {
 public:
  Array2D() = default;
  Array2D(int nx, int ny, double fill = 0.0)
      : nx_(nx), ny_(ny), a_(static_cast<size_t>(nx) * static_cast<size_t>(ny), fill) {
    require(nx > 0 && ny > 0, "Array2D dimensions must be positive");
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  double& operator()(int i, int j) { return a_[index(i, j)]; }
  double operator()(int i, int j) const { return a_[index(i, j)]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  bool same_shape(const Array2D& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }

 private:
  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(ny_) + static_cast<size_t>(j);
  }
  int nx_ = 0, ny_ = 0;
  std::vector<double> a_;
};

enum class Lattice { Cell, Corner, XFace, YFace };

inline const char* lattice_name(Lattice l) {
  switch (l) {
    case Lattice::Cell: return "cell";
    case Lattice::Corner: return "corner";
    case Lattice::XFace: return "xface";
    case Lattice::YFace: return "yface";
  }
  return "?";
}

struct Field {
  Lattice lattice = Lattice::Cell;
  Array2D a;

  double& operator()(int i, int j) { return a(i, j); }
  double operator()(int i, int j) const { return a(i, j); }
};

inline Field make_field(const StaggeredGrid2D& g, Lattice l, double fill = 0.0) {
  switch (l) {
    case Lattice::Cell: return {l, Array2D(g.nx(), g.ny(), fill)};
    case Lattice::Corner: return {l, Array2D(g.nx() + 1, g.ny() + 1, fill)};
    case Lattice::XFace: return {l, Array2D(g.nx() + 1, g.ny(), fill)};
    case Lattice::YFace: return {l, Array2D(g.nx(), g.ny() + 1, fill)};
  }
  throw std::invalid_argument("unknown lattice");
}

inline void check_lattice(const Field& f, Lattice expect, const char* op) {
  require(f.lattice == expect, std::string(op) + ": expected " + lattice_name(expect) +
                                   " field, got " + lattice_name(f.lattice));
}

// u^x values at (x_i, y_{j+1/2}) including the Dirichlet columns i=0 and
// i=Nx, plus wall rows at y_0 and y_Ny.
struct XVelocity {
  Field face;                           // XFace, (Nx+1) x Ny
  std::vector<double> wall_bottom;      // (x_i, y_0),  size Nx+1
  std::vector<double> wall_top;         // (x_i, y_Ny), size Nx+1
};

// u^y values at (x_{i+1/2}, y_j) including rows j=0 and j=Ny, plus wall
// columns at x_0 and x_Nx.
struct YVelocity {
  Field face;                           // YFace, Nx x (Ny+1)
  std::vector<double> wall_left;        // (x_0,  y_j), size Ny+1
  std::vector<double> wall_right;       // (x_Nx, y_j), size Ny+1
};

struct Velocity {
  XVelocity x;
  YVelocity y;
};

inline Velocity make_velocity(const StaggeredGrid2D& g, double fill = 0.0) {
  Velocity w;
  w.x.face = make_field(g, Lattice::XFace, fill);
  w.x.wall_bottom.assign(static_cast<size_t>(g.nx()) + 1, fill);
  w.x.wall_top.assign(static_cast<size_t>(g.nx()) + 1, fill);
  w.y.face = make_field(g, Lattice::YFace, fill);
  w.y.wall_left.assign(static_cast<size_t>(g.ny()) + 1, fill);
  w.y.wall_right.assign(static_cast<size_t>(g.ny()) + 1, fill);
  return w;
}

struct Pressure {
  Field cells;  // Cell, Nx x Ny
};

inline Pressure make_pressure(const StaggeredGrid2D& g, double fill = 0.0) {
  return {make_field(g, Lattice::Cell, fill)};
}

// axpy over every stored entry (faces and walls).
inline void velocity_axpy(Velocity& w, double alpha, const Velocity& v) {
  auto upd = [alpha](std::vector<double>& a, const std::vector<double>& b) {
    for (size_t k = 0; k < a.size(); ++k) a[k] += alpha * b[k];
  };
  upd(w.x.face.a.data(), v.x.face.a.data());
  upd(w.y.face.a.data(), v.y.face.a.data());
  upd(w.x.wall_bottom, v.x.wall_bottom);
  upd(w.x.wall_top, v.x.wall_top);
  upd(w.y.wall_left, v.y.wall_left);
  upd(w.y.wall_right, v.y.wall_right);
}

}  // namespace rmac
