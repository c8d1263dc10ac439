#pragma once

// Discrete difference operators, linear interpolations, inner products and
// norms on the staggered lattices.
//
// d_x, d_y  difference from integer nodes to half nodes, spacing h_{i+1/2}.
// D_x, D_y  difference from half nodes to integer nodes, spacing h_i;
//           plain fields get interior nodes only, velocity overloads use the
//           wall rows/columns and the boundary rule h_0 = h_{1/2}/2.
// interp_x, interp_y  linear interpolation between the two lattices: exact
//           midpoint mean for integer->half, spacing-weighted for half->integer.

#include <rmac/field.hpp>
#include <rmac/grid.hpp>

#include <cmath>

namespace rmac {

inline Field d_x(const StaggeredGrid2D& g, const Field& f) {
  if (f.lattice == Lattice::XFace) {
    Field out = make_field(g, Lattice::Cell);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        out(i, j) = (f(i + 1, j) - f(i, j)) / g.x.hmid(i);
    return out;
  }
  if (f.lattice == Lattice::Corner) {
    Field out = make_field(g, Lattice::YFace);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j <= g.ny(); ++j)
        out(i, j) = (f(i + 1, j) - f(i, j)) / g.x.hmid(i);
    return out;
  }
  throw std::invalid_argument("d_x: input must live on integer x nodes");
}

inline Field d_y(const StaggeredGrid2D& g, const Field& f) {
  if (f.lattice == Lattice::YFace) {
    Field out = make_field(g, Lattice::Cell);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        out(i, j) = (f(i, j + 1) - f(i, j)) / g.y.hmid(j);
    return out;
  }
  if (f.lattice == Lattice::Corner) {
    Field out = make_field(g, Lattice::XFace);
    for (int i = 0; i <= g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        out(i, j) = (f(i, j + 1) - f(i, j)) / g.y.hmid(j);
    return out;
  }
  throw std::invalid_argument("d_y: input must live on integer y nodes");
}

// Interior integer nodes i = 1..Nx-1; boundary columns are left zero.
inline Field D_x(const StaggeredGrid2D& g, const Field& f) {
  if (f.lattice == Lattice::Cell) {
    Field out = make_field(g, Lattice::XFace);
    for (int i = 1; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        out(i, j) = (f(i, j) - f(i - 1, j)) / g.x.hnode(i);
    return out;
  }
  if (f.lattice == Lattice::YFace) {
    Field out = make_field(g, Lattice::Corner);
    for (int i = 1; i < g.nx(); ++i)
      for (int j = 0; j <= g.ny(); ++j)
        out(i, j) = (f(i, j) - f(i - 1, j)) / g.x.hnode(i);
    return out;
  }
  throw std::invalid_argument("D_x: input must live on half x nodes");
}

inline Field D_y(const StaggeredGrid2D& g, const Field& f) {
  if (f.lattice == Lattice::Cell) {
    Field out = make_field(g, Lattice::YFace);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 1; j < g.ny(); ++j)
        out(i, j) = (f(i, j) - f(i, j - 1)) / g.y.hnode(j);
    return out;
  }
  if (f.lattice == Lattice::XFace) {
    Field out = make_field(g, Lattice::Corner);
    for (int i = 0; i <= g.nx(); ++i)
      for (int j = 1; j < g.ny(); ++j)
        out(i, j) = (f(i, j) - f(i, j - 1)) / g.y.hnode(j);
    return out;
  }
  throw std::invalid_argument("D_y: input must live on half y nodes");
}

inline Field d_t(const Field& f_new, const Field& f_old, double dt) {
  require(f_new.lattice == f_old.lattice && f_new.a.same_shape(f_old.a),
          "d_t: fields must share one lattice");
  require(dt > 0.0, "d_t: dt must be positive");
  Field out = f_new;
  for (size_t k = 0; k < out.a.data().size(); ++k)
    out.a.data()[k] = (f_new.a.data()[k] - f_old.a.data()[k]) / dt;
  return out;
}

// (d_x u^x + d_y u^y) on every cell.
inline Field divergence(const StaggeredGrid2D& g, const Velocity& w) {
  check_lattice(w.x.face, Lattice::XFace, "divergence");
  check_lattice(w.y.face, Lattice::YFace, "divergence");
  Field out = make_field(g, Lattice::Cell);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      out(i, j) = (w.x.face(i + 1, j) - w.x.face(i, j)) / g.x.hmid(i) +
                  (w.y.face(i, j + 1) - w.y.face(i, j)) / g.y.hmid(j);
  return out;
}

inline Field interp_x(const StaggeredGrid2D& g, const Field& f) {
  switch (f.lattice) {
    case Lattice::XFace: {  // integer -> half: midpoint mean
      Field out = make_field(g, Lattice::Cell);
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
          out(i, j) = 0.5 * (f(i, j) + f(i + 1, j));
      return out;
    }
    case Lattice::Corner: {
      Field out = make_field(g, Lattice::YFace);
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j <= g.ny(); ++j)
          out(i, j) = 0.5 * (f(i, j) + f(i + 1, j));
      return out;
    }
    case Lattice::Cell: {  // half -> integer, interior columns
      Field out = make_field(g, Lattice::XFace);
      for (int i = 1; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
          out(i, j) = (g.x.hmid(i - 1) * f(i, j) + g.x.hmid(i) * f(i - 1, j)) /
                      (2.0 * g.x.hnode(i));
      return out;
    }
    case Lattice::YFace: {
      Field out = make_field(g, Lattice::Corner);
      for (int i = 1; i < g.nx(); ++i)
        for (int j = 0; j <= g.ny(); ++j)
          out(i, j) = (g.x.hmid(i - 1) * f(i, j) + g.x.hmid(i) * f(i - 1, j)) /
                      (2.0 * g.x.hnode(i));
      return out;
    }
  }
  throw std::invalid_argument("interp_x: unknown lattice");
}

inline Field interp_y(const StaggeredGrid2D& g, const Field& f) {
  switch (f.lattice) {
    case Lattice::YFace: {
      Field out = make_field(g, Lattice::Cell);
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
          out(i, j) = 0.5 * (f(i, j) + f(i, j + 1));
      return out;
    }
    case Lattice::Corner: {
      Field out = make_field(g, Lattice::XFace);
      for (int i = 0; i <= g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
          out(i, j) = 0.5 * (f(i, j) + f(i, j + 1));
      return out;
    }
    case Lattice::Cell: {
      Field out = make_field(g, Lattice::YFace);
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 1; j < g.ny(); ++j)
          out(i, j) = (g.y.hmid(j - 1) * f(i, j) + g.y.hmid(j) * f(i, j - 1)) /
                      (2.0 * g.y.hnode(j));
      return out;
    }
    case Lattice::XFace: {
      Field out = make_field(g, Lattice::Corner);
      for (int i = 0; i <= g.nx(); ++i)
        for (int j = 1; j < g.ny(); ++j)
          out(i, j) = (g.y.hmid(j - 1) * f(i, j) + g.y.hmid(j) * f(i, j - 1)) /
                      (2.0 * g.y.hnode(j));
      return out;
    }
  }
  throw std::invalid_argument("interp_y: unknown lattice");
}

// D_y u^x on the full corner lattice; rows j=0 and j=Ny use the wall values
// and the half spacings k_0 = k_{1/2}/2, k_Ny = k_{Ny-1/2}/2.
inline Field D_y_corner(const StaggeredGrid2D& g, const XVelocity& u) {
  check_lattice(u.face, Lattice::XFace, "D_y_corner");
  Field out = make_field(g, Lattice::Corner);
  const int ny = g.ny();
  for (int i = 0; i <= g.nx(); ++i) {
    out(i, 0) = (u.face(i, 0) - u.wall_bottom[static_cast<size_t>(i)]) / g.y.hnode(0);
    for (int j = 1; j < ny; ++j)
      out(i, j) = (u.face(i, j) - u.face(i, j - 1)) / g.y.hnode(j);
    out(i, ny) = (u.wall_top[static_cast<size_t>(i)] - u.face(i, ny - 1)) / g.y.hnode(ny);
  }
  return out;
}

inline Field D_x_corner(const StaggeredGrid2D& g, const YVelocity& v) {
  check_lattice(v.face, Lattice::YFace, "D_x_corner");
  Field out = make_field(g, Lattice::Corner);
  const int nx = g.nx();
  for (int j = 0; j <= g.ny(); ++j) {
    out(0, j) = (v.face(0, j) - v.wall_left[static_cast<size_t>(j)]) / g.x.hnode(0);
    for (int i = 1; i < nx; ++i)
      out(i, j) = (v.face(i, j) - v.face(i - 1, j)) / g.x.hnode(i);
    out(nx, j) = (v.wall_right[static_cast<size_t>(j)] - v.face(nx - 1, j)) / g.x.hnode(nx);
  }
  return out;
}

// P^y_h u^x on the full corner lattice; wall rows take the stored
// tangential boundary values.
inline Field interp_y_corner(const StaggeredGrid2D& g, const XVelocity& u) {
  check_lattice(u.face, Lattice::XFace, "interp_y_corner");
  Field out = make_field(g, Lattice::Corner);
  const int ny = g.ny();
  for (int i = 0; i <= g.nx(); ++i) {
    out(i, 0) = u.wall_bottom[static_cast<size_t>(i)];
    for (int j = 1; j < ny; ++j)
      out(i, j) = (g.y.hmid(j - 1) * u.face(i, j) + g.y.hmid(j) * u.face(i, j - 1)) /
                  (2.0 * g.y.hnode(j));
    out(i, ny) = u.wall_top[static_cast<size_t>(i)];
  }
  return out;
}

inline Field interp_x_corner(const StaggeredGrid2D& g, const YVelocity& v) {
  check_lattice(v.face, Lattice::YFace, "interp_x_corner");
  Field out = make_field(g, Lattice::Corner);
  const int nx = g.nx();
  for (int j = 0; j <= g.ny(); ++j) {
    out(0, j) = v.wall_left[static_cast<size_t>(j)];
    for (int i = 1; i < nx; ++i)
      out(i, j) = (g.x.hmid(i - 1) * v.face(i, j) + g.x.hmid(i) * v.face(i - 1, j)) /
                  (2.0 * g.x.hnode(i));
    out(nx, j) = v.wall_right[static_cast<size_t>(j)];
  }
  return out;
}

// ---- discrete inner products ------------------------------------------
// Index ranges follow the definitions in the lattice table; mismatched
// lattices are usage errors.

inline double ip_l2M(const StaggeredGrid2D& g, const Field& f, const Field& q) {
  check_lattice(f, Lattice::Cell, "ip_l2M");
  check_lattice(q, Lattice::Cell, "ip_l2M");
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      s += g.x.hmid(i) * g.y.hmid(j) * f(i, j) * q(i, j);
  return s;
}

// (f,q)_{l2,Tx}: corners, i = 0..Nx, j = 1..Ny-1, weights h_i k_j.
inline double ip_l2Tx(const StaggeredGrid2D& g, const Field& f, const Field& q) {
  check_lattice(f, Lattice::Corner, "ip_l2Tx");
  check_lattice(q, Lattice::Corner, "ip_l2Tx");
  double s = 0.0;
  for (int i = 0; i <= g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j)
      s += g.x.hnode(i) * g.y.hnode(j) * f(i, j) * q(i, j);
  return s;
}

// (f,q)_{l2,Ty}: corners, i = 1..Nx-1, j = 0..Ny, weights h_i k_j.
inline double ip_l2Ty(const StaggeredGrid2D& g, const Field& f, const Field& q) {
  check_lattice(f, Lattice::Corner, "ip_l2Ty");
  check_lattice(q, Lattice::Corner, "ip_l2Ty");
  double s = 0.0;
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j <= g.ny(); ++j)
      s += g.x.hnode(i) * g.y.hnode(j) * f(i, j) * q(i, j);
  return s;
}

// (f,q)_{l2,T,M}: u^x nodes, i = 1..Nx-1, j = 0..Ny-1, weights h_i k_{j+1/2}.
inline double ip_l2TM(const StaggeredGrid2D& g, const Field& f, const Field& q) {
  check_lattice(f, Lattice::XFace, "ip_l2TM");
  check_lattice(q, Lattice::XFace, "ip_l2TM");
  double s = 0.0;
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      s += g.x.hnode(i) * g.y.hmid(j) * f(i, j) * q(i, j);
  return s;
}

// (f,q)_{l2,M,T}: u^y nodes, i = 0..Nx-1, j = 1..Ny-1, weights h_{i+1/2} k_j.
inline double ip_l2MT(const StaggeredGrid2D& g, const Field& f, const Field& q) {
  check_lattice(f, Lattice::YFace, "ip_l2MT");
  check_lattice(q, Lattice::YFace, "ip_l2MT");
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j)
      s += g.x.hmid(i) * g.y.hnode(j) * f(i, j) * q(i, j);
  return s;
}

inline double norm_l2M(const StaggeredGrid2D& g, const Field& f) {
  return std::sqrt(ip_l2M(g, f, f));
}

// ||u||_{l2}^2 = ||u^x||_{l2,T,M}^2 + ||u^y||_{l2,M,T}^2
inline double norm_vel_l2(const StaggeredGrid2D& g, const Velocity& w) {
  return std::sqrt(ip_l2TM(g, w.x.face, w.x.face) + ip_l2MT(g, w.y.face, w.y.face));
}

// ||Du||_{l2}^2 = ||d_x u^x||_M^2 + ||D_y u^x||_Ty^2 + ||D_x u^y||_Tx^2 + ||d_y u^y||_M^2
inline double norm_grad(const StaggeredGrid2D& g, const Velocity& w) {
  Field dxux = d_x(g, w.x.face);
  Field dyuy = d_y(g, w.y.face);
  Field dyux = D_y_corner(g, w.x);
  Field dxuy = D_x_corner(g, w.y);
  double s = ip_l2M(g, dxux, dxux) + ip_l2M(g, dyuy, dyuy) +
             ip_l2Ty(g, dyux, dyux) + ip_l2Tx(g, dxuy, dxuy);
  return std::sqrt(s);
}

// max |f| over the full lattice of a plain field.
inline double norm_linf(const Field& f) {
  double m = 0.0;
  for (double v : f.a.data()) m = std::max(m, std::abs(v));
  return m;
}

// max |W| over the velocity inner-product index ranges.
inline double norm_vel_linf(const StaggeredGrid2D& g, const Velocity& w) {
  double m = 0.0;
  for (int i = 1; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) m = std::max(m, std::abs(w.x.face(i, j)));
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 1; j < g.ny(); ++j) m = std::max(m, std::abs(w.y.face(i, j)));
  return m;
}

// Weighted mean (q,1)_{l2,M} / |Omega|.
inline double cell_mean(const StaggeredGrid2D& g, const Field& f) {
  check_lattice(f, Lattice::Cell, "cell_mean");
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) s += g.x.hmid(i) * g.y.hmid(j) * f(i, j);
  return s / g.area();
}

// P_h q = q - (q,1)_{l2,M}/|Omega| on cells.
inline Field project_zero_mean(const StaggeredGrid2D& g, const Field& f) {
  const double mean = cell_mean(g, f);
  Field out = f;
  for (double& v : out.a.data()) v -= mean;
  return out;
}

}  // namespace rmac
