#pragma once

// Shared test helpers: a dense Gaussian-elimination oracle independent of
// the sparse solver, and random discretely divergence-free velocity fields
// built from a stream function on the corner lattice.

#include <rmac/field.hpp>
#include <rmac/grid.hpp>

#include <random>
#include <stdexcept>
#include <vector>

namespace rmac_test {

// Partial-pivot Gaussian elimination on a dense copy of the system.
inline std::vector<double> dense_gauss_solve(std::vector<std::vector<double>> a,
                                             std::vector<double> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) throw std::runtime_error("singular matrix");
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (size_t r = n; r-- > 0;) {
    double s = b[r];
    for (size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

// Discretely divergence-free field W = (d_y psi, -d_x psi) from a corner
// stream function; psi vanishes within `margin` index layers of the
// boundary, so margin >= 2 realizes the differential compact support.
inline rmac::Velocity random_solenoidal(const rmac::StaggeredGrid2D& g,
                                        std::mt19937_64& rng, int margin,
                                        double amplitude = 1.0) {
  using namespace rmac;
  Field psi = make_field(g, Lattice::Corner);
  for (int i = margin; i <= g.nx() - margin; ++i)
    for (int j = margin; j <= g.ny() - margin; ++j)
      psi(i, j) = amplitude * (2.0 * detail::unit_draw(rng) - 1.0);
  Velocity w = make_velocity(g);
  for (int i = 0; i <= g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      w.x.face(i, j) = (psi(i, j + 1) - psi(i, j)) / g.y.hmid(j);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j <= g.ny(); ++j)
      w.y.face(i, j) = -(psi(i + 1, j) - psi(i, j)) / g.x.hmid(i);
  return w;
}

}  // namespace rmac_test
