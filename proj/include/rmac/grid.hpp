#pragma once

// Non-uniform tensor-product staggered grid on a rectangle (0,Lx) x (0,Ly).
//
// Index conventions per axis (N cells, N+1 nodes):
//   nodes          x_0 < x_1 < ... < x_N
//   half_spacings  h_{i+1/2} = x_{i+1} - x_i,            i = 0..N-1
//   midpoints      x_{i+1/2} = (x_i + x_{i+1})/2,        i = 0..N-1
//   node_spacings  h_i = (h_{i-1/2} + h_{i+1/2})/2,      i = 1..N-1
//                  h_0 = h_{1/2}/2,  h_N = h_{N-1/2}/2.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmac {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

struct Axis1D {
  std::vector<double> nodes;
  std::vector<double> half_spacings;
  std::vector<double> midpoints;
  std::vector<double> node_spacings;

  int cells() const { return static_cast<int>(half_spacings.size()); }
  double length() const { return nodes.back() - nodes.front(); }

  // x_{i+1/2} for i in [0, cells)
  double mid(int i) const { return midpoints[static_cast<size_t>(i)]; }
  // h_{i+1/2} for i in [0, cells)
  double hmid(int i) const { return half_spacings[static_cast<size_t>(i)]; }
  // h_i for i in [0, cells]
  double hnode(int i) const { return node_spacings[static_cast<size_t>(i)]; }
  double node(int i) const { return nodes[static_cast<size_t>(i)]; }
};

inline Axis1D make_axis(std::vector<double> nodes) {
  require(nodes.size() >= 3, "axis needs at least two cells");
  Axis1D a;
  a.nodes = std::move(nodes);
  const size_t n = a.nodes.size() - 1;
  a.half_spacings.resize(n);
  a.midpoints.resize(n);
  for (size_t i = 0; i < n; ++i) {
    a.half_spacings[i] = a.nodes[i + 1] - a.nodes[i];
    a.midpoints[i] = 0.5 * (a.nodes[i] + a.nodes[i + 1]);
    require(a.half_spacings[i] > 0.0, "axis nodes must be strictly increasing");
  }
  a.node_spacings.resize(n + 1);
  a.node_spacings[0] = 0.5 * a.half_spacings[0];
  a.node_spacings[n] = 0.5 * a.half_spacings[n - 1];
  for (size_t i = 1; i < n; ++i)
    a.node_spacings[i] = 0.5 * (a.half_spacings[i - 1] + a.half_spacings[i]);
  return a;
}

struct StaggeredGrid2D {
  Axis1D x;
  Axis1D y;

  int nx() const { return x.cells(); }
  int ny() const { return y.cells(); }
  double lx() const { return x.length(); }
  double ly() const { return y.length(); }
  double area() const { return lx() * ly(); }
};

inline StaggeredGrid2D build_uniform(int nx, int ny, double lx = 1.0, double ly = 1.0) {
  require(nx >= 2 && ny >= 2, "need at least 2 cells per axis");
  require(lx > 0.0 && ly > 0.0, "domain lengths must be positive");
  auto nodes = [](int n, double len) {
    std::vector<double> v(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[static_cast<size_t>(i)] = len * i / n;
    v.back() = len;
    return v;
  };
  return {make_axis(nodes(nx, lx)), make_axis(nodes(ny, ly))};
}

namespace detail {

// Deterministic uniform draw in [0,1); independent of std distributions.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Spacings s_i = 1 + r*xi_i with xi_i uniform in [0,1], r solved so that
// max(s)/min(s) equals the target ratio, then rescaled to sum to len.
inline std::vector<double> random_spacings(int n, double len, double ratio,
                                           std::mt19937_64& rng) {
  std::vector<double> xi(static_cast<size_t>(n));
  for (auto& v : xi) v = unit_draw(rng);
  double xmin = xi[0], xmax = xi[0];
  for (double v : xi) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  // (1 + r*xmax)/(1 + r*xmin) = ratio  =>  r = (ratio-1)/(xmax - ratio*xmin)
  const double denom = xmax - ratio * xmin;
  require(ratio == 1.0 || denom > 0.0,
          "target ratio infeasible for drawn spacing profile");
  const double r = (ratio == 1.0) ? 0.0 : (ratio - 1.0) / denom;
  std::vector<double> s(static_cast<size_t>(n));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    s[static_cast<size_t>(i)] = 1.0 + r * xi[static_cast<size_t>(i)];
    sum += s[static_cast<size_t>(i)];
  }
  for (auto& v : s) v *= len / sum;
  return s;
}

inline std::vector<double> nodes_from_spacings(const std::vector<double>& s, double len) {
  std::vector<double> nodes(s.size() + 1);
  nodes[0] = 0.0;
  for (size_t i = 0; i < s.size(); ++i) nodes[i + 1] = nodes[i] + s[i];
  nodes.back() = len;
  return nodes;
}

}  // namespace detail

inline StaggeredGrid2D build_random_nonuniform(int nx, int ny, double lx, double ly,
                                               double target_ratio, std::uint64_t seed) {
  require(nx >= 2 && ny >= 2, "need at least 2 cells per axis");
  require(lx > 0.0 && ly > 0.0, "domain lengths must be positive");
  require(target_ratio >= 1.0, "target ratio must be >= 1");
  std::mt19937_64 rng(seed);
  auto sx = detail::random_spacings(nx, lx, target_ratio, rng);
  auto sy = detail::random_spacings(ny, ly, target_ratio, rng);
  return {make_axis(detail::nodes_from_spacings(sx, lx)),
          make_axis(detail::nodes_from_spacings(sy, ly))};
}

// min over both axes of half spacings divided by the max: the admissible
// regularity constant of the partition.
inline double regularity_ratio(const StaggeredGrid2D& g) {
  double lo = g.x.half_spacings[0], hi = lo;
  for (const auto* axis : {&g.x, &g.y})
    for (double h : axis->half_spacings) {
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
  return lo / hi;
}

// Split every cell in both directions at its midpoint.
inline StaggeredGrid2D refine_halved(const StaggeredGrid2D& g) {
  auto halve = [](const Axis1D& a) {
    std::vector<double> nodes;
    nodes.reserve(2 * a.half_spacings.size() + 1);
    for (size_t i = 0; i + 1 < a.nodes.size(); ++i) {
      nodes.push_back(a.nodes[i]);
      nodes.push_back(a.midpoints[i]);
    }
    nodes.push_back(a.nodes.back());
    return make_axis(std::move(nodes));
  };
  return {halve(g.x), halve(g.y)};
}

// Plain-text grid table: two lines of axis node coordinates.
inline void write_grid(std::ostream& os, const StaggeredGrid2D& g) {
  os.precision(17);
  for (const auto* axis : {&g.x, &g.y}) {
    for (size_t i = 0; i < axis->nodes.size(); ++i)
      os << (i ? " " : "") << axis->nodes[i];
    os << "\n";
  }
}

inline StaggeredGrid2D read_grid(std::istream& is) {
  auto read_line = [&is]() {
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), "grid table truncated");
    std::istringstream ls(line);
    std::vector<double> v;
    double val;
    while (ls >> val) v.push_back(val);
    return v;
  };
  auto xs = read_line();
  auto ys = read_line();
  return {make_axis(std::move(xs)), make_axis(std::move(ys))};
}

inline void write_grid_file(const std::string& path, const StaggeredGrid2D& g) {
  std::ofstream os(path);
  require(static_cast<bool>(os), "cannot open grid file for writing: " + path);
  write_grid(os, g);
}

inline StaggeredGrid2D read_grid_file(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), "cannot open grid file: " + path);
  return read_grid(is);
}

}  // namespace rmac
