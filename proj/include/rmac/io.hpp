#pragma once

// CSV field dumps and atomic file writes (write temp, rename).

#include <rmac/field.hpp>
#include <rmac/grid.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

namespace rmac {

inline std::pair<double, double> lattice_point(const StaggeredGrid2D& g, Lattice l,
                                               int i, int j) {
  switch (l) {
    case Lattice::Cell: return {g.x.mid(i), g.y.mid(j)};
    case Lattice::Corner: return {g.x.node(i), g.y.node(j)};
    case Lattice::XFace: return {g.x.node(i), g.y.mid(j)};
    case Lattice::YFace: return {g.x.mid(i), g.y.node(j)};
  }
  throw std::invalid_argument("unknown lattice");
}

inline void dump_field_csv(std::ostream& os, const StaggeredGrid2D& g, const Field& f,
                           bool header = true) {
  if (header) os << "lattice,i,j,x,y,value\n";
  os.precision(17);
  for (int i = 0; i < f.a.nx(); ++i)
    for (int j = 0; j < f.a.ny(); ++j) {
      auto [x, y] = lattice_point(g, f.lattice, i, j);
      os << lattice_name(f.lattice) << ',' << i << ',' << j << ',' << x << ',' << y
         << ',' << f(i, j) << "\n";
    }
}

inline void dump_velocity_csv(std::ostream& os, const StaggeredGrid2D& g,
                              const Velocity& w) {
  os << "lattice,i,j,x,y,value\n";
  dump_field_csv(os, g, w.x.face, false);
  dump_field_csv(os, g, w.y.face, false);
}

inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(os), "cannot open for writing: " + tmp.string());
    os << content;
  }
  fs::rename(tmp, path);
}

inline void atomic_write_file(const std::filesystem::path& path,
                              const std::function<void(std::ostream&)>& writer) {
  std::ostringstream os;
  writer(os);
  atomic_write_file(path, os.str());
}

}  // namespace rmac
