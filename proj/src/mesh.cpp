#include "biotfem/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace biotfem {

Mesh build_cartesian_mesh(int level) {
  if (level < 0) throw std::invalid_argument("build_cartesian_mesh: level must be >= 0");
  if (level > 12) throw std::invalid_argument("build_cartesian_mesh: level exceeds practical bound 12");

  Mesh mesh;
  mesh.level = level;
  mesh.n = 1 << level;
  mesh.h = std::ldexp(1.0, -level);  // exact dyadic 2^-level
  const int n = mesh.n;
  const double h = mesh.h;

  mesh.cell_origins.resize(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) mesh.cell_origins[mesh.cell_index(i, j)] = Eigen::Vector2d(i * h, j * h);

  mesh.faces.resize(2 * static_cast<size_t>(n) * (n + 1));
  // vertical faces, normal +x
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < n; ++j) {
      Face& f = mesh.faces[mesh.vertical_face(i, j)];
      f.axis = 0;
      f.origin = Eigen::Vector2d(i * h, j * h);
      f.minus_cell = (i > 0) ? mesh.cell_index(i - 1, j) : -1;
      f.plus_cell = (i < n) ? mesh.cell_index(i, j) : -1;
      if (i == 0) f.side = Side::Left;
      if (i == n) f.side = Side::Right;
    }
  // horizontal faces, normal +y
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < n; ++i) {
      Face& f = mesh.faces[mesh.horizontal_face(i, j)];
      f.axis = 1;
      f.origin = Eigen::Vector2d(i * h, j * h);
      f.minus_cell = (j > 0) ? mesh.cell_index(i, j - 1) : -1;
      f.plus_cell = (j < n) ? mesh.cell_index(i, j) : -1;
      if (j == 0) f.side = Side::Bottom;
      if (j == n) f.side = Side::Top;
    }
  return mesh;
}

Mesh classify_boundary(Mesh mesh, const BoundarySpec& spec) {
  if (!spec.complete())
    throw std::invalid_argument("classify_boundary: every side needs a pressure and a displacement tag");
  for (Face& f : mesh.faces) {
    if (!f.boundary()) continue;
    int s = static_cast<int>(*f.side);
    f.pressure_tag = *spec.pressure[s];
    f.displacement_tag = *spec.displacement[s];
  }
  mesh.classified = true;
  return mesh;
}

}  // namespace biotfem
