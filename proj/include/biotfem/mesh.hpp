#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

namespace biotfem {

/// Sides of the unit square, used for per-side boundary conditions.
enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };

enum class PressureBC { Dirichlet, Neumann };

/// Slip constrains the tangential displacement only (u x n = 0); the normal
/// component stays free.
enum class DisplacementBC { Dirichlet, Neumann, Slip };

/// Per-side boundary condition assignment. Every side must carry both a
/// pressure tag and a displacement tag before a mesh can be classified.
struct BoundarySpec {
  std::array<std::optional<PressureBC>, 4> pressure;
  std::array<std::optional<DisplacementBC>, 4> displacement;

  BoundarySpec& set(Side s, PressureBC p, DisplacementBC d) {
    pressure[static_cast<int>(s)] = p;
    displacement[static_cast<int>(s)] = d;
    return *this;
  }
  static BoundarySpec uniform(PressureBC p, DisplacementBC d) {
    BoundarySpec spec;
    for (int s = 0; s < 4; ++s) spec.set(static_cast<Side>(s), p, d);
    return spec;
  }
  bool complete() const {
    for (int s = 0; s < 4; ++s)
      if (!pressure[s] || !displacement[s]) return false;
    return true;
  }
};

/// A mesh face: an axis-aligned segment of length h with unit normal +x or +y.
/// For interior faces the normal points from minus_cell to plus_cell. Boundary
/// faces have exactly one adjacent cell; the outward normal is
/// outward_sign() * normal().
struct Face {
  int axis = 0;         ///< 0: normal (1,0); 1: normal (0,1)
  int minus_cell = -1;  ///< cell on the -normal side, -1 at the boundary
  int plus_cell = -1;   ///< cell on the +normal side, -1 at the boundary
  Eigen::Vector2d origin{0, 0};  ///< endpoint with the smaller tangential coordinate
  std::optional<Side> side;      ///< set for boundary faces
  std::optional<PressureBC> pressure_tag;
  std::optional<DisplacementBC> displacement_tag;

  bool boundary() const { return minus_cell < 0 || plus_cell < 0; }
  Eigen::Vector2d normal() const { return axis == 0 ? Eigen::Vector2d(1, 0) : Eigen::Vector2d(0, 1); }
  Eigen::Vector2d tangent() const { return axis == 0 ? Eigen::Vector2d(0, 1) : Eigen::Vector2d(1, 0); }
  /// +1 when the stored normal is outward, -1 otherwise. Interior faces: 0.
  int outward_sign() const {
    if (!boundary()) return 0;
    return plus_cell < 0 ? 1 : -1;
  }
  int interior_cell() const { return minus_cell >= 0 ? minus_cell : plus_cell; }
};

/// Uniform Cartesian subdivision of the unit square into 4^level congruent
/// cells of side h = 2^-level. Immutable after construction.
class Mesh {
 public:
  int level = 0;
  int n = 1;       ///< cells per side
  double h = 1.0;  ///< cell side length
  std::vector<Eigen::Vector2d> cell_origins;
  std::vector<Face> faces;

  int n_cells() const { return n * n; }
  int n_faces() const { return static_cast<int>(faces.size()); }

  int cell_index(int i, int j) const { return j * n + i; }
  int cell_i(int c) const { return c % n; }
  int cell_j(int c) const { return c / n; }

  /// Vertical face at x = i*h, row j (i in 0..n, j in 0..n-1).
  int vertical_face(int i, int j) const { return i * n + j; }
  /// Horizontal face at y = j*h, column i (j in 0..n, i in 0..n-1).
  int horizontal_face(int i, int j) const { return (n + 1) * n + j * n + i; }

  /// Face indices of a cell in local order {left, right, bottom, top}.
  std::array<int, 4> cell_faces(int c) const {
    int i = cell_i(c), j = cell_j(c);
    return {vertical_face(i, j), vertical_face(i + 1, j), horizontal_face(i, j),
            horizontal_face(i, j + 1)};
  }

  bool classified = false;
};

/// Builds the level-l mesh of the unit square. Rejects level < 0 or > 12.
Mesh build_cartesian_mesh(int level);

/// Returns a copy of the mesh with boundary faces tagged per side.
/// Rejects a spec that leaves any side untagged.
Mesh classify_boundary(Mesh mesh, const BoundarySpec& spec);

}  // namespace biotfem
