#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "biotfem/mesh.hpp"
#include "biotfem/quadrature.hpp"

namespace biotfem {

enum class Family { RaviartThomas, DiscontinuousLagrange };

using ScalarField = std::function<double(const Eigen::Vector2d&)>;
using VectorField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// 1D Lagrange basis on given nodes in [0,1].
class LagrangeBasis1D {
 public:
  LagrangeBasis1D() = default;
  explicit LagrangeBasis1D(std::vector<double> nodes);
  int size() const { return static_cast<int>(nodes_.size()); }
  double node(int i) const { return nodes_[i]; }
  double value(int i, double x) const;
  double derivative(int i, double x) const;

 private:
  std::vector<double> nodes_;
};

/// Reference element on the unit square.
///
/// RT_k spans Q_{k+1,k} x Q_{k,k+1}; its degrees of freedom are nodal values
/// of the normal component at Gauss points on the faces (k+1 per face) plus
/// interior component values at Lobatto x Gauss tensor nodes. DQ_k is the
/// discontinuous tensor Lagrange space of degree k at Gauss nodes.
class ReferenceElement {
 public:
  ReferenceElement(Family family, int degree);

  Family family() const { return family_; }
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  /// DOFs associated with one face (RT: k+1; DQ: 0).
  int dofs_per_face() const { return family_ == Family::RaviartThomas ? degree_ + 1 : 0; }
  int interior_dofs() const { return dim_ - 4 * dofs_per_face(); }

  // Raviart-Thomas evaluation on the reference square. Local DOF order:
  // left face, right face, bottom face, top face (each k+1, ordered by the
  // tangential Gauss node), then interior x-component, then interior
  // y-component nodes.
  Eigen::Vector2d rt_value(int i, const Eigen::Vector2d& xi) const;
  double rt_divergence(int i, const Eigen::Vector2d& xi) const;
  /// Reference Jacobian of basis i: row p = component, column q = d/dxi_q.
  Eigen::Matrix2d rt_gradient(int i, const Eigen::Vector2d& xi) const;
  /// Reference coordinates of the node defining RT DOF i.
  Eigen::Vector2d rt_node(int i) const;
  /// Component (0 = x, 1 = y) carried by RT DOF i.
  int rt_component(int i) const { return rt_dofs_[i].comp; }

  // Scalar Lagrange evaluation (DQ family).
  double dq_value(int i, const Eigen::Vector2d& xi) const;
  Eigen::Vector2d dq_node(int i) const;

 private:
  struct RTDof {
    int comp;  // 0: x-component, 1: y-component
    int a, b;  // tensor indices: comp 0 -> normal_basis[a] * tangent_basis[b]
  };
  Family family_;
  int degree_;
  int dim_;
  LagrangeBasis1D normal_basis_;   // k+2 Lobatto nodes (includes endpoints)
  LagrangeBasis1D tangent_basis_;  // k+1 Gauss nodes
  std::vector<RTDof> rt_dofs_;
};

/// A finite element space over a mesh: reference element, global DOF count,
/// cell-to-global DOF map, and the mask of constrained (essential) DOFs.
/// Constrained DOFs are boundary normal-trace DOFs forced to zero; their
/// coefficient values are identically zero in every discrete field.
class FESpace {
 public:
  enum class Constraint { None, PressureNeumann, DisplacementDirichlet };

  FESpace(const Mesh& mesh, Family family, int degree, Constraint constraint = Constraint::None);

  const Mesh& mesh() const { return *mesh_; }
  const ReferenceElement& element() const { return elem_; }
  Family family() const { return elem_.family(); }
  int degree() const { return elem_.degree(); }
  int n_dofs() const { return n_dofs_; }
  int dofs_per_cell() const { return elem_.dim(); }

  std::span<const int> cell_dofs(int cell) const {
    return {cell_dofs_.data() + static_cast<size_t>(cell) * elem_.dim(),
            static_cast<size_t>(elem_.dim())};
  }
  /// Global DOFs of a face (RT only; k+1 entries).
  std::span<const int> face_dofs(int face) const {
    return {face_dofs_.data() + static_cast<size_t>(face) * elem_.dofs_per_face(),
            static_cast<size_t>(elem_.dofs_per_face())};
  }

  bool constrained(int gdof) const { return constrained_[gdof] != 0; }
  const std::vector<std::uint8_t>& constraint_mask() const { return constrained_; }
  int n_constrained() const;

 private:
  const Mesh* mesh_;
  ReferenceElement elem_;
  int n_dofs_ = 0;
  std::vector<int> cell_dofs_;
  std::vector<int> face_dofs_;
  std::vector<std::uint8_t> constrained_;
};

/// Basis tables at volume quadrature points of one cell, in physical frame.
/// RT values are mapped contravariantly (Piola): on a cell of side h the
/// value scales with 1/h, divergence and gradient with 1/h^2.
struct CellBasisTable {
  std::vector<Eigen::Vector2d> points;  ///< physical quadrature points
  std::vector<double> weights;          ///< physical quadrature weights
  // RT family: [q * dim + i]
  std::vector<Eigen::Vector2d> values;
  std::vector<double> divergences;
  std::vector<Eigen::Matrix2d> gradients;  ///< d v_p / d x_q
  // DQ family: [q * dim + i]
  std::vector<double> scalars;
  int dim = 0;

  const Eigen::Vector2d& value(int q, int i) const { return values[q * dim + i]; }
  double divergence(int q, int i) const { return divergences[q * dim + i]; }
  const Eigen::Matrix2d& gradient(int q, int i) const { return gradients[q * dim + i]; }
  double scalar(int q, int i) const { return scalars[q * dim + i]; }
};

CellBasisTable tabulate(const FESpace& space, int cell, const QuadratureRule2D& rule);

/// Default assembly rules: k+2 Gauss points per direction (exactness 2k+3).
QuadratureRule2D default_volume_rule(int degree);
QuadratureRule1D default_face_rule(int degree);

/// Which side of a face a trace is taken from.
enum class FaceSide { Minus, Plus };

/// One-sided basis traces at face quadrature points (RT spaces).
/// normal_comp is v . n_F with the stored face normal (+x or +y); Dn is the
/// symmetric gradient applied to that normal, D(v) n_F.
struct FaceBasisTable {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  std::vector<Eigen::Vector2d> values;
  std::vector<double> normal_comp;
  std::vector<Eigen::Vector2d> Dn;
  int dim = 0;
  int cell = -1;  ///< the adjacent cell the trace was taken from

  const Eigen::Vector2d& value(int q, int i) const { return values[q * dim + i]; }
  double normal(int q, int i) const { return normal_comp[q * dim + i]; }
  const Eigen::Vector2d& dn(int q, int i) const { return Dn[q * dim + i]; }
};

FaceBasisTable trace_eval(const FESpace& space, int face, FaceSide side, const QuadratureRule1D& rule);

/// L2 projection into a DQ space; block-diagonal per cell.
Eigen::VectorXd project_l2(const FESpace& space, const ScalarField& f);

/// Nodal interpolation (RT: normal/component values at the basis nodes,
/// DQ: point values). Exact on members of the space.
Eigen::VectorXd interpolate_rt(const FESpace& space, const VectorField& f);
Eigen::VectorXd interpolate_dq(const FESpace& space, const ScalarField& f);

/// Evaluate a coefficient vector at a point of a given cell.
Eigen::Vector2d eval_rt(const FESpace& space, const Eigen::VectorXd& coeffs, int cell,
                        const Eigen::Vector2d& x);
double eval_dq(const FESpace& space, const Eigen::VectorXd& coeffs, int cell,
               const Eigen::Vector2d& x);

struct DivCompatReport {
  double max_rel_residual = 0.0;
};

/// Checks div W_h = Q_h: the divergence of every RT basis function must be
/// exactly representable in Q_h. Reports the largest relative L2 residual.
DivCompatReport check_div_compat(const FESpace& rt_space, const FESpace& dq_space);

/// Closed-form DOF counts on an n x n mesh.
long rt_dof_count(int degree, int n);
long dq_dof_count(int degree, int n);
/// Total p/w/u system size for the RT_k + RT_k + DQ_k triple at a mesh level.
long system_dof_count(int degree, int level);

}  // namespace biotfem
