#include "biotfem/fespace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace biotfem {

LagrangeBasis1D::LagrangeBasis1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {}

double LagrangeBasis1D::value(int i, double x) const {
  double v = 1.0;
  for (int j = 0; j < size(); ++j) {
    if (j == i) continue;
    v *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
  }
  return v;
}

double LagrangeBasis1D::derivative(int i, double x) const {
  double d = 0.0;
  for (int l = 0; l < size(); ++l) {
    if (l == i) continue;
    double term = 1.0 / (nodes_[i] - nodes_[l]);
    for (int j = 0; j < size(); ++j) {
      if (j == i || j == l) continue;
      term *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
    }
    d += term;
  }
  return d;
}

ReferenceElement::ReferenceElement(Family family, int degree) : family_(family), degree_(degree) {
  if (degree < 1)
    throw std::invalid_argument("ReferenceElement: degree must be >= 1 (RT_k/Q_k start at k = 1)");
  if (degree > 3) throw std::invalid_argument("ReferenceElement: degrees beyond 3 are not supported");
  const int k = degree;
  tangent_basis_ = LagrangeBasis1D(gauss_legendre(k + 1).points);
  if (family == Family::RaviartThomas) {
    normal_basis_ = LagrangeBasis1D(gauss_lobatto_points(k + 2));
    dim_ = 2 * (k + 1) * (k + 2);
    rt_dofs_.reserve(dim_);
    // face DOFs: left, right, bottom, top
    for (int m = 0; m <= k; ++m) rt_dofs_.push_back({0, 0, m});
    for (int m = 0; m <= k; ++m) rt_dofs_.push_back({0, k + 1, m});
    for (int m = 0; m <= k; ++m) rt_dofs_.push_back({1, m, 0});
    for (int m = 0; m <= k; ++m) rt_dofs_.push_back({1, m, k + 1});
    // interior DOFs
    for (int a = 1; a <= k; ++a)
      for (int b = 0; b <= k; ++b) rt_dofs_.push_back({0, a, b});
    for (int a = 0; a <= k; ++a)
      for (int b = 1; b <= k; ++b) rt_dofs_.push_back({1, a, b});
  } else {
    dim_ = (k + 1) * (k + 1);
  }
}

Eigen::Vector2d ReferenceElement::rt_value(int i, const Eigen::Vector2d& xi) const {
  const RTDof& d = rt_dofs_[i];
  if (d.comp == 0)
    return {normal_basis_.value(d.a, xi.x()) * tangent_basis_.value(d.b, xi.y()), 0.0};
  return {0.0, tangent_basis_.value(d.a, xi.x()) * normal_basis_.value(d.b, xi.y())};
}

double ReferenceElement::rt_divergence(int i, const Eigen::Vector2d& xi) const {
  const RTDof& d = rt_dofs_[i];
  if (d.comp == 0) return normal_basis_.derivative(d.a, xi.x()) * tangent_basis_.value(d.b, xi.y());
  return tangent_basis_.value(d.a, xi.x()) * normal_basis_.derivative(d.b, xi.y());
}

Eigen::Matrix2d ReferenceElement::rt_gradient(int i, const Eigen::Vector2d& xi) const {
  const RTDof& d = rt_dofs_[i];
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  if (d.comp == 0) {
    g(0, 0) = normal_basis_.derivative(d.a, xi.x()) * tangent_basis_.value(d.b, xi.y());
    g(0, 1) = normal_basis_.value(d.a, xi.x()) * tangent_basis_.derivative(d.b, xi.y());
  } else {
    g(1, 0) = tangent_basis_.derivative(d.a, xi.x()) * normal_basis_.value(d.b, xi.y());
    g(1, 1) = tangent_basis_.value(d.a, xi.x()) * normal_basis_.derivative(d.b, xi.y());
  }
  return g;
}

Eigen::Vector2d ReferenceElement::rt_node(int i) const {
  const RTDof& d = rt_dofs_[i];
  if (d.comp == 0) return {normal_basis_.node(d.a), tangent_basis_.node(d.b)};
  return {tangent_basis_.node(d.a), normal_basis_.node(d.b)};
}

double ReferenceElement::dq_value(int i, const Eigen::Vector2d& xi) const {
  const int m = degree_ + 1;
  return tangent_basis_.value(i % m, xi.x()) * tangent_basis_.value(i / m, xi.y());
}

Eigen::Vector2d ReferenceElement::dq_node(int i) const {
  const int m = degree_ + 1;
  return {tangent_basis_.node(i % m), tangent_basis_.node(i / m)};
}

FESpace::FESpace(const Mesh& mesh, Family family, int degree, Constraint constraint)
    : mesh_(&mesh), elem_(family, degree) {
  const int k = degree;
  const int n = mesh.n;
  const int dim = elem_.dim();
  cell_dofs_.resize(static_cast<size_t>(mesh.n_cells()) * dim);

  if (family == Family::RaviartThomas) {
    const int fd = k + 1;
    const int face_total = mesh.n_faces() * fd;
    const int cell_interior = elem_.interior_dofs();
    n_dofs_ = face_total + cell_interior * mesh.n_cells();

    face_dofs_.resize(static_cast<size_t>(mesh.n_faces()) * fd);
    for (int f = 0; f < mesh.n_faces(); ++f)
      for (int m = 0; m < fd; ++m) face_dofs_[f * fd + m] = f * fd + m;

    for (int c = 0; c < mesh.n_cells(); ++c) {
      auto faces = mesh.cell_faces(c);
      int* dst = cell_dofs_.data() + static_cast<size_t>(c) * dim;
      int loc = 0;
      for (int lf = 0; lf < 4; ++lf)
        for (int m = 0; m < fd; ++m) dst[loc++] = faces[lf] * fd + m;
      for (int m = 0; m < cell_interior; ++m) dst[loc++] = face_total + c * cell_interior + m;
    }
  } else {
    n_dofs_ = dim * mesh.n_cells();
    for (int c = 0; c < mesh.n_cells(); ++c)
      for (int m = 0; m < dim; ++m) cell_dofs_[static_cast<size_t>(c) * dim + m] = c * dim + m;
  }

  constrained_.assign(n_dofs_, 0);
  if (constraint != Constraint::None) {
    if (family != Family::RaviartThomas)
      throw std::invalid_argument("FESpace: essential constraints apply to RT spaces only");
    if (!mesh.classified)
      throw std::invalid_argument("FESpace: constraint requested on an unclassified mesh");
    for (int f = 0; f < mesh.n_faces(); ++f) {
      const Face& face = mesh.faces[f];
      if (!face.boundary()) continue;
      bool hit = (constraint == Constraint::PressureNeumann &&
                  face.pressure_tag == PressureBC::Neumann) ||
                 (constraint == Constraint::DisplacementDirichlet &&
                  face.displacement_tag == DisplacementBC::Dirichlet);
      if (hit)
        for (int g : face_dofs(f)) constrained_[g] = 1;
    }
  }
}

int FESpace::n_constrained() const {
  int c = 0;
  for (auto m : constrained_) c += m;
  return c;
}

CellBasisTable tabulate(const FESpace& space, int cell, const QuadratureRule2D& rule) {
  const Mesh& mesh = space.mesh();
  const ReferenceElement& elem = space.element();
  const double h = mesh.h;
  const Eigen::Vector2d origin = mesh.cell_origins[cell];
  const int nq = rule.size();
  const int dim = elem.dim();

  CellBasisTable t;
  t.dim = dim;
  t.points.resize(nq);
  t.weights.resize(nq);
  for (int q = 0; q < nq; ++q) {
    t.points[q] = origin + h * rule.points[q];
    t.weights[q] = rule.weights[q] * h * h;
  }
  if (space.family() == Family::RaviartThomas) {
    t.values.resize(static_cast<size_t>(nq) * dim);
    t.divergences.resize(static_cast<size_t>(nq) * dim);
    t.gradients.resize(static_cast<size_t>(nq) * dim);
    const double inv_h = 1.0 / h;
    const double inv_h2 = inv_h * inv_h;
    for (int q = 0; q < nq; ++q)
      for (int i = 0; i < dim; ++i) {
        t.values[q * dim + i] = inv_h * elem.rt_value(i, rule.points[q]);
        t.divergences[q * dim + i] = inv_h2 * elem.rt_divergence(i, rule.points[q]);
        t.gradients[q * dim + i] = inv_h2 * elem.rt_gradient(i, rule.points[q]);
      }
  } else {
    t.scalars.resize(static_cast<size_t>(nq) * dim);
    for (int q = 0; q < nq; ++q)
      for (int i = 0; i < dim; ++i) t.scalars[q * dim + i] = elem.dq_value(i, rule.points[q]);
  }
  return t;
}

FaceBasisTable trace_eval(const FESpace& space, int face, FaceSide side,
                          const QuadratureRule1D& rule) {
  if (space.family() != Family::RaviartThomas)
    throw std::invalid_argument("trace_eval: face traces are defined for RT spaces");
  const Mesh& mesh = space.mesh();
  const Face& f = mesh.faces[face];
  const int cell = (side == FaceSide::Minus) ? f.minus_cell : f.plus_cell;
  if (cell < 0) throw std::invalid_argument("trace_eval: requested side is outside the domain");

  const ReferenceElement& elem = space.element();
  const double h = mesh.h;
  const int nq = rule.size();
  const int dim = elem.dim();

  FaceBasisTable t;
  t.dim = dim;
  t.cell = cell;
  t.points.resize(nq);
  t.weights.resize(nq);
  t.values.resize(static_cast<size_t>(nq) * dim);
  t.normal_comp.resize(static_cast<size_t>(nq) * dim);
  t.Dn.resize(static_cast<size_t>(nq) * dim);

  const Eigen::Vector2d tangent = f.tangent();
  const double inv_h = 1.0 / h;
  const double inv_h2 = inv_h * inv_h;
  // reference coordinate fixed in the normal direction: 1 from the minus
  // cell (face on its right/top), 0 from the plus cell
  const double fixed = (side == FaceSide::Minus) ? 1.0 : 0.0;
  for (int q = 0; q < nq; ++q) {
    const double s = rule.points[q];
    t.points[q] = f.origin + h * s * tangent;
    t.weights[q] = rule.weights[q] * h;
    Eigen::Vector2d xi = (f.axis == 0) ? Eigen::Vector2d(fixed, s) : Eigen::Vector2d(s, fixed);
    for (int i = 0; i < dim; ++i) {
      Eigen::Vector2d v = inv_h * elem.rt_value(i, xi);
      Eigen::Matrix2d g = inv_h2 * elem.rt_gradient(i, xi);
      Eigen::Matrix2d D = 0.5 * (g + g.transpose());
      t.values[q * dim + i] = v;
      t.normal_comp[q * dim + i] = v[f.axis];
      t.Dn[q * dim + i] = D.col(f.axis);
    }
  }
  return t;
}

QuadratureRule2D default_volume_rule(int degree) { return gauss_legendre_2d(degree + 2); }
QuadratureRule1D default_face_rule(int degree) { return gauss_legendre(degree + 2); }

Eigen::VectorXd project_l2(const FESpace& space, const ScalarField& f) {
  if (space.family() != Family::DiscontinuousLagrange)
    throw std::invalid_argument("project_l2: target must be a DQ space");
  const int dim = space.dofs_per_cell();
  QuadratureRule2D rule = gauss_legendre_2d(space.degree() + 2);
  Eigen::VectorXd coeffs(space.n_dofs());
  Eigen::MatrixXd M(dim, dim);
  Eigen::VectorXd rhs(dim);
  for (int c = 0; c < space.mesh().n_cells(); ++c) {
    CellBasisTable t = tabulate(space, c, rule);
    M.setZero();
    rhs.setZero();
    for (int q = 0; q < rule.size(); ++q) {
      const double w = t.weights[q];
      const double fq = f(t.points[q]);
      for (int i = 0; i < dim; ++i) {
        rhs[i] += w * fq * t.scalar(q, i);
        for (int j = 0; j < dim; ++j) M(i, j) += w * t.scalar(q, i) * t.scalar(q, j);
      }
    }
    Eigen::VectorXd local = M.ldlt().solve(rhs);
    auto dofs = space.cell_dofs(c);
    for (int i = 0; i < dim; ++i) coeffs[dofs[i]] = local[i];
  }
  return coeffs;
}

Eigen::VectorXd interpolate_rt(const FESpace& space, const VectorField& f) {
  if (space.family() != Family::RaviartThomas)
    throw std::invalid_argument("interpolate_rt: RT space expected");
  const Mesh& mesh = space.mesh();
  const ReferenceElement& elem = space.element();
  const double h = mesh.h;
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.n_dofs());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    auto dofs = space.cell_dofs(c);
    const Eigen::Vector2d origin = mesh.cell_origins[c];
    for (int i = 0; i < elem.dim(); ++i) {
      Eigen::Vector2d x = origin + h * elem.rt_node(i);
      // inverse Piola: reference value = h * physical component
      coeffs[dofs[i]] = h * f(x)[elem.rt_component(i)];
    }
  }
  for (int g = 0; g < space.n_dofs(); ++g)
    if (space.constrained(g)) coeffs[g] = 0.0;
  return coeffs;
}

Eigen::VectorXd interpolate_dq(const FESpace& space, const ScalarField& f) {
  if (space.family() != Family::DiscontinuousLagrange)
    throw std::invalid_argument("interpolate_dq: DQ space expected");
  const Mesh& mesh = space.mesh();
  const ReferenceElement& elem = space.element();
  Eigen::VectorXd coeffs(space.n_dofs());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    auto dofs = space.cell_dofs(c);
    for (int i = 0; i < elem.dim(); ++i)
      coeffs[dofs[i]] = f(mesh.cell_origins[c] + mesh.h * elem.dq_node(i));
  }
  return coeffs;
}

Eigen::Vector2d eval_rt(const FESpace& space, const Eigen::VectorXd& coeffs, int cell,
                        const Eigen::Vector2d& x) {
  const Mesh& mesh = space.mesh();
  Eigen::Vector2d xi = (x - mesh.cell_origins[cell]) / mesh.h;
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  auto dofs = space.cell_dofs(cell);
  for (int i = 0; i < space.dofs_per_cell(); ++i)
    v += coeffs[dofs[i]] * space.element().rt_value(i, xi);
  return v / mesh.h;
}

double eval_dq(const FESpace& space, const Eigen::VectorXd& coeffs, int cell,
               const Eigen::Vector2d& x) {
  const Mesh& mesh = space.mesh();
  Eigen::Vector2d xi = (x - mesh.cell_origins[cell]) / mesh.h;
  double v = 0.0;
  auto dofs = space.cell_dofs(cell);
  for (int i = 0; i < space.dofs_per_cell(); ++i)
    v += coeffs[dofs[i]] * space.element().dq_value(i, xi);
  return v;
}

DivCompatReport check_div_compat(const FESpace& rt_space, const FESpace& dq_space) {
  if (&rt_space.mesh() != &dq_space.mesh())
    throw std::invalid_argument("check_div_compat: spaces must share a mesh");
  const int nq1 = std::max(rt_space.degree(), dq_space.degree()) + 2;
  QuadratureRule2D rule = gauss_legendre_2d(nq1);
  const int rt_dim = rt_space.dofs_per_cell();
  const int dq_dim = dq_space.dofs_per_cell();

  DivCompatReport report;
  Eigen::MatrixXd M(dq_dim, dq_dim);
  Eigen::VectorXd rhs(dq_dim);
  for (int c = 0; c < rt_space.mesh().n_cells(); ++c) {
    CellBasisTable rt = tabulate(rt_space, c, rule);
    CellBasisTable dq = tabulate(dq_space, c, rule);
    M.setZero();
    for (int q = 0; q < rule.size(); ++q)
      for (int i = 0; i < dq_dim; ++i)
        for (int j = 0; j < dq_dim; ++j)
          M(i, j) += rt.weights[q] * dq.scalar(q, i) * dq.scalar(q, j);
    Eigen::LDLT<Eigen::MatrixXd> solver(M);
    for (int b = 0; b < rt_dim; ++b) {
      rhs.setZero();
      double norm2 = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        const double d = rt.divergence(q, b);
        norm2 += rt.weights[q] * d * d;
        for (int i = 0; i < dq_dim; ++i) rhs[i] += rt.weights[q] * d * dq.scalar(q, i);
      }
      if (norm2 == 0.0) continue;
      Eigen::VectorXd proj = solver.solve(rhs);
      // pointwise difference avoids catastrophic cancellation in the norm
      double res2 = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        double pq = 0.0;
        for (int i = 0; i < dq_dim; ++i) pq += proj[i] * dq.scalar(q, i);
        const double diff = rt.divergence(q, b) - pq;
        res2 += rt.weights[q] * diff * diff;
      }
      report.max_rel_residual = std::max(report.max_rel_residual, std::sqrt(res2 / norm2));
    }
  }
  return report;
}

long rt_dof_count(int degree, int n) {
  const long k = degree, nn = n;
  return (k + 1) * 2 * nn * (nn + 1) + 2 * k * (k + 1) * nn * nn;
}

long dq_dof_count(int degree, int n) {
  const long k = degree, nn = n;
  return (k + 1) * (k + 1) * nn * nn;
}

long system_dof_count(int degree, int level) {
  const int n = 1 << level;
  return 2 * rt_dof_count(degree, n) + dq_dof_count(degree, n);
}

}  // namespace biotfem
