#include "shiftlab/spaces.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace shiftlab {

SpaceDescriptor SpaceDescriptor::hardy(int degree_bound, int fiber_dim) {
  if (degree_bound < 0 || fiber_dim < 1)
    throw UnsupportedSpaceError("hardy: degree_bound >= 0 and fiber_dim >= 1 required");
  SpaceDescriptor s;
  s.kind = SpaceKind::HardyTrunc;
  s.degree_bound = degree_bound;
  s.fiber_dim = fiber_dim;
  return s;
}

SpaceDescriptor SpaceDescriptor::lebesgue(int degree_bound, int fiber_dim) {
  if (degree_bound < 0 || fiber_dim < 1)
    throw UnsupportedSpaceError("lebesgue: degree_bound >= 0 and fiber_dim >= 1 required");
  SpaceDescriptor s;
  s.kind = SpaceKind::LebesgueTrunc;
  s.degree_bound = degree_bound;
  s.fiber_dim = fiber_dim;
  return s;
}

SpaceDescriptor SpaceDescriptor::sum(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  SpaceDescriptor s;
  s.kind = SpaceKind::DirectSum;
  s.degree_bound = 0;
  s.fiber_dim = 1;
  s.parts = {a, b};
  return s;
}

int SpaceDescriptor::dim() const {
  if (kind == SpaceKind::DirectSum) {
    int d = 0;
    for (const auto& p : parts) d += p.dim();
    return d;
  }
  return num_modes() * fiber_dim;
}

int SpaceDescriptor::num_modes() const {
  switch (kind) {
    case SpaceKind::HardyTrunc:
      return degree_bound + 1;
    case SpaceKind::LebesgueTrunc:
      return 2 * degree_bound + 1;
    default:
      throw UnsupportedSpaceError("num_modes: not defined for direct sums");
  }
}

int SpaceDescriptor::min_mode() const {
  switch (kind) {
    case SpaceKind::HardyTrunc:
      return 0;
    case SpaceKind::LebesgueTrunc:
      return -degree_bound;
    default:
      throw UnsupportedSpaceError("min_mode: not defined for direct sums");
  }
}

int SpaceDescriptor::max_mode() const { return min_mode() + num_modes() - 1; }

int SpaceDescriptor::mode_offset(int mode) const {
  if (mode < min_mode() || mode > max_mode())
    throw ShapeError("mode_offset: mode " + std::to_string(mode) + " outside truncation");
  return (mode - min_mode()) * fiber_dim;
}

int SpaceDescriptor::part_offset(std::size_t part_index) const {
  if (kind != SpaceKind::DirectSum || part_index >= parts.size())
    throw UnsupportedSpaceError("part_offset: not a direct sum part");
  int off = 0;
  for (std::size_t i = 0; i < part_index; ++i) off += parts[i].dim();
  return off;
}

bool SpaceDescriptor::operator==(const SpaceDescriptor& other) const {
  if (kind != other.kind) return false;
  if (kind == SpaceKind::DirectSum) return parts == other.parts;
  return degree_bound == other.degree_bound && fiber_dim == other.fiber_dim;
}

std::string SpaceDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case SpaceKind::HardyTrunc:
      os << "H2[0.." << degree_bound << "]x" << fiber_dim;
      break;
    case SpaceKind::LebesgueTrunc:
      os << "L2[-" << degree_bound << ".." << degree_bound << "]x" << fiber_dim;
      break;
    case SpaceKind::DirectSum:
      os << "(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << " (+) ";
        os << parts[i].describe();
      }
      os << ")";
      break;
  }
  return os.str();
}

FourierVector::FourierVector(SpaceDescriptor s, Vector c) : space(std::move(s)), coeffs(std::move(c)) {
  if (coeffs.size() != space.dim())
    throw ShapeError("FourierVector: coefficient length " + std::to_string(coeffs.size()) +
                     " != space dim " + std::to_string(space.dim()));
}

FourierVector FourierVector::zero(const SpaceDescriptor& s) {
  return FourierVector(s, Vector::Zero(s.dim()));
}

Vector FourierVector::mode(int n) const {
  return coeffs.segment(space.mode_offset(n), space.fiber_dim);
}

void FourierVector::set_mode(int n, const Vector& value) {
  if (value.size() != space.fiber_dim) throw ShapeError("set_mode: fiber size mismatch");
  coeffs.segment(space.mode_offset(n), space.fiber_dim) = value;
}

Complex inner(const FourierVector& h, const FourierVector& g) {
  if (h.space != g.space) throw ShapeError("inner: space mismatch");
  // Eigen's dot conjugates its first argument
  return g.coeffs.dot(h.coeffs);
}

OpMatrix::OpMatrix(SpaceDescriptor dom, SpaceDescriptor cod, Matrix m)
    : domain(std::move(dom)), codomain(std::move(cod)), mat(std::move(m)) {
  if (mat.rows() != codomain.dim() || mat.cols() != domain.dim())
    throw ShapeError("OpMatrix: " + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                     " entries for " + std::to_string(codomain.dim()) + "x" +
                     std::to_string(domain.dim()) + " operator");
}

OpMatrix OpMatrix::identity(const SpaceDescriptor& s) {
  return OpMatrix(s, s, Matrix::Identity(s.dim(), s.dim()));
}

OpMatrix OpMatrix::zero(const SpaceDescriptor& dom, const SpaceDescriptor& cod) {
  return OpMatrix(dom, cod, Matrix::Zero(cod.dim(), dom.dim()));
}

OpMatrix OpMatrix::adjoint() const { return OpMatrix(codomain, domain, mat.adjoint()); }

OpMatrix operator*(const OpMatrix& a, const OpMatrix& b) {
  if (b.codomain != a.domain) throw ShapeError("compose: domain/codomain mismatch");
  return OpMatrix(b.domain, a.codomain, a.mat * b.mat);
}

OpMatrix operator+(const OpMatrix& a, const OpMatrix& b) {
  if (a.domain != b.domain || a.codomain != b.codomain) throw ShapeError("add: space mismatch");
  return OpMatrix(a.domain, a.codomain, a.mat + b.mat);
}

OpMatrix operator-(const OpMatrix& a, const OpMatrix& b) {
  if (a.domain != b.domain || a.codomain != b.codomain) throw ShapeError("subtract: space mismatch");
  return OpMatrix(a.domain, a.codomain, a.mat - b.mat);
}

OpMatrix operator*(Complex scalar, const OpMatrix& a) {
  return OpMatrix(a.domain, a.codomain, scalar * a.mat);
}

FourierVector operator*(const OpMatrix& a, const FourierVector& h) {
  if (h.space != a.domain) throw ShapeError("apply: vector not in operator domain");
  return FourierVector(a.codomain, a.mat * h.coeffs);
}

OpMatrix direct_sum(const OpMatrix& a, const OpMatrix& b) {
  SpaceDescriptor dom = SpaceDescriptor::sum(a.domain, b.domain);
  SpaceDescriptor cod = SpaceDescriptor::sum(a.codomain, b.codomain);
  Matrix m = Matrix::Zero(cod.dim(), dom.dim());
  m.topLeftCorner(a.mat.rows(), a.mat.cols()) = a.mat;
  m.bottomRightCorner(b.mat.rows(), b.mat.cols()) = b.mat;
  return OpMatrix(dom, cod, std::move(m));
}

OpMatrix shift(const SpaceDescriptor& space) {
  if (space.kind == SpaceKind::DirectSum)
    throw UnsupportedSpaceError("shift: build parts separately and use direct_sum");
  const int f = space.fiber_dim;
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = space.min_mode(); n < space.max_mode(); ++n) {
    m.block(space.mode_offset(n + 1), space.mode_offset(n), f, f) = Matrix::Identity(f, f);
  }
  return OpMatrix(space, space, std::move(m));
}

OpMatrix eval_projection(const SpaceDescriptor& space, ProjectionTarget target) {
  (void)target;
  if (space.kind != SpaceKind::HardyTrunc)
    throw UnsupportedSpaceError("eval_projection: Hardy spaces only");
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  const int f = space.fiber_dim;
  m.block(space.mode_offset(0), space.mode_offset(0), f, f) = Matrix::Identity(f, f);
  return OpMatrix(space, space, std::move(m));
}

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Eigen::Index small_side = std::min(a.rows(), a.cols());
  if (small_side <= 48) {
    return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
  }
  // Largest eigenvalue of the Gram matrix; backward stable for the top
  // eigenvalue, so the square root is accurate to ~1e-15 relative.
  Matrix g;
  if (a.rows() >= a.cols())
    g = a.adjoint() * a;
  else
    g = a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double op_norm(const OpMatrix& a) { return op_norm(a.mat); }

double smallest_singular_value(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (std::min(a.rows(), a.cols()) <= 256) {
    const auto sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
    return sv(sv.size() - 1);
  }
  const auto sv = Eigen::BDCSVD<Matrix>(a).singularValues();
  return sv(sv.size() - 1);
}

double bounded_below_margin(const OpMatrix& t) {
  if (!t.is_square()) throw ShapeError("bounded_below_margin: square operator required");
  return smallest_singular_value(t.mat);
}

Matrix matrix_power(const Matrix& a, int k) {
  if (a.rows() != a.cols()) throw ShapeError("matrix_power: square matrix required");
  if (k < 0) throw ShapeError("matrix_power: nonnegative exponent required");
  Matrix acc = Matrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) acc = acc * a;
  return acc;
}

}  // namespace shiftlab
