#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace shiftlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct UnsupportedSpaceError : Error {
  using Error::Error;
};
struct HypothesisError : Error {
  using Error::Error;
};
struct ConstructionError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

enum class SpaceKind { HardyTrunc, LebesgueTrunc, DirectSum };

// Truncated coefficient space. Hardy keeps modes 0..N, Lebesgue keeps
// modes -N..N; each mode carries a fiber of dimension fiber_dim. Flat
// indexing is (mode - min_mode())*fiber_dim + fiber coordinate, and direct
// sums concatenate their parts.
struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::HardyTrunc;
  int degree_bound = 0;
  int fiber_dim = 1;
  std::vector<SpaceDescriptor> parts;

  static SpaceDescriptor hardy(int degree_bound, int fiber_dim = 1);
  static SpaceDescriptor lebesgue(int degree_bound, int fiber_dim = 1);
  static SpaceDescriptor sum(const SpaceDescriptor& a, const SpaceDescriptor& b);

  int dim() const;
  int num_modes() const;
  int min_mode() const;
  int max_mode() const;
  int mode_offset(int mode) const;
  int part_offset(std::size_t part_index) const;

  bool operator==(const SpaceDescriptor& other) const;
  bool operator!=(const SpaceDescriptor& other) const { return !(*this == other); }

  std::string describe() const;
};

struct FourierVector {
  SpaceDescriptor space;
  Vector coeffs;

  FourierVector() = default;
  FourierVector(SpaceDescriptor s, Vector c);

  static FourierVector zero(const SpaceDescriptor& s);

  // fiber block of a single mode (non-sum spaces)
  Vector mode(int n) const;
  void set_mode(int n, const Vector& value);

  double norm() const { return coeffs.norm(); }
};

// <h, g>, linear in the first argument
Complex inner(const FourierVector& h, const FourierVector& g);

struct OpMatrix {
  SpaceDescriptor domain;
  SpaceDescriptor codomain;
  Matrix mat;

  OpMatrix() = default;
  OpMatrix(SpaceDescriptor dom, SpaceDescriptor cod, Matrix m);

  static OpMatrix identity(const SpaceDescriptor& s);
  static OpMatrix zero(const SpaceDescriptor& dom, const SpaceDescriptor& cod);

  OpMatrix adjoint() const;
  bool is_square() const { return domain == codomain; }
};

OpMatrix operator*(const OpMatrix& a, const OpMatrix& b);
OpMatrix operator+(const OpMatrix& a, const OpMatrix& b);
OpMatrix operator-(const OpMatrix& a, const OpMatrix& b);
OpMatrix operator*(Complex scalar, const OpMatrix& a);
FourierVector operator*(const OpMatrix& a, const FourierVector& h);

// block diagonal on the direct sum of the two domains/codomains
OpMatrix direct_sum(const OpMatrix& a, const OpMatrix& b);

// Coefficient shift. Hardy: mode n -> n+1, the top mode is killed (the
// compression convention for the truncation). Lebesgue: mode n -> n+1 for
// n < N, mode N killed; no wraparound.
OpMatrix shift(const SpaceDescriptor& space);

enum class ProjectionTarget { ConstantFunctions };

// Orthogonal projection of a Hardy space onto its mode-0 fiber.
OpMatrix eval_projection(const SpaceDescriptor& space,
                         ProjectionTarget target = ProjectionTarget::ConstantFunctions);

double op_norm(const Matrix& a);
double op_norm(const OpMatrix& a);

double smallest_singular_value(const Matrix& a);
// smallest singular value of a square operator
double bounded_below_margin(const OpMatrix& t);

Matrix matrix_power(const Matrix& a, int k);

}  // namespace shiftlab
