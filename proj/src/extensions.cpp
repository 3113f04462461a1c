#include "shiftlab/extensions.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace shiftlab {

namespace {

double lambda_max_psd(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

double ZProfile::min_value() const {
  double m = values.empty() ? 0.0 : values.front();
  for (double v : values) m = std::min(m, v);
  return m;
}

bool ZProfile::flat_after(int burn_in, double rel_tol) const {
  if (values.empty()) return true;
  const int start = std::min<int>(burn_in, static_cast<int>(values.size()) - 1);
  const double tail = values.back();
  const double scale = std::max(tail, 1e-300);
  return (tail - values[start]) / scale <= rel_tol;
}

ZProfile z_profile(const Matrix& x, const Matrix& t, int n) {
  if (t.rows() != t.cols()) throw ShapeError("z_profile: square T required");
  if (x.cols() != t.rows()) throw ShapeError("z_profile: X must act on the domain of T");
  if (n < 0) throw ShapeError("z_profile: nonnegative truncation required");

  ZProfile p;
  p.values.reserve(n + 1);
  Matrix cur = x;  // X T^k
  Matrix gram = Matrix::Zero(t.cols(), t.cols());
  for (int k = 0; k <= n; ++k) {
    gram += cur.adjoint() * cur;
    p.values.push_back(std::sqrt(lambda_max_psd(gram)));
    if (k < n) cur = cur * t;
  }
  return p;
}

ZProfile z_profile(const OpMatrix& x, const OpMatrix& t, int n) {
  if (x.domain != t.domain) throw ShapeError("z_profile: X must act on the domain of T");
  return z_profile(x.mat, t.mat, n);
}

Matrix least_squares_right_factor(const Matrix& y, const Matrix& m) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m.transpose());
  return cod.solve(y.transpose()).transpose();
}

OpMatrix delta_x(const Polynomial& phi, const OpMatrix& t1, const OpMatrix& x,
                 const OpMatrix& t2) {
  if (!t1.is_square() || !t2.is_square()) throw ShapeError("delta_x: square T1, T2 required");
  if (x.domain != t2.domain || x.codomain != t1.domain)
    throw ShapeError("delta_x: X must map the T2 space into the T1 space");

  const int d = phi.degree();
  Matrix acc = Matrix::Zero(x.mat.rows(), x.mat.cols());
  // s_k = sum_{j=0}^{k-1} T1^j X T2^(k-1-j), built by
  // s_{k+1} = T1 s_k + X T2^k
  Matrix s = Matrix::Zero(x.mat.rows(), x.mat.cols());
  Matrix t2_pow = Matrix::Identity(t2.mat.rows(), t2.mat.cols());
  for (int k = 1; k <= d; ++k) {
    s = t1.mat * s + x.mat * t2_pow;
    if (phi.coeff(k) != Complex(0, 0)) acc += phi.coeff(k) * s;
    if (k < d) t2_pow = t2_pow * t2.mat;
  }
  return OpMatrix(x.domain, x.codomain, std::move(acc));
}

OpMatrix block_r(const OpMatrix& t1, const OpMatrix& x, const OpMatrix& t2) {
  if (!t1.is_square() || !t2.is_square()) throw ShapeError("block_r: square T1, T2 required");
  if (x.domain != t2.domain || x.codomain != t1.domain)
    throw ShapeError("block_r: X must map the T2 space into the T1 space");
  OpMatrix r = direct_sum(t1, t2);
  r.mat.topRightCorner(x.mat.rows(), x.mat.cols()) = x.mat;
  return r;
}

DeltaBoundReport delta_bound_check(const Polynomial& phi, const OpMatrix& t1, const OpMatrix& x,
                                   const OpMatrix& t2, double c1, double c2) {
  DeltaBoundReport rep;
  rep.lhs = op_norm(delta_x(phi, t1, x, t2));
  const double d = phi.degree();
  rep.rhs = c1 * c2 * d * (d + 1.0) / 2.0 * op_norm(x) * sup_norm_estimate(phi) * kSupSafety;
  rep.pass = rep.lhs <= rep.rhs;
  return rep;
}

LambdaStack build_lambda(const std::vector<OpMatrix>& x_rows, const OpMatrix& t,
                         const OpMatrix& l, int n) {
  if (!t.is_square()) throw ShapeError("build_lambda: square T required");
  if (l.domain != t.domain) throw ShapeError("build_lambda: L must act on the domain of T");
  if (n < 0) throw ShapeError("build_lambda: nonnegative truncation required");
  for (const auto& xr : x_rows)
    if (xr.domain != t.domain || xr.codomain != l.codomain)
      throw ShapeError("build_lambda: rows must map dom T into the L target");

  auto row = [&](int k) -> Matrix {
    if (k < 0 || k >= static_cast<int>(x_rows.size()))
      return Matrix::Zero(l.mat.rows(), l.mat.cols());
    return x_rows[k].mat;
  };

  std::vector<Matrix> t_pow(n + 1);
  t_pow[0] = Matrix::Identity(t.mat.rows(), t.mat.cols());
  for (int j = 1; j <= n; ++j) t_pow[j] = t_pow[j - 1] * t.mat;

  LambdaStack out;
  out.rows.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    Matrix lk = -(l.mat * t_pow[k]);
    for (int j = 0; j <= k - 1; ++j) lk += row(k - 1 - j) * t_pow[j];
    out.rows.emplace_back(t.domain, l.codomain, std::move(lk));
  }

  for (int k = 0; k + 1 <= n; ++k) {
    const Matrix gap = out.rows[k + 1].mat - out.rows[k].mat * t.mat - row(k);
    const double scale = 1.0 + op_norm(row(k));
    if (op_norm(gap) > 1e-10 * scale)
      throw ConstructionError("build_lambda: commutator recursion violated at row " +
                              std::to_string(k));
  }

  const SpaceDescriptor target = SpaceDescriptor::hardy(n, static_cast<int>(l.mat.rows()));
  Matrix stacked(target.dim(), t.mat.cols());
  for (int k = 0; k <= n; ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * l.mat.rows(), l.mat.rows()) =
        out.rows[k].mat;
  out.lambda = OpMatrix(t.domain, target, std::move(stacked));
  return out;
}

OpMatrix innercrit_reduce(const std::vector<OpMatrix>& x_rows, const OpMatrix& t, int n) {
  if (!t.is_square()) throw ShapeError("innercrit_reduce: square T required");
  if (n < 1) throw ShapeError("innercrit_reduce: n >= 1 required");
  if (x_rows.empty()) throw ShapeError("innercrit_reduce: rows required");
  for (const auto& xr : x_rows)
    if (xr.domain != t.domain) throw ShapeError("innercrit_reduce: row domain mismatch");

  const Matrix tn = matrix_power(t.mat, n);
  double worst = 0.0;
  for (std::size_t m = n; m < x_rows.size(); ++m)
    worst = std::max(worst, op_norm(Matrix(x_rows[m].mat * tn)));
  if (worst > 1e-8)
    throw HypothesisError("innercrit_reduce: tail rows do not vanish against T^n (residual " +
                          std::to_string(worst) + ")");

  Matrix acc = Matrix::Zero(x_rows[0].mat.rows(), x_rows[0].mat.cols());
  Matrix t_pow = Matrix::Identity(t.mat.rows(), t.mat.cols());
  for (int j = n - 1; j >= 0; --j) {
    if (j < static_cast<int>(x_rows.size())) acc += x_rows[j].mat * t_pow;
    t_pow = t_pow * t.mat;
  }
  // acc = sum_j X_j T^(n-1-j): the loop pairs row j with power n-1-j
  return OpMatrix(t.domain, x_rows[0].codomain, std::move(acc));
}

MembershipSplit membership_split(const OpMatrix& y, const OpMatrix& t, int n_power,
                                 int profile_n) {
  if (!t.is_square()) throw ShapeError("membership_split: square T required");
  if (y.domain != t.domain) throw ShapeError("membership_split: Y must act on the domain of T");
  if (n_power < 0) throw ShapeError("membership_split: nonnegative power required");

  const Matrix m = matrix_power(t.mat, n_power);
  MembershipSplit out;
  Matrix lmat = least_squares_right_factor(y.mat, m);
  out.residual = OpMatrix(y.domain, y.codomain, y.mat - lmat * m);
  out.factor = OpMatrix(y.domain, y.codomain, std::move(lmat));
  out.residual_profile = z_profile(out.residual, t, profile_n);
  return out;
}

SylvesterResult sylvester_residual(const OpMatrix& t1, const OpMatrix& t2, const OpMatrix& x) {
  if (!t1.is_square() || !t2.is_square())
    throw ShapeError("sylvester_residual: square T1, T2 required");
  if (x.domain != t2.domain || x.codomain != t1.domain)
    throw ShapeError("sylvester_residual: X must map the T2 space into the T1 space");

  const Eigen::Index n1 = t1.mat.rows();
  const Eigen::Index n2 = t2.mat.rows();
  // vec(T1 L - L T2) = (I (x) T1 - T2^T (x) I) vec(L), column-major vec
  Matrix k = kron(Matrix::Identity(n2, n2), t1.mat) -
             kron(t2.mat.transpose(), Matrix::Identity(n1, n1));
  Eigen::Map<const Vector> xvec(x.mat.data(), x.mat.size());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(k);
  Vector lvec = cod.solve(xvec);

  SylvesterResult out;
  Matrix lmat = Eigen::Map<Matrix>(lvec.data(), n1, n2);
  out.residual = (t1.mat * lmat - lmat * t2.mat - x.mat).norm();
  out.solution = OpMatrix(x.domain, x.codomain, std::move(lmat));
  return out;
}

SaSplit sa_split(const OpMatrix& t, const OpMatrix& x, int profile_n) {
  if (!t.is_square()) throw ShapeError("sa_split: square T required");
  if (x.domain != t.domain) throw ShapeError("sa_split: X must act on the domain of T");

  const Eigen::Index n = t.mat.rows();
  Eigen::JacobiSVD<Matrix> svd(t.mat, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = (sv.size() ? sv(0) : 0.0) * n * 1e-14;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol) ++rank;

  const Matrix v = svd.matrixV();
  const Matrix v_range = v.leftCols(rank);            // spans (ker T)-perp = T* H
  const Matrix v_null = v.rightCols(n - rank);        // spans ker T
  const Matrix p_null = v_null * v_null.adjoint();
  const Matrix p_perp = Matrix::Identity(n, n) - p_null;

  SaSplit out;
  out.range_residual = op_norm(Matrix(p_null * t.mat));
  out.corange_residual = op_norm(Matrix(p_perp - v_range * v_range.adjoint()));
  if (std::max(out.range_residual, out.corange_residual) > 1e-8)
    throw HypothesisError("sa_split: T H inside (ker T)-perp inside T* H fails numerically");

  out.x1 = OpMatrix(x.domain, x.codomain, x.mat * p_perp);
  out.x2 = OpMatrix(x.domain, x.codomain, x.mat * p_null);
  out.x2_profile = z_profile(out.x2, t, profile_n);
  out.x1_factor_residual = op_norm(membership_split(out.x1, t, 1, 0).residual);
  return out;
}

}  // namespace shiftlab
