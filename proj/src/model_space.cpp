#include "shiftlab/model_space.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace shiftlab {

namespace {

constexpr double kRankTol = 1e-10;

// first rank columns of Q from a column-pivoted QR
Matrix orthonormal_columns(const Matrix& cols) {
  if (cols.cols() == 0) return Matrix(cols.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(cols);
  qr.setThreshold(kRankTol);
  const Eigen::Index rank = qr.rank();
  Matrix thin_q = qr.householderQ() * Matrix::Identity(cols.rows(), rank);
  return thin_q;
}

}  // namespace

ScalarSymbol::ScalarSymbol(std::vector<Complex> zeros_in, double scale_in)
    : zeros(std::move(zeros_in)), scale(scale_in) {
  if (!(scale > 0.0) || scale > 1.0)
    throw ConstructionError("ScalarSymbol: scale in (0, 1] required");
  for (const auto& a : zeros)
    if (std::abs(a) >= 1.0)
      throw ConstructionError("ScalarSymbol: zeros must lie in the open disc");
}

Complex ScalarSymbol::value(Complex z) const {
  Complex acc(scale, 0.0);
  for (const auto& a : zeros) {
    if (std::abs(a) == 0.0) {
      acc *= z;
    } else {
      acc *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
    }
  }
  return acc;
}

std::vector<Complex> ScalarSymbol::fourier_coeffs(int n) const {
  if (n < 0) throw ShapeError("fourier_coeffs: nonnegative order required");
  std::vector<Complex> acc(n + 1, Complex(0, 0));
  acc[0] = scale;
  std::vector<Complex> factor(n + 1), next(n + 1);
  for (const auto& a : zeros) {
    std::fill(factor.begin(), factor.end(), Complex(0, 0));
    if (std::abs(a) == 0.0) {
      if (n >= 1) factor[1] = 1.0;
    } else {
      // (|a|/a)(a - z)/(1 - conj(a) z) = |a| + (|a|/a)(|a|^2 - 1) sum_{k>=1} conj(a)^(k-1) z^k
      factor[0] = std::abs(a);
      const Complex lead = (std::abs(a) / a) * (std::norm(a) - 1.0);
      Complex pow(1.0, 0.0);
      for (int k = 1; k <= n; ++k) {
        factor[k] = lead * pow;
        pow *= std::conj(a);
      }
    }
    std::fill(next.begin(), next.end(), Complex(0, 0));
    for (int i = 0; i <= n; ++i) {
      if (acc[i] == Complex(0, 0)) continue;
      for (int j = 0; i + j <= n; ++j) next[i + j] += acc[i] * factor[j];
    }
    acc.swap(next);
  }
  return acc;
}

double ScalarSymbol::defect() const { return std::sqrt(std::max(0.0, 1.0 - scale * scale)); }

double boundary_modulus_gap(const ScalarSymbol& symbol, int m_grid) {
  double worst = 0.0;
  for (int j = 0; j < m_grid; ++j) {
    const double t = 2.0 * std::numbers::pi * (j + 0.5) / m_grid;
    const double mod = std::abs(symbol.value(Complex(std::cos(t), std::sin(t))));
    worst = std::max(worst, std::abs(mod - symbol.scale));
  }
  return worst;
}

int ModelSpace::hardy_index(int mode) const {
  return ambient.parts[0].mode_offset(mode);
}

int ModelSpace::lebesgue_index(int mode) const {
  return ambient.part_offset(1) + ambient.parts[1].mode_offset(mode);
}

ModelSpace build_model_space(const ScalarSymbol& symbol, int n) {
  const int deg = symbol.degree();
  if (n < 2 * deg + 8)
    throw UnsupportedSpaceError("build_model_space: truncation too small, need n >= 2*deg + 8");

  const int buffer = std::max(8, 2 * deg);
  const SpaceDescriptor hardy = SpaceDescriptor::hardy(n);
  const SpaceDescriptor leb = SpaceDescriptor::lebesgue(n);

  ModelSpace ms{symbol, n, buffer, SpaceDescriptor::sum(hardy, leb),
                Matrix(), Matrix(), Matrix(), Matrix()};
  const int dim = ms.ambient_dim();
  const int leb_off = ms.ambient.part_offset(1);

  const std::vector<Complex> th = symbol.fourier_coeffs(n);
  const double delta = symbol.defect();

  const int k_top = n - buffer;
  Matrix m_cols = Matrix::Zero(dim, k_top + 1);
  for (int k = 0; k <= k_top; ++k) {
    for (int m = k; m <= n; ++m) m_cols(hardy.mode_offset(m), k) = th[m - k];
    m_cols(leb_off + leb.mode_offset(k), k) = delta;
  }
  ms.basis_m = orthonormal_columns(m_cols);

  // interior window: Hardy modes <= N - B together with the Delta-closure
  // directions at Lebesgue modes |m| <= N - B
  Matrix w_cols = Matrix::Zero(dim, (k_top + 1) + (2 * k_top + 1));
  int c = 0;
  for (int m = 0; m <= k_top; ++m) w_cols(hardy.mode_offset(m), c++) = 1.0;
  for (int m = -k_top; m <= k_top; ++m) w_cols(leb_off + leb.mode_offset(m), c++) = delta;

  const Matrix projected = w_cols - ms.basis_m * (ms.basis_m.adjoint() * w_cols);
  ms.basis_h = orthonormal_columns(projected);

  ms.ambient_shift = direct_sum(shift(hardy), shift(leb)).mat;
  ms.s_theta = ms.basis_h.adjoint() * ms.ambient_shift * ms.basis_h;

  const double cross = op_norm(Matrix(ms.basis_m.adjoint() * ms.basis_h));
  if (cross > 1e-8)
    throw ConstructionError("build_model_space: complement basis not orthogonal to M(Theta)");
  return ms;
}

ProjectionFormulaReport projection_formula_check(const ModelSpace& ms, Complex e_star) {
  const int dim = ms.ambient_dim();
  const std::vector<Complex> th = ms.symbol.fourier_coeffs(ms.n);
  const Complex theta0_star = std::conj(ms.symbol.value(Complex(0, 0)));
  const double delta = ms.symbol.defect();

  Vector v = Vector::Zero(dim);
  v(ms.hardy_index(0)) = e_star;

  Vector formula_m = Vector::Zero(dim);
  for (int m = 0; m <= ms.n; ++m) formula_m(ms.hardy_index(m)) = th[m] * theta0_star * e_star;
  formula_m(ms.lebesgue_index(0)) = delta * theta0_star * e_star;

  ProjectionFormulaReport rep;
  const Vector pm = ms.basis_m * (ms.basis_m.adjoint() * v);
  rep.gap_m = (pm - formula_m).norm();
  const Vector ph = ms.basis_h * (ms.basis_h.adjoint() * v);
  rep.gap_h = (ph - (v - formula_m)).norm();
  return rep;
}

RangeCheckReport range_check(const ModelSpace& ms, const Vector& f_coords, double tol) {
  if (f_coords.size() != ms.dim()) throw ShapeError("range_check: coordinate size mismatch");
  RangeCheckReport rep;
  Vector f = f_coords;
  if (f.norm() > 0) f /= f.norm();

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(ms.s_theta);
  const Vector x = cod.solve(f);
  rep.in_range_residual = (ms.s_theta * x - f).norm();

  const Complex theta0 = ms.symbol.value(Complex(0, 0));
  const Complex f1_0 = (ms.to_ambient(f))(ms.hardy_index(0));
  if (std::abs(theta0) > 1e-12)
    rep.condition_holds = true;
  else
    rep.condition_holds = std::abs(f1_0) <= tol;
  rep.consistent = (rep.in_range_residual <= tol) == rep.condition_holds;
  return rep;
}

StarPowerReport star_power_check(const ModelSpace& ms, int n_pow, const Vector& h_coords) {
  if (n_pow < 0 || n_pow > ms.n) throw ShapeError("star_power_check: power outside truncation");
  if (h_coords.size() != ms.dim()) throw ShapeError("star_power_check: coordinate size mismatch");

  const Vector h = ms.to_ambient(h_coords);
  const double scale = std::max(h.norm(), 1e-300);

  // basis_H carries Lebesgue modes down to -(N - B) only; mass within n_pow of
  // that bottom edge is pushed outside the window by the adjoint and the
  // formula no longer makes sense on the truncation
  const int k_bot = -(ms.n - ms.buffer);
  double edge = 0.0;
  for (int m = k_bot; m < k_bot + n_pow; ++m) edge += std::norm(h(ms.lebesgue_index(m)));
  if (std::sqrt(edge) > 1e-8 * scale)
    throw HypothesisError("star_power_check: vector not supported away from the edge");

  Vector formula = Vector::Zero(ms.ambient_dim());
  for (int m = 0; m + n_pow <= ms.n; ++m)
    formula(ms.hardy_index(m)) = h(ms.hardy_index(m + n_pow));
  for (int m = -ms.n; m + n_pow <= ms.n; ++m)
    formula(ms.lebesgue_index(m)) = h(ms.lebesgue_index(m + n_pow));

  Vector lhs_coords = h_coords;
  const Matrix s_theta_adj = ms.s_theta.adjoint();
  for (int k = 0; k < n_pow; ++k) lhs_coords = s_theta_adj * lhs_coords;
  const Vector lhs = ms.to_ambient(lhs_coords);

  StarPowerReport rep;
  rep.gap = (lhs - formula).norm();
  rep.mode0_gap = std::abs(lhs(ms.hardy_index(0)) - h(ms.hardy_index(n_pow))) +
                  std::abs(lhs(ms.lebesgue_index(0)) - h(ms.lebesgue_index(n_pow)));
  return rep;
}

DecomposeResult decompose_x(const ModelSpace& ms, const Matrix& x, int profile_n) {
  if (x.cols() != ms.dim()) throw ShapeError("decompose_x: coordinate size mismatch");

  Matrix j0 = Matrix::Zero(ms.ambient_dim(), ms.ambient_dim());
  j0(ms.hardy_index(0), ms.hardy_index(0)) = 1.0;
  const Matrix q0 = ms.basis_h.adjoint() * j0 * ms.basis_h;

  DecomposeResult out;
  out.x1 = x * q0;
  out.x2 = x - out.x1;
  out.x_norm = op_norm(x);
  const Matrix s_adj = ms.s_theta.adjoint();
  out.profile1 = z_profile(out.x1, s_adj, profile_n);
  const Matrix factor = least_squares_right_factor(out.x2, s_adj);
  out.factor_residual = (out.x2 - factor * s_adj).norm();
  return out;
}

}  // namespace shiftlab
