#include "shiftlab/zspaces.hpp"

#include <cmath>
#include <numbers>

#include "shiftlab/rng.hpp"

namespace shiftlab {

SymbolCoeffs::SymbolCoeffs(std::vector<Matrix> b) : blocks(std::move(b)) {
  if (blocks.empty()) throw ShapeError("SymbolCoeffs: at least one block required");
  for (const auto& m : blocks)
    if (m.rows() != blocks.front().rows() || m.cols() != blocks.front().cols())
      throw ShapeError("SymbolCoeffs: inconsistent block shapes");
}

Matrix SymbolCoeffs::block(int n) const {
  if (n < 0 || n >= length()) return Matrix::Zero(fiber_rows(), fiber_cols());
  return blocks[n];
}

OpMatrix toeplitz_matrix(const SymbolCoeffs& sym, int n) {
  const int e = sym.fiber_rows(), f = sym.fiber_cols();
  const SpaceDescriptor dom = SpaceDescriptor::hardy(n, f);
  const SpaceDescriptor cod = SpaceDescriptor::hardy(n, e);
  Matrix m = Matrix::Zero(cod.dim(), dom.dim());
  for (int row = 0; row <= n; ++row)
    for (int col = row; col <= n && col - row < sym.length(); ++col)
      m.block(static_cast<Eigen::Index>(row) * e, static_cast<Eigen::Index>(col) * f, e, f) =
          sym.block(col - row);
  return OpMatrix(dom, cod, std::move(m));
}

OpMatrix hankel_matrix(const SymbolCoeffs& sym, int n) {
  const int e = sym.fiber_rows(), f = sym.fiber_cols();
  const SpaceDescriptor dom = SpaceDescriptor::hardy(n, f);
  const SpaceDescriptor cod = SpaceDescriptor::hardy(n, e);
  Matrix m = Matrix::Zero(cod.dim(), dom.dim());
  for (int row = 0; row <= n; ++row)
    for (int col = 0; col <= n && row + col < sym.length(); ++col)
      m.block(static_cast<Eigen::Index>(row) * e, static_cast<Eigen::Index>(col) * f, e, f) =
          sym.block(row + col);
  return OpMatrix(dom, cod, std::move(m));
}

OpMatrix symbol_row(const SymbolCoeffs& sym, int n) {
  const int e = sym.fiber_rows(), f = sym.fiber_cols();
  const SpaceDescriptor dom = SpaceDescriptor::hardy(n, f);
  const SpaceDescriptor cod = SpaceDescriptor::hardy(0, e);
  Matrix m = Matrix::Zero(e, dom.dim());
  for (int col = 0; col <= n && col < sym.length(); ++col)
    m.middleCols(static_cast<Eigen::Index>(col) * f, f) = sym.block(col);
  return OpMatrix(dom, cod, std::move(m));
}

ZssReport zss_identity_check(const SymbolCoeffs& sym, int n, int batch, std::uint64_t seed) {
  if (n < 2) throw ShapeError("zss_identity_check: n >= 2 required");
  if (2 * (sym.length() - 1) > n)
    throw ShapeError("zss_identity_check: symbol length must be <= n/2 + 1");

  const int f = sym.fiber_cols();
  const SpaceDescriptor dom = SpaceDescriptor::hardy(n, f);
  const OpMatrix tx = toeplitz_matrix(sym, n);
  const OpMatrix hx = hankel_matrix(sym, n);
  const OpMatrix x = symbol_row(sym, n);
  const OpMatrix s = shift(dom);
  const OpMatrix s_adj = s.adjoint();

  ZssReport rep;
  Rng rng(seed);
  for (int b = 0; b < batch; ++b) {
    FourierVector h = FourierVector::zero(dom);
    for (int mode = 0; mode <= n / 2; ++mode) h.set_mode(mode, rng.gaussian_vector(f));

    double sum_adj = 0.0, sum_fwd = 0.0;
    FourierVector cur_adj = h, cur_fwd = h;
    for (int k = 0; k <= n; ++k) {
      sum_adj += (x * cur_adj).coeffs.squaredNorm();
      sum_fwd += (x * cur_fwd).coeffs.squaredNorm();
      cur_adj = s_adj * cur_adj;
      cur_fwd = s * cur_fwd;
    }
    rep.toeplitz_gap = std::max(rep.toeplitz_gap, std::abs(sum_adj - (tx * h).coeffs.squaredNorm()));
    rep.hankel_gap = std::max(rep.hankel_gap, std::abs(sum_fwd - (hx * h).coeffs.squaredNorm()));
  }
  return rep;
}

Complex XiFunction::hat(int k) const {
  const int idx = k - hat_min_mode;
  if (idx < 0 || idx >= static_cast<int>(xi_hat.size())) return Complex(0, 0);
  return xi_hat[idx];
}

namespace {

// normalized coefficients (1/2pi) int g e^{-ikt} dt for k = k_min..k_max by
// the periodic midpoint rule
std::vector<Complex> quadrature_hats(const std::vector<double>& grid,
                                     const std::vector<double>& vals, int k_min, int k_max) {
  const std::size_t m = grid.size();
  std::vector<Complex> phase(m), step(m);
  for (std::size_t j = 0; j < m; ++j) {
    phase[j] = std::exp(Complex(0, -double(k_min) * grid[j]));
    step[j] = std::exp(Complex(0, -grid[j]));
  }
  std::vector<Complex> out;
  out.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) {
    Complex acc(0, 0);
    for (std::size_t j = 0; j < m; ++j) acc += vals[j] * phase[j];
    out.push_back(acc / double(m));
    if (k < k_max)
      for (std::size_t j = 0; j < m; ++j) phase[j] *= step[j];
  }
  return out;
}

}  // namespace

XiFunction make_xi(int m_grid, int n_modes, const std::function<double(double)>& profile) {
  if (m_grid % 2 != 0) throw ShapeError("xi grid: even point count required");
  XiFunction xi;
  xi.grid.resize(m_grid);
  xi.values.resize(m_grid);
  const double h = 2.0 * std::numbers::pi / m_grid;
  for (int j = 0; j < m_grid; ++j) {
    // half-cell offset keeps the grid clear of t = 0
    xi.grid[j] = -std::numbers::pi + (j + 0.5) * h;
    xi.values[j] =
        profile ? profile(xi.grid[j]) : std::pow(std::abs(xi.grid[j]), -1.0 / 3.0);
    if (!(xi.values[j] > 0.0))
      throw ShapeError("xi profile: positive values required on the grid");
  }
  xi.hat_min_mode = -n_modes;
  xi.xi_hat = quadrature_hats(xi.grid, xi.values, -n_modes, n_modes);
  xi.l2_norm_sq = 0.0;
  for (double v : xi.values) xi.l2_norm_sq += v * v * h;
  return xi;
}

XiReport counterexample_xi(int m_grid, int n_modes,
                           const std::function<double(double)>& profile) {
  if (n_modes < 1) throw ShapeError("counterexample_xi: n_modes >= 1 required");
  if (m_grid < 8 * n_modes)
    throw ShapeError("counterexample_xi: grid too coarse, need m_grid >= 8*n_modes");

  XiReport rep;
  rep.xi = make_xi(m_grid, n_modes, profile);

  std::vector<double> sq(rep.xi.values.size());
  for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = rep.xi.values[j] * rep.xi.values[j];
  const auto hats = quadrature_hats(rep.xi.grid, sq, 0, n_modes);

  rep.profile.resize(n_modes + 1);
  double acc = 0.0;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k <= n_modes; ++k) {
    // plain dt pairing: <xi^2, e^{ikt}> = 2pi * normalized coefficient
    acc += std::norm(two_pi * hats[k]);
    rep.profile[k] = acc;
  }
  return rep;
}

ObstructionReport obstruction_example(int n, int m_grid, int profile_n) {
  if (n < 4) throw ShapeError("obstruction_example: n >= 4 required");
  const SpaceDescriptor hardy = SpaceDescriptor::hardy(n);
  const SpaceDescriptor leb = SpaceDescriptor::lebesgue(n);

  const OpMatrix t = direct_sum(shift(hardy).adjoint(), shift(leb));
  const SpaceDescriptor dom = t.domain;

  const XiFunction xi = make_xi(m_grid, n);

  // X(h1 (+) h2) = h1(0) + <h2, xi>; in mode coordinates the pairing row is
  // conj(xi_hat(k)) over the Lebesgue modes
  Matrix xm = Matrix::Zero(1, dom.dim());
  xm(0, hardy.mode_offset(0)) = 1.0;
  const int leb_off = dom.part_offset(1);
  for (int k = -n; k <= n; ++k)
    xm(0, leb_off + leb.mode_offset(k)) = std::conj(xi.hat(k));
  const OpMatrix x(dom, SpaceDescriptor::hardy(0, 1), std::move(xm));

  ObstructionReport rep;
  FourierVector v = FourierVector::zero(dom);
  v.coeffs(hardy.mode_offset(0)) = 1.0;
  rep.kernel_value = (x * v).coeffs.norm() / v.norm();
  rep.x_norm = op_norm(x);
  rep.membership_profile = membership_split(x, t, 1, profile_n).residual_profile;
  rep.x_profile = z_profile(x, t, profile_n);
  return rep;
}

}  // namespace shiftlab
