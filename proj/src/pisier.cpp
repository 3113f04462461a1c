#include "shiftlab/pisier.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "shiftlab/funcalc.hpp"

namespace shiftlab {

FockTrunc::FockTrunc(int levels) : n_max(levels) {
  if (levels < 1 || levels > 20) throw UnsupportedSpaceError("FockTrunc: 1 <= levels <= 20");
}

OpMatrix car_generator(int k, const FockTrunc& fock) {
  if (k < 0) throw ShapeError("car_generator: k >= 0 required");
  const SpaceDescriptor space = fock.as_space();
  Matrix w = Matrix::Zero(fock.total_dim(), fock.total_dim());
  for (int n = k + 1; n <= fock.n_max; ++n) {
    const int off = fock.level_offset(n);
    const int dim = fock.level_dim(n);
    // basis index bits run tensor-slot 0 at the top bit; the D slot at
    // position k flips bit (n-1-k) from 0 to 1 and the leading V factors
    // contribute the parity of the higher slots
    const int d_bit = 1 << (n - 1 - k);
    for (int j = 0; j < dim; ++j) {
      if (j & d_bit) continue;
      const unsigned lead = static_cast<unsigned>(j) >> (n - k);
      const double sign = (std::popcount(lead) % 2 == 0) ? 1.0 : -1.0;
      w(off + (j | d_bit), off + j) = sign;
    }
  }
  return OpMatrix(space, space, std::move(w));
}

OpMatrix level_support(int k, const FockTrunc& fock) {
  const SpaceDescriptor space = fock.as_space();
  Matrix p = Matrix::Zero(fock.total_dim(), fock.total_dim());
  for (int n = k + 1; n <= fock.n_max; ++n) {
    const int off = fock.level_offset(n);
    const int dim = fock.level_dim(n);
    p.block(off, off, dim, dim).setIdentity();
  }
  return OpMatrix(space, space, std::move(p));
}

CarReport car_relations_check(const FockTrunc& fock, int k_max) {
  if (k_max >= fock.n_max)
    throw ShapeError("car_relations_check: k_max < n_max required so every generator acts");
  CarReport rep;
  std::vector<Matrix> w(k_max + 1);
  for (int k = 0; k <= k_max; ++k) w[k] = car_generator(k, fock).mat;

  for (int j = 0; j <= k_max; ++j) {
    rep.norm_gap = std::max(rep.norm_gap, std::abs(op_norm(w[j]) - 1.0));
    for (int k = 0; k <= k_max; ++k) {
      rep.max_anticomm_gap =
          std::max(rep.max_anticomm_gap, op_norm(Matrix(w[j] * w[k] + w[k] * w[j])));
      Matrix mixed = w[j] * w[k].adjoint() + w[k].adjoint() * w[j];
      if (j == k) mixed -= level_support(k, fock).mat;
      rep.max_mixed_gap = std::max(rep.max_mixed_gap, op_norm(mixed));
    }
  }
  rep.note = "W_k = V^k (x) D (x) I^(n-k-1) on levels n >= k+1; the mixed relation "
             "W_j W_k* + W_k* W_j = delta_jk P holds with P the projection onto those levels";
  return rep;
}

AlphaSequence AlphaSequence::power_law(double p) {
  AlphaSequence a;
  a.rule = Rule::PowerLaw;
  a.power = p;
  return a;
}

AlphaSequence AlphaSequence::finite(std::vector<Complex> coeffs) {
  AlphaSequence a;
  a.rule = Rule::FiniteSupport;
  a.support = std::move(coeffs);
  return a;
}

AlphaSequence AlphaSequence::geometric(double ratio) {
  if (!(ratio > 0.0) || ratio >= 1.0)
    throw ShapeError("AlphaSequence::geometric: ratio in (0,1) required");
  AlphaSequence a;
  a.rule = Rule::Geometric;
  a.ratio = ratio;
  return a;
}

Complex AlphaSequence::at(int k) const {
  if (k < 0) return Complex(0, 0);
  switch (rule) {
    case Rule::PowerLaw:
      return std::pow(double(k + 1), -power);
    case Rule::FiniteSupport:
      return k < static_cast<int>(support.size()) ? support[k] : Complex(0, 0);
    case Rule::Geometric:
      return std::pow(ratio, k);
  }
  return Complex(0, 0);
}

std::string AlphaSequence::describe() const {
  std::ostringstream os;
  switch (rule) {
    case Rule::PowerLaw:
      os << "power_law(" << power << ")";
      break;
    case Rule::FiniteSupport:
      os << "finite_support(len " << support.size() << ")";
      break;
    case Rule::Geometric:
      os << "geometric(" << ratio << ")";
      break;
  }
  return os.str();
}

OpMatrix hankel_x_alpha(const AlphaSequence& alpha, int blocks, const FockTrunc& fock) {
  if (blocks < 1) throw ShapeError("hankel_x_alpha: blocks >= 1 required");
  const int f = fock.total_dim();
  const SpaceDescriptor space = SpaceDescriptor::hardy(blocks - 1, f);
  Matrix x = Matrix::Zero(space.dim(), space.dim());
  // W_m acts only when some level n >= m+1 exists; higher coefficients drop out
  std::vector<Matrix> w(std::min(2 * blocks - 1, fock.n_max));
  for (std::size_t m = 0; m < w.size(); ++m) w[m] = car_generator(static_cast<int>(m), fock).mat;
  for (int i = 0; i < blocks; ++i)
    for (int j = 0; j < blocks; ++j) {
      const int m = i + j;
      if (m >= static_cast<int>(w.size())) continue;
      const Complex a = alpha.at(m);
      if (a == Complex(0, 0)) continue;
      x.block(static_cast<Eigen::Index>(i) * f, static_cast<Eigen::Index>(j) * f, f, f) =
          a * w[m];
    }
  return OpMatrix(space, space, std::move(x));
}

OpMatrix block_r_alpha(const AlphaSequence& alpha, int blocks, const FockTrunc& fock) {
  const OpMatrix x = hankel_x_alpha(alpha, blocks, fock);
  const OpMatrix s = shift(x.domain);
  const OpMatrix r = block_r(s.adjoint(), x, s);

  // adjoint-power identity on vectors clear of the block edges
  const int f = fock.total_dim();
  const int dim = x.domain.dim();
  for (int n = 1; n <= std::min(3, blocks - 1); ++n) {
    const Matrix rn = matrix_power(Matrix(r.mat.adjoint()), n);
    Matrix expected = Matrix::Zero(2 * dim, 2 * dim);
    const Matrix sn = matrix_power(s.mat, n);
    expected.topLeftCorner(dim, dim) = sn;
    expected.bottomLeftCorner(dim, dim) =
        double(n) * x.mat.adjoint() * matrix_power(s.mat, n - 1);
    expected.bottomRightCorner(dim, dim) = matrix_power(Matrix(s.mat.adjoint()), n);
    // restrict to block indices that stay clear of the truncation edge under
    // n shifts, on both the input and the output side
    const int cols = (blocks - n) * f;
    if (cols <= 0) break;
    const Matrix diff = rn - expected;
    const double gap = op_norm(Matrix(diff.block(0, 0, dim + cols, cols))) +
                       op_norm(Matrix(diff.block(0, dim, dim + cols, cols)));
    if (gap > 1e-8)
      throw ConstructionError("block_r_alpha: adjoint-power identity fails at n = " +
                              std::to_string(n));
  }
  return r;
}

double pb_criterion(const AlphaSequence& alpha, int k_max, long long i_tail) {
  if (k_max < 0 || i_tail < k_max) throw ShapeError("pb_criterion: need i_tail >= k_max >= 0");
  // tail sums accumulated from the far end for stability
  double best = 0.0;
  double tail = 0.0;
  std::vector<double> tails(k_max + 1, 0.0);
  for (long long i = i_tail; i >= 0; --i) {
    tail += std::norm(alpha.at(static_cast<int>(std::min<long long>(i, 1 << 30))));
    if (i <= k_max) tails[static_cast<int>(i)] = tail;
  }
  for (int k = 0; k <= k_max; ++k)
    best = std::max(best, double(k + 1) * double(k + 1) * tails[k]);
  return best;
}

double similarity_criterion(const AlphaSequence& alpha, int k_max) {
  double acc = 0.0;
  for (int k = 0; k <= k_max; ++k) acc += double(k + 1) * double(k + 1) * std::norm(alpha.at(k));
  return acc;
}

OmegaReport omega_witness(const FockTrunc& fock, const AlphaSequence& alpha, int blocks) {
  if (fock.n_max < 2) throw UnsupportedSpaceError("omega_witness: n_max >= 2 required");
  if (blocks < 2) throw ShapeError("omega_witness: blocks >= 2 required");
  OmegaReport rep;
  const int f = fock.total_dim();

  Vector omega = Vector::Zero(f);
  omega(fock.level_offset(1)) = 1.0;  // e_1 at level 1

  for (int k = 1; k < fock.n_max; ++k) {
    const Matrix w = car_generator(k, fock).mat;
    rep.w_action_gap = std::max(rep.w_action_gap, (w * omega).norm());
    rep.w_action_gap = std::max(rep.w_action_gap, (w.adjoint() * omega).norm());
  }
  rep.w0_star_norm = (car_generator(0, fock).mat.adjoint() * omega).norm();

  const OpMatrix x = hankel_x_alpha(alpha, blocks, fock);
  const int dim = x.domain.dim();
  for (int n = 2; n <= blocks; ++n) {
    // z^(n-1) w sits in block n-1; each block of X* z^(n-1) w is
    // conj(alpha) W*_{n-1+j} w with index >= 1
    Vector v = Vector::Zero(dim);
    v.segment(static_cast<Eigen::Index>(n - 1) * f, f) = omega;
    rep.xstar_power_gap =
        std::max(rep.xstar_power_gap, double(n) * (x.mat.adjoint() * v).norm());
  }

  // Omega is the pairing of the first component's mode-0 block with w
  Vector omega_vec = Vector::Zero(2 * dim);
  omega_vec.head(f) = omega;
  Matrix omega_row = Matrix::Zero(1, 2 * dim);
  omega_row.row(0).head(f) = omega.adjoint();
  rep.pairing_gap = std::abs((omega_row * omega_vec)(0, 0) - 1.0);

  const OpMatrix r = block_r_alpha(alpha, blocks, fock);
  rep.kernel_gap = (r.mat * omega_vec).norm();

  rep.obstruction_min = 1e300;
  for (int rung = 2; rung <= blocks; rung *= 2) {
    const OpMatrix r_rung = block_r_alpha(alpha, rung, fock);
    Matrix row = Matrix::Zero(1, r_rung.domain.dim());
    row(0, 0) = 1.0;  // pairing against w, which is the first coordinate
    const OpMatrix om(r_rung.domain, SpaceDescriptor::hardy(0, 1), std::move(row));
    const MembershipSplit split = membership_split(om, r_rung, 1, std::min(rung, 8));
    rep.ladder_residuals.push_back(split.residual_profile.min_value());
    rep.obstruction_min = std::min(rep.obstruction_min, split.residual_profile.min_value());
  }
  return rep;
}

std::vector<GrowthRow> growth_experiment(const AlphaSequence& alpha,
                                         const std::vector<std::array<int, 3>>& ladder,
                                         std::uint64_t seed) {
  std::vector<GrowthRow> rows;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto [blocks, n_max, d_max] = ladder[i];
    const FockTrunc fock(n_max);
    if (static_cast<long long>(fock.total_dim()) * blocks > 100000)
      throw ResourceError("growth_experiment: total_dim * blocks exceeds 1e5");
    GrowthRow row;
    row.blocks = blocks;
    row.n_max = n_max;
    row.d_max = d_max;
    const OpMatrix r = block_r_alpha(alpha, blocks, fock);
    row.pb_estimate =
        pb_constant_estimate(r, d_max, 8, seed + static_cast<std::uint64_t>(i)).constant_lower_bound;
    row.pb_crit = pb_criterion(alpha, blocks, 100000);
    row.sim_crit = similarity_criterion(alpha, blocks);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace shiftlab
