#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "shiftlab/extensions.hpp"
#include "shiftlab/spaces.hpp"

namespace shiftlab {

// block coefficients X_0, X_1, ..., all of one fiber shape
struct SymbolCoeffs {
  std::vector<Matrix> blocks;

  explicit SymbolCoeffs(std::vector<Matrix> b);

  int fiber_rows() const { return static_cast<int>(blocks.front().rows()); }
  int fiber_cols() const { return static_cast<int>(blocks.front().cols()); }
  int length() const { return static_cast<int>(blocks.size()); }
  // zero beyond the stored range
  Matrix block(int n) const;
};

// block (n, m) = X_{m-n} for m >= n, zero below the diagonal
OpMatrix toeplitz_matrix(const SymbolCoeffs& sym, int n);
// block (n, m) = X_{n+m}
OpMatrix hankel_matrix(const SymbolCoeffs& sym, int n);

// row operator h -> sum_n X_n h^(n) from the degree-N Hardy space into the fiber
OpMatrix symbol_row(const SymbolCoeffs& sym, int n);

struct ZssReport {
  double toeplitz_gap = 0.0;  // max | sum_k |X S*^k h|^2 - |T_X h|^2 |
  double hankel_gap = 0.0;    // max | sum_k |X S^k h|^2  - |H_X h|^2 |
};

// identity batch over random h supported on modes <= N/2
ZssReport zss_identity_check(const SymbolCoeffs& sym, int n, int batch = 16,
                             std::uint64_t seed = 1234);

struct XiFunction {
  std::vector<double> grid;       // half-cell-offset points of (-pi, pi]
  std::vector<double> values;     // xi on the grid
  std::vector<Complex> xi_hat;    // (1/2pi) int xi e^{-ikt} dt, k = -K..K
  int hat_min_mode = 0;
  double l2_norm_sq = 0.0;        // quadrature of xi^2 over (-pi, pi)

  Complex hat(int k) const;
};

struct XiReport {
  XiFunction xi;
  // profile[N] = sum_{n=0}^{N} |<xi^2, e^{int}>|^2 with the plain dt pairing
  std::vector<double> profile;
};

// sample a positive profile on the half-cell-offset circle grid and take its
// normalized Fourier coefficients up to order n_modes; the default profile is
// |t|^(-1/3)
XiFunction make_xi(int m_grid, int n_modes,
                   const std::function<double(double)>& profile = {});

// with the default profile, xi is square-integrable while xi^2 is not, so the
// partial sums of plain Fourier pairings of xi^2 keep growing
XiReport counterexample_xi(int m_grid, int n_modes,
                           const std::function<double(double)>& profile = {});

struct ObstructionReport {
  double kernel_value = 0.0;            // |X v| / |v| for v spanning ker of the Hardy part
  ZProfile membership_profile;          // residual profile of the least-squares split X ~ L T
  ZProfile x_profile;                   // growth evidence for X itself
  double x_norm = 0.0;
};

// T = (adjoint shift) (+) (Lebesgue shift), X(h1 (+) h2) = h1(0) + <h2, xi>
ObstructionReport obstruction_example(int n, int m_grid, int profile_n);

}  // namespace shiftlab
