#pragma once

#include <vector>

#include "shiftlab/funcalc.hpp"
#include "shiftlab/spaces.hpp"

namespace shiftlab {

// zeta_k = operator norm of h -> (X h, X T h, ..., X T^k h), k = 0..N
struct ZProfile {
  std::vector<double> values;

  int truncation() const { return static_cast<int>(values.size()) - 1; }
  double last() const { return values.back(); }
  double min_value() const;
  // constant within rel_tol after the burn-in index
  bool flat_after(int burn_in = 8, double rel_tol = 1e-6) const;
};

ZProfile z_profile(const OpMatrix& x, const OpMatrix& t, int n);
ZProfile z_profile(const Matrix& x, const Matrix& t, int n);

// minimal-norm least-squares L minimizing the Frobenius norm of Y - L*M
Matrix least_squares_right_factor(const Matrix& y, const Matrix& m);

// sum_{k=1}^{d} a_k sum_{j=0}^{k-1} T1^j X T2^(k-1-j)
OpMatrix delta_x(const Polynomial& phi, const OpMatrix& t1, const OpMatrix& x,
                 const OpMatrix& t2);

// [[T1, X], [0, T2]] on the direct sum
OpMatrix block_r(const OpMatrix& t1, const OpMatrix& x, const OpMatrix& t2);

struct DeltaBoundReport {
  double lhs = 0.0;  // |delta_X(phi)|
  double rhs = 0.0;  // C1 C2 d(d+1)/2 |X| |phi|_sampled * safety
  bool pass = false;
};

DeltaBoundReport delta_bound_check(const Polynomial& phi, const OpMatrix& t1, const OpMatrix& x,
                                   const OpMatrix& t2, double c1, double c2);

// L_0 = -L and L_n = sum_{j=0}^{n-1} X_{n-1-j} T^j - L T^n; rows satisfy
// X_n = L_{n+1} - L_n T, which is verified on construction.
struct LambdaStack {
  std::vector<OpMatrix> rows;
  OpMatrix lambda;  // rows stacked into the degree-N Hardy space over the target fiber
};

LambdaStack build_lambda(const std::vector<OpMatrix>& x_rows, const OpMatrix& t,
                         const OpMatrix& l, int n);

// Y = sum_{j=0}^{N-1} X_j T^(N-1-j); requires the tail rows to satisfy
// X_m T^N = 0 numerically (rows m >= N)
OpMatrix innercrit_reduce(const std::vector<OpMatrix>& x_rows, const OpMatrix& t, int n);

struct MembershipSplit {
  OpMatrix factor;    // Frobenius least-squares L in Y ~ L T^n_power
  OpMatrix residual;  // Y - L T^n_power
  ZProfile residual_profile;
};

MembershipSplit membership_split(const OpMatrix& y, const OpMatrix& t, int n_power,
                                 int profile_n);

struct SylvesterResult {
  OpMatrix solution;      // least-squares L for T1 L - L T2 = X
  double residual = 0.0;  // Frobenius norm of T1 L - L T2 - X
};

SylvesterResult sylvester_residual(const OpMatrix& t1, const OpMatrix& t2, const OpMatrix& x);

struct SaSplit {
  OpMatrix x1;  // X restricted to (ker T)-perp
  OpMatrix x2;  // X restricted to ker T
  ZProfile x2_profile;
  double x1_factor_residual = 0.0;   // operator norm of X1 - L T after least squares
  double range_residual = 0.0;       // |P_ker T|, certifies T H inside (ker T)-perp
  double corange_residual = 0.0;     // gap between (ker T)-perp and T* H
};

// Split X = X1 + X2 against the kernel of T; requires T H inside (ker T)-perp
// inside T* H (checked to 1e-8).
SaSplit sa_split(const OpMatrix& t, const OpMatrix& x, int profile_n = 8);

}  // namespace shiftlab
