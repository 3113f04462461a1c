#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/extensions.hpp"
#include "shiftlab/spaces.hpp"

namespace shiftlab {

// Truncated full Fock-style direct sum of (C^2)^(tensor n), n = 1..n_max,
// flattened with level n at offset 2^n - 2.
struct FockTrunc {
  int n_max = 1;

  explicit FockTrunc(int levels);

  int total_dim() const { return (1 << (n_max + 1)) - 2; }
  int level_dim(int level) const { return 1 << level; }
  int level_offset(int level) const { return (1 << level) - 2; }
  // bare coefficient space carrying the Fock fiber
  SpaceDescriptor as_space() const { return SpaceDescriptor::hardy(0, total_dim()); }
};

// W_k = directsum_{n = k+1}^{n_max} V^(x k) (x) D (x) I^(x (n-k-1)) with
// V = diag(1, -1) and D = [[0,0],[1,0]]; the D slot sits at tensor position
// k, which is the convention that stays dimensionally consistent down to the
// first populated level n = k+1.
OpMatrix car_generator(int k, const FockTrunc& fock);

// projection onto the levels where W_k acts (n >= k+1)
OpMatrix level_support(int k, const FockTrunc& fock);

struct CarReport {
  double max_anticomm_gap = 0.0;  // |W_j W_k + W_k W_j| over j, k <= k_max
  double max_mixed_gap = 0.0;     // |W_j W_k* + W_k* W_j - delta_jk P_k|
  double norm_gap = 0.0;          // max_k | |W_k| - 1 |
  std::string note;
};

CarReport car_relations_check(const FockTrunc& fock, int k_max);

struct AlphaSequence {
  enum class Rule { PowerLaw, FiniteSupport, Geometric };
  Rule rule = Rule::PowerLaw;
  double power = 1.5;
  double ratio = 0.5;
  std::vector<Complex> support;

  static AlphaSequence power_law(double p);
  static AlphaSequence finite(std::vector<Complex> coeffs);
  static AlphaSequence geometric(double ratio);

  Complex at(int k) const;
  std::string describe() const;
};

// block Hankel (i, j) -> alpha_{i+j} W_{i+j} on the degree-(blocks-1) Hardy
// space over the Fock fiber; W_m with no populated level contributes zero
OpMatrix hankel_x_alpha(const AlphaSequence& alpha, int blocks, const FockTrunc& fock);

// [[S*, X_alpha], [0, S]]; construction verifies the adjoint-power identity
// R*^n = [[S^n, 0], [n X* S^(n-1), S*^n]] on interior vectors for n <= 3
OpMatrix block_r_alpha(const AlphaSequence& alpha, int blocks, const FockTrunc& fock);

// max_{k <= K} (k+1)^2 sum_{i=k}^{i_tail} |alpha_i|^2
double pb_criterion(const AlphaSequence& alpha, int k_max, long long i_tail);
// sum_{k <= K} (k+1)^2 |alpha_k|^2
double similarity_criterion(const AlphaSequence& alpha, int k_max);

struct OmegaReport {
  double w_action_gap = 0.0;      // max over k >= 1 of |W_k w|, |W_k* w|
  double xstar_power_gap = 0.0;   // max over n >= 2 of |n X* S^(n-1)-block on w|
  double pairing_gap = 0.0;       // |Omega(w (+) 0) - 1|
  double kernel_gap = 0.0;        // |R(X_alpha)(w (+) 0)|
  double w0_star_norm = 0.0;      // |W_0* w|, reported only
  std::vector<double> ladder_residuals;  // min of the split residual profile per rung
  double obstruction_min = 0.0;
};

// w = e_1 at level 1; Omega(f1 (+) f2) = <f1(0), w>
OmegaReport omega_witness(const FockTrunc& fock, const AlphaSequence& alpha, int blocks);

struct GrowthRow {
  int blocks = 0;
  int n_max = 0;
  int d_max = 0;
  double pb_estimate = 0.0;
  double pb_crit = 0.0;
  double sim_crit = 0.0;
};

// ladder entries are (blocks, n_max, d_max); throws ResourceError when
// total_dim * blocks exceeds 1e5
std::vector<GrowthRow> growth_experiment(const AlphaSequence& alpha,
                                         const std::vector<std::array<int, 3>>& ladder,
                                         std::uint64_t seed);

}  // namespace shiftlab
