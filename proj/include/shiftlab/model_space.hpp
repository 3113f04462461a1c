#pragma once

#include <vector>

#include "shiftlab/extensions.hpp"
#include "shiftlab/spaces.hpp"

namespace shiftlab {

// Theta(z) = r * prod_i (|a_i|/a_i)(a_i - z)/(1 - conj(a_i) z), with the
// factor for a zero at the origin taken as z. On the unit circle every
// Blaschke factor is unimodular, so |Theta| = r there and the boundary
// defect sqrt(1 - |Theta|^2) is the constant sqrt(1 - r^2).
struct ScalarSymbol {
  std::vector<Complex> zeros;
  double scale = 1.0;

  ScalarSymbol(std::vector<Complex> zeros_in, double scale_in);

  int degree() const { return static_cast<int>(zeros.size()); }
  bool is_inner() const { return scale == 1.0; }
  Complex value(Complex z) const;
  // Taylor coefficients a_0..a_n, exact factor-series convolution
  std::vector<Complex> fourier_coeffs(int n) const;
  double defect() const;
};

// max over an equispaced boundary grid of | |Theta(e^{it})| - r |
double boundary_modulus_gap(const ScalarSymbol& symbol, int m_grid = 512);

// Truncated ambient H^2 (+) L^2 carrying the shift-invariant subspace
// M(Theta) = span{ Theta z^k (+) Delta z^k } and the compression S(Theta)
// of the ambient shift to H(Theta). Columns stop at k = N - B and basis_H
// spans the interior window projected off M(Theta); B = max(8, 2 deg).
struct ModelSpace {
  ScalarSymbol symbol;
  int n = 0;
  int buffer = 0;
  SpaceDescriptor ambient;
  Matrix basis_m;        // ambient_dim x rank_M, orthonormal
  Matrix basis_h;        // ambient_dim x dim_H, orthonormal, perp to basis_m
  Matrix ambient_shift;  // S (+) U
  Matrix s_theta;        // compression in basis_h coordinates

  int dim() const { return static_cast<int>(basis_h.cols()); }
  int ambient_dim() const { return ambient.dim(); }
  int hardy_index(int mode) const;
  int lebesgue_index(int mode) const;
  Vector to_ambient(const Vector& coords) const { return basis_h * coords; }
  Vector to_coords(const Vector& ambient_vec) const { return basis_h.adjoint() * ambient_vec; }
};

ModelSpace build_model_space(const ScalarSymbol& symbol, int n);

struct ProjectionFormulaReport {
  double gap_m = 0.0;  // P_M(e (+) 0) against Theta Theta(0)* e (+) Delta Theta(0)* e
  double gap_h = 0.0;  // complementary projection against the same formula
};

ProjectionFormulaReport projection_formula_check(const ModelSpace& ms, Complex e_star);

struct RangeCheckReport {
  double in_range_residual = 0.0;  // least-squares gap for S(Theta) x = f
  bool condition_holds = false;    // f_1(0) lies in Theta(0) * fiber
  bool consistent = false;
};

RangeCheckReport range_check(const ModelSpace& ms, const Vector& f_coords, double tol = 1e-7);

struct StarPowerReport {
  double gap = 0.0;        // S(Theta)*^n h against (P z^-n h1) (+) (e^{-int} h2)
  double mode0_gap = 0.0;  // mode-0 pair of S(Theta)*^n h against hat h(n)
};

StarPowerReport star_power_check(const ModelSpace& ms, int n_pow, const Vector& h_coords);

struct DecomposeResult {
  Matrix x1;  // h -> X P_H (hat h(0) Hardy part as a constant)
  Matrix x2;  // X - X1
  ZProfile profile1;             // profile of X1 against S(Theta)*
  double factor_residual = 0.0;  // Frobenius gap of X2 ~ L S(Theta)*
  double x_norm = 0.0;
};

DecomposeResult decompose_x(const ModelSpace& ms, const Matrix& x, int profile_n);

}  // namespace shiftlab
