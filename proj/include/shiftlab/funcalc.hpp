#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "shiftlab/spaces.hpp"

namespace shiftlab {

struct Polynomial {
  // a_0 .. a_d, trailing zeros trimmed
  std::vector<Complex> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> c);

  static Polynomial monomial(int k, Complex a = Complex(1.0, 0.0));
  // F_m(z) = sum_{k=0}^{m} (1 - k/(m+1)) z^k
  static Polynomial fejer(int m);

  // the zero polynomial reports degree 0
  int degree() const { return std::max(0, static_cast<int>(coeffs.size()) - 1); }
  bool is_zero() const { return coeffs.empty(); }
  Complex coeff(int k) const;
  Complex eval(Complex z) const;
};

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Polynomial& p, const Polynomial& q);

// max |phi| over oversample*(degree+1) equispaced points of the unit circle;
// a lower bound for the true sup norm
double sup_norm_estimate(const Polynomial& phi, int oversample = 64);

// slack factor for inequalities whose right side uses the sampled sup norm
inline constexpr double kSupSafety = 1.05;

Matrix eval_on_matrix(const Polynomial& phi, const Matrix& t);
OpMatrix eval_on_operator(const Polynomial& phi, const OpMatrix& t);

// (D phi)(z) = (phi(z) - phi(0))/z
Polynomial d_operator(const Polynomial& phi);
Polynomial d_power(const Polynomial& phi, int n);

enum class TestFamily { Fejer, RandomUnimodular, Lacunary };

// max of |D^n phi|_sup / |phi|_sup over the chosen witness family plus the
// baseline monomial z^n; a lower bound for the norm of D^n on polynomials
double dn_norm_lower_bound(int n, TestFamily family, int size, std::uint64_t seed);

// One constant certifying dn_norm_lower_bound(n) <= M*(1 + log n) across all
// three families, size 64, n in {1,2,4,...,256}. The Fejer and lacunary
// families have nonnegative coefficients, so their sup norms live at z = 1
// and the ratio never exceeds 1; random unimodular tail slices peak near
// small n. Largest ratio seen over fifteen seeds: 1.2394 (n = 2). Pinned
// with headroom; the sweep only certifies that a single M works.
inline constexpr double kDnLogBoundConstant = 1.30;

struct PBEstimate {
  double constant_lower_bound = 0.0;
  Polynomial witness;
  int degree_max = 0;
  int samples = 0;
  std::uint64_t seed = 0;
};

// sup of |phi(T)| / |phi|_sampled over monomials, Fejer kernels and random
// unit-modulus-coefficient polynomials of degree <= d_max
PBEstimate pb_constant_estimate(const OpMatrix& t, int d_max, int samples, std::uint64_t seed);

}  // namespace shiftlab
