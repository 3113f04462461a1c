#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "shiftlab/spaces.hpp"

namespace shiftlab {

// Deterministic generator: mt19937_64 is fully specified by the standard and
// the transforms below avoid implementation-defined distributions, so a seed
// reproduces the same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53-bit mantissa in [0,1)
    return (engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double gauss() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cgauss() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return Complex(r * std::cos(2.0 * std::numbers::pi * u2),
                   r * std::sin(2.0 * std::numbers::pi * u2));
  }

  Complex unimodular() {
    const double t = 2.0 * std::numbers::pi * uniform();
    return Complex(std::cos(t), std::sin(t));
  }

  Matrix gaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = cgauss();
    return m;
  }

  Vector gaussian_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = cgauss();
    return v;
  }

  // random matrix rescaled to a prescribed operator norm
  Matrix matrix_with_norm(int n, double target_norm) {
    Matrix m = gaussian_matrix(n, n);
    const double nrm = op_norm(m);
    if (nrm > 0) m *= target_norm / nrm;
    return m;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace shiftlab
