#include "shiftlab/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shiftlab/rng.hpp"

namespace shiftlab {

namespace {

void trim(std::vector<Complex>& c) {
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> c) : coeffs(std::move(c)) { trim(coeffs); }

Polynomial Polynomial::monomial(int k, Complex a) {
  std::vector<Complex> c(k + 1, Complex(0, 0));
  c[k] = a;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::fejer(int m) {
  std::vector<Complex> c(m + 1);
  for (int k = 0; k <= m; ++k) c[k] = 1.0 - double(k) / double(m + 1);
  return Polynomial(std::move(c));
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return Complex(0, 0);
  return coeffs[k];
}

Complex Polynomial::eval(Complex z) const {
  Complex acc(0, 0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  std::vector<Complex> c(std::max(p.coeffs.size(), q.coeffs.size()), Complex(0, 0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) c[i] += p.coeffs[i];
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) c[i] += q.coeffs[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial();
  std::vector<Complex> c(p.coeffs.size() + q.coeffs.size() - 1, Complex(0, 0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) c[i + j] += p.coeffs[i] * q.coeffs[j];
  return Polynomial(std::move(c));
}

double sup_norm_estimate(const Polynomial& phi, int oversample) {
  if (phi.is_zero()) return 0.0;
  if (oversample < 1) throw ShapeError("sup_norm_estimate: oversample >= 1 required");
  const int points = oversample * (phi.degree() + 1);
  double best = 0.0;
  for (int j = 0; j < points; ++j) {
    const double t = 2.0 * std::numbers::pi * double(j) / double(points);
    best = std::max(best, std::abs(phi.eval(Complex(std::cos(t), std::sin(t)))));
  }
  return best;
}

Matrix eval_on_matrix(const Polynomial& phi, const Matrix& t) {
  if (t.rows() != t.cols()) throw ShapeError("eval_on_matrix: square matrix required");
  const Eigen::Index n = t.rows();
  Matrix acc = Matrix::Zero(n, n);
  if (phi.is_zero()) return acc;
  for (auto it = phi.coeffs.rbegin(); it != phi.coeffs.rend(); ++it) {
    acc = acc * t;
    acc.diagonal().array() += *it;
  }
  return acc;
}

OpMatrix eval_on_operator(const Polynomial& phi, const OpMatrix& t) {
  if (!t.is_square()) throw ShapeError("eval_on_operator: square operator required");
  return OpMatrix(t.domain, t.codomain, eval_on_matrix(phi, t.mat));
}

Polynomial d_operator(const Polynomial& phi) {
  if (phi.coeffs.size() <= 1) return Polynomial();
  return Polynomial(std::vector<Complex>(phi.coeffs.begin() + 1, phi.coeffs.end()));
}

Polynomial d_power(const Polynomial& phi, int n) {
  if (n < 0) throw ShapeError("d_power: nonnegative power required");
  if (static_cast<int>(phi.coeffs.size()) <= n) return Polynomial();
  return Polynomial(std::vector<Complex>(phi.coeffs.begin() + n, phi.coeffs.end()));
}

namespace {

double ratio_for(const Polynomial& phi, int n) {
  const double denom = sup_norm_estimate(phi);
  if (denom == 0.0) return 0.0;
  const Polynomial dn = d_power(phi, n);
  if (dn.is_zero()) return 0.0;
  return sup_norm_estimate(dn) / denom;
}

// L_J(z) = sum_{j=0}^{J} z^(2^j - 1)
Polynomial lacunary_base(int j_top) {
  std::vector<Complex> c((1 << j_top), Complex(0, 0));
  for (int j = 0; j <= j_top; ++j) c[(1 << j) - 1] += 1.0;
  return Polynomial(std::move(c));
}

}  // namespace

double dn_norm_lower_bound(int n, TestFamily family, int size, std::uint64_t seed) {
  if (n < 1) throw ShapeError("dn_norm_lower_bound: n >= 1 required");
  if (size < 1) throw ShapeError("dn_norm_lower_bound: size >= 1 required");
  double best = ratio_for(Polynomial::monomial(n), n);  // baseline, ratio 1

  switch (family) {
    case TestFamily::Fejer: {
      for (int m = 1; m <= size; ++m) best = std::max(best, ratio_for(Polynomial::fejer(m), n));
      break;
    }
    case TestFamily::RandomUnimodular: {
      Rng rng(seed);
      for (int s = 0; s < size; ++s) {
        const int d = rng.uniform_int(std::max(1, n), n + 64);
        std::vector<Complex> c(d + 1);
        for (auto& x : c) x = rng.unimodular();
        best = std::max(best, ratio_for(Polynomial(std::move(c)), n));
      }
      break;
    }
    case TestFamily::Lacunary: {
      // members z^(n-m) * L_J for every power of two m <= n; the ratio of
      // such a member at parameter n equals the ratio of L_J at parameter m,
      // so the swept ratio set grows with n and the bound is nondecreasing
      int j_max = 0;
      while ((2 << j_max) <= std::max(2, size)) ++j_max;
      for (int m = 1; m <= n; m *= 2) {
        for (int j_top = 0; j_top <= j_max; ++j_top) {
          const Polynomial member = Polynomial::monomial(n - m) * lacunary_base(j_top);
          best = std::max(best, ratio_for(member, n));
        }
      }
      break;
    }
  }
  return best;
}

PBEstimate pb_constant_estimate(const OpMatrix& t, int d_max, int samples, std::uint64_t seed) {
  if (!t.is_square()) throw ShapeError("pb_constant_estimate: square operator required");
  if (d_max < 1) throw ShapeError("pb_constant_estimate: d_max >= 1 required");

  std::vector<Matrix> powers(d_max + 1);
  powers[0] = Matrix::Identity(t.mat.rows(), t.mat.cols());
  for (int k = 1; k <= d_max; ++k) powers[k] = powers[k - 1] * t.mat;

  PBEstimate out;
  out.degree_max = d_max;
  out.samples = samples;
  out.seed = seed;

  auto consider = [&](const Polynomial& phi) {
    const double denom = sup_norm_estimate(phi);
    if (denom == 0.0) return;
    Matrix acc = Matrix::Zero(t.mat.rows(), t.mat.cols());
    for (int k = 0; k <= std::min(d_max, phi.degree()); ++k)
      if (phi.coeff(k) != Complex(0, 0)) acc += phi.coeff(k) * powers[k];
    const double r = op_norm(acc) / denom;
    if (r > out.constant_lower_bound) {
      out.constant_lower_bound = r;
      out.witness = phi;
    }
  };

  for (int k = 1; k <= d_max; ++k) consider(Polynomial::monomial(k));
  for (int m = 1; m <= d_max; ++m) consider(Polynomial::fejer(m));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const int d = rng.uniform_int(1, d_max);
    std::vector<Complex> c(d + 1);
    for (auto& x : c) x = rng.unimodular();
    consider(Polynomial(std::move(c)));
  }
  return out;
}

}  // namespace shiftlab
