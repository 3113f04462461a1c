// Acceptance suite: one line per criterion, exit 0 only if every line passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "shiftlab/extensions.hpp"
#include "shiftlab/funcalc.hpp"
#include "shiftlab/model_space.hpp"
#include "shiftlab/pisier.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/zspaces.hpp"

using namespace shiftlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void note(const std::string& what) {
    if (detail.empty()) detail = what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// interior test vector: random in H(Theta) with the bottom Lebesgue strip
// cleared so adjoint/range formulas are exact on the truncation
Vector interior_vector(const ModelSpace& ms, Rng& rng, int margin, Outcome& out) {
  Vector amb = ms.to_ambient(rng.gaussian_vector(ms.dim()));
  const int k_bot = -(ms.n - ms.buffer);
  for (int m = k_bot; m < k_bot + margin; ++m) amb(ms.lebesgue_index(m)) = 0.0;
  Vector coords = ms.to_coords(amb);
  out.require((ms.to_ambient(coords) - amb).norm() <= 1e-10 * (1.0 + amb.norm()),
              "interior vector left the space");
  return coords / coords.norm();
}

Matrix interior_operator(const ModelSpace& ms, Rng& rng, int rows, int margin) {
  const int k_top = ms.n - ms.buffer;
  Matrix amb = Matrix::Zero(rows, ms.ambient_dim());
  for (int m = 0; m <= k_top; ++m) amb.col(ms.hardy_index(m)) = rng.gaussian_vector(rows);
  if (!ms.symbol.is_inner())
    for (int m = -k_top + margin; m <= k_top; ++m)
      amb.col(ms.lebesgue_index(m)) = rng.gaussian_vector(rows);
  Matrix x = amb * ms.basis_h;
  return x / std::max(op_norm(x), 1e-12);
}

Outcome block_commutator_bound() {
  Outcome out;
  Rng rng(101);
  double min_margin = 1e300, max_corner = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = rng.uniform_int(2, 12);
    const SpaceDescriptor space = SpaceDescriptor::hardy(dim - 1);
    const OpMatrix t1(space, space, rng.matrix_with_norm(dim, rng.uniform(0.2, 1.0)));
    const OpMatrix t2(space, space, rng.matrix_with_norm(dim, rng.uniform(0.2, 1.0)));
    const OpMatrix x(space, space, rng.gaussian_matrix(dim, dim));
    std::vector<Complex> coeffs(rng.uniform_int(1, 12) + 1);
    for (auto& c : coeffs) c = rng.cgauss();
    const Polynomial phi(std::move(coeffs));

    const DeltaBoundReport rep = delta_bound_check(phi, t1, x, t2, 1.0, 1.0);
    out.require(rep.pass, "bound violated at trial " + std::to_string(trial));
    min_margin = std::min(min_margin, rep.rhs - rep.lhs);

    const Matrix phir = eval_on_operator(phi, block_r(t1, x, t2)).mat;
    const double corner =
        (phir.block(0, dim, dim, dim) - delta_x(phi, t1, x, t2).mat).norm();
    out.require(corner <= 1e-10, "corner block mismatch at trial " + std::to_string(trial));
    max_corner = std::max(max_corner, corner);
  }
  out.note("min margin " + fmt(min_margin) + ", max corner gap " + fmt(max_corner));
  return out;
}

Outcome toeplitz_hankel_identities() {
  Outcome out;
  Rng rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int fiber = (trial % 2 == 0) ? 1 : 2;
    const int len = rng.uniform_int(2, 17);
    std::vector<Matrix> blocks;
    double weight = 0.0;
    for (int k = 0; k < len; ++k) {
      blocks.push_back(rng.gaussian_matrix(fiber, fiber));
      weight += blocks.back().squaredNorm();
    }
    for (auto& b : blocks) b /= std::sqrt(weight);
    const ZssReport rep = zss_identity_check(SymbolCoeffs(std::move(blocks)), 32, 8,
                                             4000 + static_cast<std::uint64_t>(trial));
    worst = std::max({worst, rep.toeplitz_gap, rep.hankel_gap});
  }
  out.require(worst <= 1e-10, "stacked-norm identity gap " + fmt(worst));
  out.note("max identity gap " + fmt(worst));
  return out;
}

Outcome model_space_suite() {
  Outcome out;
  Rng rng(303);
  const std::vector<ScalarSymbol> symbols = {
      ScalarSymbol({Complex(0, 0)}, 1.0),
      ScalarSymbol({Complex(0, 0), Complex(0, 0)}, 1.0),
      ScalarSymbol({}, 0.5),
      ScalarSymbol({Complex(0.3, 0), Complex(0, -0.5)}, 1.0),
  };
  double worst_proj = 0.0, worst_star = 0.0, worst_factor = 0.0;
  for (const ScalarSymbol& symbol : symbols) {
    const ModelSpace ms = build_model_space(symbol, 64);

    const ProjectionFormulaReport proj = projection_formula_check(ms, Complex(1, 0));
    out.require(proj.gap_m <= 1e-8 && proj.gap_h <= 1e-8, "projection formula gap");
    worst_proj = std::max({worst_proj, proj.gap_m, proj.gap_h});

    for (int trial = 0; trial < 20; ++trial) {
      const RangeCheckReport rep = range_check(ms, interior_vector(ms, rng, 2, out));
      out.require(rep.consistent, "range criterion inconsistent");
    }

    for (int n = 0; n <= 4; ++n) {
      const StarPowerReport rep = star_power_check(ms, n, interior_vector(ms, rng, 4, out));
      out.require(rep.gap <= 1e-8 && rep.mode0_gap <= 1e-8, "adjoint power formula gap");
      worst_star = std::max({worst_star, rep.gap, rep.mode0_gap});
    }

    for (int trial = 0; trial < 3; ++trial) {
      const DecomposeResult d = decompose_x(ms, interior_operator(ms, rng, 2, 6), 48);
      for (double v : d.profile1.values)
        out.require(v <= d.x_norm + 1e-8, "orbit profile exceeds the norm");
      out.require(d.factor_residual <= 1e-7, "factorization residual " + fmt(d.factor_residual));
      worst_factor = std::max(worst_factor, d.factor_residual);
    }
  }
  out.note("worst gaps: projection " + fmt(worst_proj) + ", adjoint power " + fmt(worst_star) +
           ", factorization " + fmt(worst_factor));
  return out;
}

Outcome car_suite() {
  Outcome out;
  const FockTrunc fock(4);
  for (int k = 0; k <= 3; ++k) {
    const Matrix w = car_generator(k, fock).mat;
    out.require(Matrix(w * w).norm() == 0.0, "generator square nonzero");
    out.require(std::abs(op_norm(w) - 1.0) <= 1e-12, "generator norm off unity");
  }
  const CarReport rep = car_relations_check(fock, 3);
  out.require(rep.max_anticomm_gap <= 1e-12, "anticommutator gap " + fmt(rep.max_anticomm_gap));
  out.require(rep.max_mixed_gap <= 1e-12, "mixed relation gap " + fmt(rep.max_mixed_gap));

  // adjoint powers of the coupled block operator, on columns clear of the edge
  const AlphaSequence alpha = AlphaSequence::power_law(1.5);
  const int blocks = 6;
  const OpMatrix x = hankel_x_alpha(alpha, blocks, fock);
  const OpMatrix s = shift(x.domain);
  const OpMatrix r = block_r_alpha(alpha, blocks, fock);
  const int dim = x.domain.dim();
  const int f = fock.total_dim();
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const Matrix rn = matrix_power(Matrix(r.mat.adjoint()), n);
    Matrix expected = Matrix::Zero(2 * dim, 2 * dim);
    expected.topLeftCorner(dim, dim) = matrix_power(s.mat, n);
    expected.bottomLeftCorner(dim, dim) =
        double(n) * x.mat.adjoint() * matrix_power(s.mat, n - 1);
    expected.bottomRightCorner(dim, dim) = matrix_power(Matrix(s.mat.adjoint()), n);
    const Matrix diff = rn - expected;
    const int cols = (blocks - n) * f;
    const double gap = op_norm(Matrix(diff.block(0, 0, dim + cols, cols))) +
                       op_norm(Matrix(diff.block(0, dim, dim + cols, cols)));
    out.require(gap <= 1e-8, "adjoint power identity gap at n=" + std::to_string(n));
    worst = std::max(worst, gap);
  }
  out.note("relation gaps " + fmt(std::max(rep.max_anticomm_gap, rep.max_mixed_gap)) +
           ", power identity " + fmt(worst));
  return out;
}

Outcome kernel_witness() {
  Outcome out;
  const OmegaReport rep = omega_witness(FockTrunc(3), AlphaSequence::power_law(1.5), 8);
  out.require(rep.w_action_gap <= 1e-12, "generator action on the witness");
  out.require(rep.xstar_power_gap <= 1e-12, "lower-left power action on the witness");
  out.require(rep.pairing_gap <= 1e-12, "pairing normalization");
  out.require(rep.kernel_gap <= 1e-12, "witness not in the kernel");
  for (double v : rep.ladder_residuals)
    out.require(v >= 0.9, "obstruction residual dipped to " + fmt(v));
  out.note("obstruction min " + fmt(rep.obstruction_min));
  return out;
}

Outcome coefficient_criteria() {
  Outcome out;
  const AlphaSequence alpha = AlphaSequence::power_law(1.5);
  const double log2 = std::log(2.0);
  for (int k = 64; k <= 8192; k *= 2) {
    const double inc = similarity_criterion(alpha, 2 * k) - similarity_criterion(alpha, k);
    out.require(std::abs(inc - log2) <= 0.1 * log2,
                "doubling increment " + fmt(inc) + " at K=" + std::to_string(k));
  }
  double lo = 1e300, hi = 0.0;
  for (int k = 64; k <= 16384; k *= 2) {
    const double v = pb_criterion(alpha, k, 1000000);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.require(hi / lo - 1.0 < 0.05, "tail criterion drifted by " + fmt(hi / lo - 1.0));
  out.note("tail criterion " + fmt(lo) + ".." + fmt(hi));
  return out;
}

Outcome quadrature_profile() {
  Outcome out;
  const XiReport rep = counterexample_xi(32768, 4096);
  for (std::size_t k = 1; k < rep.profile.size(); ++k)
    out.require(rep.profile[k] > rep.profile[k - 1], "profile not strictly increasing");
  const double ratio = rep.profile[4096] / rep.profile[128];
  out.require(ratio >= 1.5, "profile ratio " + fmt(ratio) + " below 1.5");
  out.require(std::abs(ratio - 1.9631222) <= 0.1 * 1.9631222,
              "profile ratio " + fmt(ratio) + " off the frozen value");
  out.note("profile ratio " + fmt(ratio));
  return out;
}

Outcome shifted_tail_log_bound() {
  Outcome out;
  double worst_ratio = 0.0;
  for (int n = 1; n <= 256; n *= 2) {
    double value = 0.0;
    for (TestFamily fam : {TestFamily::Fejer, TestFamily::RandomUnimodular,
                           TestFamily::Lacunary})
      value = std::max(value, dn_norm_lower_bound(n, fam, 64, 20260814));
    const double cap = kDnLogBoundConstant * (1.0 + std::log(double(n)));
    out.require(value <= cap, "lower bound " + fmt(value) + " above the log cap at n=" +
                                  std::to_string(n));
    worst_ratio = std::max(worst_ratio, value / cap);
  }
  out.note("worst value/cap ratio " + fmt(worst_ratio));
  return out;
}

Outcome sylvester_triviality() {
  Outcome out;
  Rng rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = rng.uniform_int(3, 12);
    const SpaceDescriptor space = SpaceDescriptor::hardy(dim - 1);
    const OpMatrix t1(space, space, rng.matrix_with_norm(dim, rng.uniform(0.3, 1.2)));
    const OpMatrix t2(space, space, rng.matrix_with_norm(dim, rng.uniform(0.3, 1.2)));
    const Matrix a = rng.gaussian_matrix(dim, dim);
    const OpMatrix x(space, space, t1.mat * a - a * t2.mat);
    const double res = sylvester_residual(t1, t2, x).residual;
    out.require(res <= 1e-9, "coboundary residual " + fmt(res));
    worst = std::max(worst, res);
  }

  const ObstructionReport rep = obstruction_example(32, 1024, 40);
  out.require(rep.kernel_value >= 1.0 - 1e-10, "kernel pairing degenerated");
  out.require(rep.membership_profile.min_value() >= rep.kernel_value - 1e-8,
              "membership residual fell below the kernel pairing");
  out.note("max coboundary residual " + fmt(worst) + ", obstruction floor " +
           fmt(rep.membership_profile.min_value()));
  return out;
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items = {
      {"block commutator bound, 100 random instances", 10.0, block_commutator_bound},
      {"stacked-orbit Toeplitz/Hankel identities, 50 symbols", 5.0, toeplitz_hankel_identities},
      {"model space formula battery over four symbols", 30.0, model_space_suite},
      {"fermionic generator relations and block powers", 5.0, car_suite},
      {"kernel witness facts and obstruction ladder", 5.0, kernel_witness},
      {"coefficient criteria growth ladder", 10.0, coefficient_criteria},
      {"singular quadrature partial-sum profile", 10.0, quadrature_profile},
      {"shifted-tail log bound with one constant", 20.0, shifted_tail_log_bound},
      {"sylvester coboundaries and the kernel obstruction", 10.0, sylvester_triviality},
  };

  int failures = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out = items[i].run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed >= items[i].budget_s) {
      out.ok = false;
      out.detail = "runtime " + fmt(elapsed) + " s over the " + fmt(items[i].budget_s) +
                   " s budget";
    }
    if (!out.ok) ++failures;
    std::printf("[%s] %zu. %s: %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", i + 1, items[i].name,
                out.detail.empty() ? "ok" : out.detail.c_str(), elapsed);
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, items.size());
  return failures == 0 ? 0 : 1;
}
