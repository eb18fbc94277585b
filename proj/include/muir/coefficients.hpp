#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "muir/ga.hpp"
#include "muir/qcore.hpp"
#include "muir/tolerances.hpp"

// The coefficient catalog: every quantity appearing on the bound side of one
// of the information uncertainty relations. Exact coefficients are plain
// functions of an overlap matrix; the two coefficients defined through a
// maximum over a conjugating unitary V are estimated by multi-start
// optimization and always reported as certified lower bounds of the true
// maximum (with the attaining V as witness).

namespace muir {

/// Squared overlaps c[i][j] = |<b_i^(1)|b_j^(2)>|^2 of two orthonormal
/// bases; bistochastic within tol::probability_sum.
struct OverlapMatrix {
  RealMatrix c;

  explicit OverlapMatrix(RealMatrix m) : c(std::move(m)) {
    detail::require(c.rows() == c.cols() && c.rows() > 0, "OverlapMatrix: not square");
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      detail::require(std::abs(c.row(i).sum() - 1.0) < tol::probability_sum,
                      "OverlapMatrix: row " + std::to_string(i) + " not normalized");
      detail::require(std::abs(c.col(i).sum() - 1.0) < tol::probability_sum,
                      "OverlapMatrix: column " + std::to_string(i) + " not normalized");
    }
  }

  int dim() const { return static_cast<int>(c.rows()); }
};

inline OverlapMatrix overlap_matrix(const OrthonormalBasis& b1,
                                    const OrthonormalBasis& b2) {
  detail::require(b1.dim() == b2.dim(), "overlap_matrix: dimension mismatch");
  const ComplexMatrix inner = b1.vectors.adjoint() * b2.vectors;
  return OverlapMatrix(inner.cwiseAbs2());
}

/// Largest squared overlap; in [1/d, 1].
inline double coeff_a(const OverlapMatrix& c) { return c.c.maxCoeff(); }

/// Sum of the d largest entries (tie-invariant); in [1, d].
inline double coeff_c(const OverlapMatrix& c) {
  std::vector<double> entries(c.c.data(), c.c.data() + c.c.size());
  std::sort(entries.begin(), entries.end(), std::greater<>());
  double s = 0.0;
  for (int i = 0; i < c.dim(); ++i) s += entries[i];
  return s;
}

/// sum_ij c_ij^2; in [1, d].
inline double sum_sq(const OverlapMatrix& c) { return c.c.cwiseAbs2().sum(); }

/// The unitary carrying the first basis to the second,
/// U = sum_k |a_k^(2)><a_k^(1)|, so that U^dag |a_k^(2)> = |a_k^(1)> for all
/// k. Per-vector phases are taken exactly as stored in the bases.
inline UnitaryOperator alignment_unitary(const OrthonormalBasis& a1,
                                         const OrthonormalBasis& a2) {
  detail::require(a1.dim() == a2.dim(), "alignment_unitary: dimension mismatch");
  return UnitaryOperator(a2.vectors * a1.vectors.adjoint());
}

struct OptimizerBudget {
  int restarts = 1;       // independent GA runs
  int generations = 60;   // per run
  int population = 25;
  int elite = 3;
  std::uint64_t seed = 0;
  // Additional deterministic candidate unitaries evaluated alongside the
  // built-in starts (identity, U, eigenvector matrix of U^T, five seeded
  // random unitaries).
  std::vector<ComplexMatrix> extra_starts;

  void validate() const {
    if (restarts < 1 || generations < 1)
      throw std::invalid_argument("OptimizerBudget: zero budget");
  }

  OptimizerBudget scaled(int factor) const {
    OptimizerBudget b = *this;
    b.generations *= factor;
    return b;
  }
};

struct CoefficientResult {
  double value = 0.0;
  std::optional<std::pair<int, int>> witness_indices;
  std::optional<ComplexMatrix> witness_unitary;
  bool degenerate = false;  // RHS singular (inverse-overlap sum)
  enum class Method { exact, optimized } method = Method::exact;
  long objective_evaluations = 0;
};

/// max_ij |<b_i^(1)| V U^T V^dag |b_j^(2)>|^2 for a fixed V; exact.
inline CoefficientResult coeff_c_tilde_prime(const OrthonormalBasis& b1,
                                             const OrthonormalBasis& b2,
                                             const UnitaryOperator& u,
                                             const UnitaryOperator& v) {
  const int d = b1.dim();
  detail::require(b2.dim() == d && u.dim() == d && v.dim() == d,
                  "coeff_c_tilde_prime: dimension mismatch");
  const ComplexMatrix w = v.matrix * u.matrix.transpose() * v.matrix.adjoint();
  const RealMatrix mags = (b1.vectors.adjoint() * (w * b2.vectors)).cwiseAbs2();
  CoefficientResult r;
  r.method = CoefficientResult::Method::exact;
  Eigen::Index bi = 0, bj = 0;
  r.value = mags.maxCoeff(&bi, &bj);
  r.witness_indices = {static_cast<int>(bi), static_cast<int>(bj)};
  r.witness_unitary = v.matrix;
  return r;
}

namespace detail {

// Shared multi-start maximization over V of an objective on the conjugated
// overlap magnitudes |B1^dag (V U^T V^dag) B2|^2. The result is a lower
// bound of the true maximum; larger budgets with the same seed never
// decrease it (GA prefixes are identical, extra restarts only add starts).
template <typename Objective>
CoefficientResult optimize_over_v(const OrthonormalBasis& b1,
                                  const OrthonormalBasis& b2,
                                  const UnitaryOperator& u,
                                  const OptimizerBudget& budget,
                                  Objective&& objective) {
  budget.validate();
  const int d = b1.dim();
  require(b2.dim() == d && u.dim() == d, "coefficient optimizer: dimension mismatch");

  const ComplexMatrix ut = u.matrix.transpose();
  long evaluations = 0;
  auto value_at = [&](const ComplexMatrix& v) {
    ++evaluations;
    const ComplexMatrix w = v * ut * v.adjoint();
    return objective(RealMatrix((b1.vectors.adjoint() * (w * b2.vectors)).cwiseAbs2()));
  };

  CoefficientResult best;
  best.method = CoefficientResult::Method::optimized;
  best.value = -1.0;
  auto consider = [&](const ComplexMatrix& v) {
    const double val = value_at(v);
    if (val > best.value) {
      best.value = val;
      best.witness_unitary = v;
    }
  };

  // Deterministic starts: identity, U, eigenvector matrix of U^T (U^T is
  // normal, so its eigenvectors orthonormalize), five seeded random
  // unitaries, then any caller-supplied candidates.
  consider(ComplexMatrix::Identity(d, d));
  consider(u.matrix);
  {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(ut);
    std::vector<ComplexVector> cols;
    cols.reserve(d);
    for (int k = 0; k < d; ++k) cols.push_back(es.eigenvectors().col(k));
    try {
      consider(gram_schmidt(cols).vectors);
    } catch (const std::invalid_argument&) {
      // eigenvector matrix unusable (degenerate numerics); skip this start
    }
  }
  ga::Rng start_rng(ga::mix_seed(budget.seed, 0x73746172ull));
  for (int r = 0; r < 5; ++r) {
    std::vector<double> x(static_cast<std::size_t>(d) * d);
    for (double& xi : x) xi = ga::uniform01(start_rng);
    consider(unitary_from_unit_vector(x).matrix);
  }
  for (const auto& v : budget.extra_starts) consider(v);

  // GA refinement over the unitary parametrization.
  for (int run = 0; run < budget.restarts; ++run) {
    ga::GaConfig cfg;
    cfg.population_size = budget.population;
    cfg.elite_count = budget.elite;
    cfg.generations = budget.generations;
    cfg.seed = ga::mix_seed(budget.seed, 0x72756e00ull + static_cast<std::uint64_t>(run));
    auto fitness = [&](const ga::Genome& g) {
      ++evaluations;
      const ComplexMatrix v = unitary_from_unit_vector(g.genes).matrix;
      const ComplexMatrix w = v * ut * v.adjoint();
      return objective(RealMatrix((b1.vectors.adjoint() * (w * b2.vectors)).cwiseAbs2()));
    };
    const ga::EvolveResult res = ga::evolve(d * d, fitness, cfg);
    if (res.best_fitness > best.value) {
      best.value = res.best_fitness;
      best.witness_unitary = unitary_from_unit_vector(res.best_genome.genes).matrix;
    }
  }

  // Recompute indices at the winning V.
  const ComplexMatrix w = *best.witness_unitary * ut * best.witness_unitary->adjoint();
  const RealMatrix mags = (b1.vectors.adjoint() * (w * b2.vectors)).cwiseAbs2();
  Eigen::Index bi = 0, bj = 0;
  mags.maxCoeff(&bi, &bj);
  best.witness_indices = {static_cast<int>(bi), static_cast<int>(bj)};
  best.objective_evaluations = evaluations;
  return best;
}

inline double sum_of_d_largest(const RealMatrix& m) {
  std::vector<double> entries(m.data(), m.data() + m.size());
  std::sort(entries.begin(), entries.end(), std::greater<>());
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) s += entries[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace detail

/// c' = max_V max_ij |<b_i^(1)| V U^T V^dag |b_j^(2)>|^2, estimated by
/// multi-start optimization; certified lower bound with witness V.
inline CoefficientResult coeff_c_prime(const OrthonormalBasis& b1,
                                       const OrthonormalBasis& b2,
                                       const UnitaryOperator& u,
                                       const OptimizerBudget& budget) {
  return detail::optimize_over_v(b1, b2, u, budget,
                                 [](const RealMatrix& mags) { return mags.maxCoeff(); });
}

/// Inverse-overlap sum: sum_ijkl |<a_i^(1)|a_j^(2)>|^p / |<b_k^(1)|b_l^(2)>|^p,
/// computed through its factorization into the product of the two sums.
/// Returns a degenerate (+inf) result when any |<b_k^(1)|b_l^(2)>| is below
/// tol::overlap_singular.
inline CoefficientResult coeff_c_doubleprime(const OrthonormalBasis& a1,
                                             const OrthonormalBasis& a2,
                                             const OrthonormalBasis& b1,
                                             const OrthonormalBasis& b2,
                                             double p = 0.5) {
  const int d = a1.dim();
  detail::require(a2.dim() == d && b1.dim() == d && b2.dim() == d,
                  "coeff_c_doubleprime: dimension mismatch");
  const RealMatrix amag = (a1.vectors.adjoint() * a2.vectors).cwiseAbs();
  const RealMatrix bmag = (b1.vectors.adjoint() * b2.vectors).cwiseAbs();
  CoefficientResult r;
  r.method = CoefficientResult::Method::exact;
  if (bmag.minCoeff() < tol::overlap_singular) {
    r.degenerate = true;
    r.value = std::numeric_limits<double>::infinity();
    return r;
  }
  double num = 0.0, inv = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      num += std::pow(amag(i, j), p);
      inv += std::pow(bmag(i, j), -p);
    }
  r.value = num * inv;
  return r;
}

/// c''' = max_V (sum of the d largest |<b_i^(1)| V U^T V^dag |b_j^(2)>|^2);
/// same optimizer contract as coeff_c_prime.
inline CoefficientResult coeff_c_tripleprime(const OrthonormalBasis& b1,
                                             const OrthonormalBasis& b2,
                                             const UnitaryOperator& u,
                                             const OptimizerBudget& budget) {
  return detail::optimize_over_v(
      b1, b2, u, budget,
      [](const RealMatrix& mags) { return detail::sum_of_d_largest(mags); });
}

}  // namespace muir
