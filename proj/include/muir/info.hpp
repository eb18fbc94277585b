#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "muir/qcore.hpp"
#include "muir/tolerances.hpp"

// Outcome distributions of projective measurements and the entropy and
// mutual-information functionals evaluated on them. All entropies are in
// bits (base-2 logarithms throughout).

namespace muir {

/// Sentinel for the alpha -> infinity (min-entropy) order.
inline constexpr double alpha_infinity = std::numeric_limits<double>::infinity();

/// Probability distribution; entries below tol::probability_floor (including
/// the tiny negatives produced by projector-product traces) clamp to zero.
struct ProbVector {
  std::vector<double> probs;

  explicit ProbVector(std::vector<double> p) : probs(std::move(p)) {
    detail::require(!probs.empty(), "ProbVector: empty");
    double sum = 0.0;
    for (double& x : probs) {
      detail::require(std::isfinite(x) && x >= -1e-12,
                      "ProbVector: entry " + std::to_string(x) + " negative");
      if (x < tol::probability_floor) x = 0.0;
      sum += x;
    }
    detail::require(std::abs(sum - 1.0) < tol::probability_sum,
                    "ProbVector: sum = " + std::to_string(sum) + " not 1");
  }

  int size() const { return static_cast<int>(probs.size()); }
};

/// Joint outcome distribution p[k][j], k indexing Alice and j Bob.
struct JointDistribution {
  RealMatrix p;

  explicit JointDistribution(RealMatrix m) : p(std::move(m)) {
    detail::require(p.rows() > 0 && p.cols() > 0, "JointDistribution: empty");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < p.rows(); ++k)
      for (Eigen::Index j = 0; j < p.cols(); ++j) {
        double& x = p(k, j);
        detail::require(std::isfinite(x) && x >= -1e-12,
                        "JointDistribution: negative entry");
        if (x < tol::probability_floor) x = 0.0;
        sum += x;
      }
    detail::require(std::abs(sum - 1.0) < tol::probability_sum,
                    "JointDistribution: sum = " + std::to_string(sum) + " not 1");
  }

  ProbVector marginal_alice() const {
    std::vector<double> m(p.rows());
    for (Eigen::Index k = 0; k < p.rows(); ++k) m[k] = p.row(k).sum();
    return ProbVector(std::move(m));
  }

  ProbVector marginal_bob() const {
    std::vector<double> m(p.cols());
    for (Eigen::Index j = 0; j < p.cols(); ++j) m[j] = p.col(j).sum();
    return ProbVector(std::move(m));
  }

  ProbVector flattened() const {
    std::vector<double> f;
    f.reserve(p.size());
    for (Eigen::Index k = 0; k < p.rows(); ++k)
      for (Eigen::Index j = 0; j < p.cols(); ++j) f.push_back(p(k, j));
    return ProbVector(std::move(f));
  }
};

/// Source that emits state rho_i with probability weights[i].
struct Ensemble {
  std::vector<double> weights;
  std::vector<DensityOperator> states;

  Ensemble(std::vector<double> w, std::vector<DensityOperator> s)
      : weights(std::move(w)), states(std::move(s)) {
    detail::require(!states.empty() && weights.size() == states.size(),
                    "Ensemble: weights/states size mismatch");
    double sum = 0.0;
    for (double x : weights) {
      detail::require(x >= -1e-12, "Ensemble: negative weight");
      sum += x;
    }
    detail::require(std::abs(sum - 1.0) < tol::probability_sum,
                    "Ensemble: weights sum to " + std::to_string(sum));
    const int d = states.front().dim();
    for (const auto& st : states)
      detail::require(st.dim() == d, "Ensemble: state dimension mismatch");
  }

  int dim() const { return states.front().dim(); }

  DensityOperator average() const {
    ComplexMatrix m = ComplexMatrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < states.size(); ++i)
      m += weights[i] * states[i].matrix;
    return DensityOperator(std::move(m));
  }
};

/// -sum p log2 p with 0 log 0 = 0.
inline double shannon_entropy(const ProbVector& p) {
  double h = 0.0;
  for (double x : p.probs)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

/// Renyi entropy (1/(1-alpha)) log2 sum p^alpha. The alpha -> 1 window
/// (|alpha-1| < 1e-6) delegates to Shannon; alpha_infinity gives the
/// min-entropy -log2 max p. The sum is evaluated relative to max p so large
/// alpha cannot underflow.
inline double renyi_entropy(const ProbVector& p, double alpha) {
  detail::require(alpha > 0.0, "renyi_entropy: alpha must be positive");
  double pmax = 0.0;
  for (double x : p.probs) pmax = std::max(pmax, x);
  detail::require(pmax > 0.0, "renyi_entropy: zero distribution");
  if (alpha == alpha_infinity) return -std::log2(pmax);
  if (std::abs(alpha - 1.0) < 1e-6) return shannon_entropy(p);
  double s = 0.0;
  for (double x : p.probs)
    if (x > 0.0) s += std::pow(x / pmax, alpha);
  return (alpha * std::log2(pmax) + std::log2(s)) / (1.0 - alpha);
}

/// Outcome distribution p_j = <b_j| rho |b_j> of measuring in a basis.
inline ProbVector outcome_distribution(const DensityOperator& rho,
                                       const OrthonormalBasis& basis) {
  detail::require(rho.dim() == basis.dim(),
                  "outcome_distribution: dimension mismatch");
  std::vector<double> p(basis.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    const ComplexVector b = basis.vector(j);
    p[j] = (b.adjoint() * rho.matrix * b)(0, 0).real();
  }
  return ProbVector(std::move(p));
}

/// p_kj = Tr[rho (P_k (x) Q_j)] for rank-one projective measurements on a
/// bipartite state; linear in rho.
inline JointDistribution joint_distribution(const DensityOperator& rho_ab,
                                            const OrthonormalBasis& alice,
                                            const OrthonormalBasis& bob) {
  const int d = alice.dim();
  detail::require(bob.dim() == d && rho_ab.dim() == d * d,
                  "joint_distribution: dimension mismatch");
  RealMatrix p(d, d);
  const ComplexMatrix& m = rho_ab.matrix;
  for (int k = 0; k < d; ++k) {
    const ComplexVector a = alice.vector(k);
    // Conditional block R_k[n,n'] = sum_{m,m'} conj(a_m) rho[(m,n),(m',n')] a_m'
    ComplexMatrix rk = ComplexMatrix::Zero(d, d);
    for (int mi = 0; mi < d; ++mi)
      for (int mj = 0; mj < d; ++mj)
        rk += std::conj(a(mi)) * a(mj) * m.block(mi * d, mj * d, d, d);
    for (int j = 0; j < d; ++j) {
      const ComplexVector b = bob.vector(j);
      p(k, j) = (b.adjoint() * rk * b)(0, 0).real();
    }
  }
  return JointDistribution(std::move(p));
}

/// I(A:B) = S(A) + S(B) - S(AB) of a joint distribution, clamped to >= 0.
inline double mutual_information(const JointDistribution& joint) {
  const double mi = shannon_entropy(joint.marginal_alice()) +
                    shannon_entropy(joint.marginal_bob()) -
                    shannon_entropy(joint.flattened());
  return mi < 0.0 ? 0.0 : mi;
}

/// Accessible information I(B|E) = S(B)_rho - sum_i p_i S(B)_{rho_i} about
/// an ensemble under a measurement in the given basis.
inline double accessible_information(const Ensemble& e,
                                     const OrthonormalBasis& basis) {
  detail::require(e.dim() == basis.dim(),
                  "accessible_information: dimension mismatch");
  double h_cond = 0.0;
  for (std::size_t i = 0; i < e.states.size(); ++i)
    h_cond += e.weights[i] * shannon_entropy(outcome_distribution(e.states[i], basis));
  const double h_avg = shannon_entropy(outcome_distribution(e.average(), basis));
  const double acc = h_avg - h_cond;
  return acc < 0.0 ? 0.0 : acc;
}

/// Joint distribution p(i,j) = w_i <b_j|rho_i|b_j> of the ensemble label and
/// the measurement outcome; accessible_information equals its mutual
/// information (used as an independent cross-check).
inline JointDistribution ensemble_joint(const Ensemble& e,
                                        const OrthonormalBasis& basis) {
  RealMatrix p(e.states.size(), basis.dim());
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    const ProbVector out = outcome_distribution(e.states[i], basis);
    for (int j = 0; j < basis.dim(); ++j) p(i, j) = e.weights[i] * out.probs[j];
  }
  return JointDistribution(std::move(p));
}

}  // namespace muir
