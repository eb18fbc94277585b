#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muir/coefficients.hpp"
#include "muir/info.hpp"
#include "muir/qcore.hpp"
#include "muir/tolerances.hpp"

// One evaluator per information uncertainty relation. Every evaluator
// returns a RelationReport holding both sides of the inequality, the signed
// slack toward satisfaction and the witnesses behind an optimized bound.

namespace muir {

namespace relation_id {
inline constexpr const char* maassen_uffink = "maassen-uffink";
inline constexpr const char* renyi_mu = "renyi-mu";
inline constexpr const char* hall = "hall";
inline constexpr const char* one_vs_two = "one-vs-two";
inline constexpr const char* one_vs_two_sq = "one-vs-two-sq";
inline constexpr const char* one_vs_two_max = "one-vs-two-max";
inline constexpr const char* two_vs_two = "two-vs-two";
inline constexpr const char* two_vs_two_state = "two-vs-two-state";
inline constexpr const char* exotic = "exotic";
inline constexpr const char* two_vs_two_sum = "two-vs-two-sum";

inline std::vector<std::string> all() {
  return {maassen_uffink, renyi_mu,   hall,   one_vs_two,       one_vs_two_sq,
          one_vs_two_max, two_vs_two, exotic, two_vs_two_state, two_vs_two_sum};
}
}  // namespace relation_id

/// Bipartite measurement setting: a state on A (x) B plus the bases each
/// party may measure (one or two per party).
struct MeasurementScenario {
  int dim = 0;
  DensityOperator state;  // on A (x) B, dimension dim*dim
  std::vector<OrthonormalBasis> alice_bases;
  std::vector<OrthonormalBasis> bob_bases;
  std::string label;
  // Set when the state was constructed as (I (x) V)|Phi+>.
  std::optional<ComplexMatrix> state_unitary;

  MeasurementScenario(int d, DensityOperator st, std::vector<OrthonormalBasis> a,
                      std::vector<OrthonormalBasis> b, std::string lbl = {})
      : dim(d),
        state(std::move(st)),
        alice_bases(std::move(a)),
        bob_bases(std::move(b)),
        label(std::move(lbl)) {
    detail::require(state.dim() == dim * dim, "MeasurementScenario: state not on A(x)B");
    detail::require(!alice_bases.empty() && alice_bases.size() <= 2 &&
                        !bob_bases.empty() && bob_bases.size() <= 2,
                    "MeasurementScenario: need 1..2 bases per party");
    for (const auto& basis : alice_bases)
      detail::require(basis.dim() == dim, "MeasurementScenario: Alice basis dimension");
    for (const auto& basis : bob_bases)
      detail::require(basis.dim() == dim, "MeasurementScenario: Bob basis dimension");
  }
};

/// Single-system setting for the entropy-sum relations: a state on one
/// system plus two measurement bases.
struct SingleScenario {
  DensityOperator state;
  OrthonormalBasis basis1;
  OrthonormalBasis basis2;
  std::string label;

  SingleScenario(DensityOperator st, OrthonormalBasis b1, OrthonormalBasis b2,
                 std::string lbl = {})
      : state(std::move(st)), basis1(std::move(b1)), basis2(std::move(b2)),
        label(std::move(lbl)) {
    detail::require(state.dim() == basis1.dim() && state.dim() == basis2.dim(),
                    "SingleScenario: dimension mismatch");
  }
};

/// Ensemble setting for the accessible-information relation.
struct EnsembleScenario {
  Ensemble ensemble;
  OrthonormalBasis basis1;
  OrthonormalBasis basis2;
  std::string label;

  EnsembleScenario(Ensemble e, OrthonormalBasis b1, OrthonormalBasis b2,
                   std::string lbl = {})
      : ensemble(std::move(e)), basis1(std::move(b1)), basis2(std::move(b2)),
        label(std::move(lbl)) {
    detail::require(ensemble.dim() == basis1.dim() && ensemble.dim() == basis2.dim(),
                    "EnsembleScenario: dimension mismatch");
  }
};

/// Result of one inequality evaluation. `sense` records the direction the
/// inequality is stated in; slack is always the signed margin toward
/// satisfaction (rhs - lhs for upper bounds, lhs - rhs for lower bounds), so
/// violated <=> slack < -tolerance in both cases. A degenerate rhs (singular
/// inverse-overlap sum) never sets violated.
struct RelationReport {
  std::string relation_id;
  enum class Sense { upper_bound, lower_bound } sense = Sense::upper_bound;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = tol::violation_exact;
  bool violated = false;
  bool degenerate_rhs = false;
  bool open_conjecture = false;
  std::string method = "exact";
  double coefficient = 0.0;  // the raw catalog coefficient behind rhs
  std::optional<std::pair<int, int>> witness_indices;
  std::optional<ComplexMatrix> witness_unitary;

  void finalize() {
    slack = sense == Sense::upper_bound ? rhs - lhs : lhs - rhs;
    violated = !degenerate_rhs && slack < -tolerance;
  }
};

namespace detail {

inline double log2d(int d) { return std::log2(static_cast<double>(d)); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Entropy-sum relations (lower bounds on S(B1) + S(B2))
// ---------------------------------------------------------------------------

/// S(B1) + S(B2) >= -log2 a with a the largest squared overlap.
inline RelationReport eval_maassen_uffink(const DensityOperator& rho,
                                          const OrthonormalBasis& b1,
                                          const OrthonormalBasis& b2) {
  RelationReport r;
  r.relation_id = relation_id::maassen_uffink;
  r.sense = RelationReport::Sense::lower_bound;
  r.lhs = shannon_entropy(outcome_distribution(rho, b1)) +
          shannon_entropy(outcome_distribution(rho, b2));
  const OverlapMatrix c = overlap_matrix(b1, b2);
  r.coefficient = coeff_a(c);
  r.rhs = -std::log2(r.coefficient);
  r.finalize();
  return r;
}

/// Strengthened entropy-sum bound with the Renyi entropy of the overlap
/// matrix: S(B1) + S(B2) >= min over all rows and columns of H_alpha. At
/// alpha_infinity this coincides with the largest-overlap bound. Not a
/// theorem for finite alpha; evaluated as a falsification target.
inline RelationReport eval_renyi_mu(const DensityOperator& rho,
                                    const OrthonormalBasis& b1,
                                    const OrthonormalBasis& b2, double alpha) {
  detail::require(alpha > 0.0, "eval_renyi_mu: alpha must be positive");
  RelationReport r;
  r.relation_id = relation_id::renyi_mu;
  r.sense = RelationReport::Sense::lower_bound;
  r.lhs = shannon_entropy(outcome_distribution(rho, b1)) +
          shannon_entropy(outcome_distribution(rho, b2));
  const OverlapMatrix c = overlap_matrix(b1, b2);
  const int d = c.dim();
  double bound = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    std::vector<double> row(d), col(d);
    for (int j = 0; j < d; ++j) {
      row[j] = c.c(i, j);
      col[j] = c.c(j, i);
    }
    bound = std::min(bound, renyi_entropy(ProbVector(std::move(row)), alpha));
    bound = std::min(bound, renyi_entropy(ProbVector(std::move(col)), alpha));
  }
  r.rhs = bound;
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Accessible-information relation
// ---------------------------------------------------------------------------

/// I(B1|E) + I(B2|E) <= 2 log2 d + log2 a.
inline RelationReport eval_hall(const EnsembleScenario& s) {
  RelationReport r;
  r.relation_id = relation_id::hall;
  r.lhs = accessible_information(s.ensemble, s.basis1) +
          accessible_information(s.ensemble, s.basis2);
  r.coefficient = coeff_a(overlap_matrix(s.basis1, s.basis2));
  r.rhs = 2.0 * detail::log2d(s.ensemble.dim()) + std::log2(r.coefficient);
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Mutual-information relations, one Alice basis vs two Bob bases
// ---------------------------------------------------------------------------

namespace detail {

inline void require_bases(const MeasurementScenario& s, std::size_t alice,
                          std::size_t bob, const char* who) {
  require(s.alice_bases.size() >= alice && s.bob_bases.size() >= bob,
          std::string(who) + ": scenario lacks required bases");
}

}  // namespace detail

/// I(A:B1) + I(A:B2) <= log2 d + log2 c, with c the sum of the d largest
/// squared overlaps of Bob's bases. Conjectured in general, proved for
/// states diagonal in a product basis |a_k>(x)|b_i^(1)>.
inline RelationReport eval_one_vs_two(const MeasurementScenario& s) {
  detail::require_bases(s, 1, 2, "eval_one_vs_two");
  RelationReport r;
  r.relation_id = relation_id::one_vs_two;
  r.lhs = mutual_information(joint_distribution(s.state, s.alice_bases[0], s.bob_bases[0])) +
          mutual_information(joint_distribution(s.state, s.alice_bases[0], s.bob_bases[1]));
  r.coefficient = coeff_c(overlap_matrix(s.bob_bases[0], s.bob_bases[1]));
  r.rhs = detail::log2d(s.dim) + std::log2(r.coefficient);
  r.finalize();
  return r;
}

/// I(A:B1) + I(A:B2) <= log2 d + log2 sum_ij c_ij^2. Holds for states
/// diagonal in |a_k>(x)|b_i^(1)> but not in general; reported as-is.
inline RelationReport eval_one_vs_two_sq(const MeasurementScenario& s) {
  detail::require_bases(s, 1, 2, "eval_one_vs_two_sq");
  RelationReport r;
  r.relation_id = relation_id::one_vs_two_sq;
  r.lhs = mutual_information(joint_distribution(s.state, s.alice_bases[0], s.bob_bases[0])) +
          mutual_information(joint_distribution(s.state, s.alice_bases[0], s.bob_bases[1]));
  r.coefficient = sum_sq(overlap_matrix(s.bob_bases[0], s.bob_bases[1]));
  r.rhs = detail::log2d(s.dim) + std::log2(r.coefficient);
  r.finalize();
  return r;
}

/// I(A:B1) + I(A:B2) <= 2 log2 d + log2 max_ij c_ij (the accessible-
/// information bound specialized to diagonal states).
inline RelationReport eval_one_vs_two_max(const MeasurementScenario& s) {
  detail::require_bases(s, 1, 2, "eval_one_vs_two_max");
  RelationReport r;
  r.relation_id = relation_id::one_vs_two_max;
  r.lhs = mutual_information(joint_distribution(s.state, s.alice_bases[0], s.bob_bases[0])) +
          mutual_information(joint_distribution(s.state, s.alice_bases[0], s.bob_bases[1]));
  r.coefficient = coeff_a(overlap_matrix(s.bob_bases[0], s.bob_bases[1]));
  r.rhs = 2.0 * detail::log2d(s.dim) + std::log2(r.coefficient);
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Mutual-information relations, two Alice bases vs two Bob bases
// ---------------------------------------------------------------------------

/// Recovers V from a pure state of the form (I (x) V)|Phi+> (any pure state
/// with maximally mixed marginals is of that form, up to global phase).
inline std::optional<ComplexMatrix> try_recover_state_unitary(const DensityOperator& rho,
                                                              int d) {
  if (rho.dim() != d * d) return std::nullopt;
  if (rho.purity() < 1.0 - tol::structural) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix);
  const ComplexVector psi = es.eigenvectors().col(d * d - 1);
  ComplexMatrix coeff(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) coeff(i, j) = psi(i * d + j);
  const ComplexMatrix v = std::sqrt(static_cast<double>(d)) * coeff.transpose();
  const double dev =
      (v.adjoint() * v - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev >= tol::structural) return std::nullopt;
  return v;
}

namespace detail {

inline double two_basis_lhs(const MeasurementScenario& s) {
  return mutual_information(joint_distribution(s.state, s.alice_bases[0], s.bob_bases[0])) +
         mutual_information(joint_distribution(s.state, s.alice_bases[1], s.bob_bases[1]));
}

}  // namespace detail

/// I(A1:B1) + I(A2:B2) <= 2 log2 d + log2 c'. The coefficient is estimated
/// by optimization, so an apparent violation is re-verified at ten times the
/// budget before the report flags it (callers running their own
/// verification pass may disable that).
inline RelationReport eval_two_vs_two(const MeasurementScenario& s,
                                      const OptimizerBudget& budget,
                                      bool reverify = true) {
  detail::require_bases(s, 2, 2, "eval_two_vs_two");
  RelationReport r;
  r.relation_id = relation_id::two_vs_two;
  r.tolerance = tol::violation_optimized;
  r.method = "optimized";
  r.lhs = detail::two_basis_lhs(s);
  const UnitaryOperator u = alignment_unitary(s.alice_bases[0], s.alice_bases[1]);

  OptimizerBudget b = budget;
  if (s.state_unitary) {
    b.extra_starts.push_back(*s.state_unitary);
  } else if (auto v = try_recover_state_unitary(s.state, s.dim)) {
    b.extra_starts.push_back(*v);
  }
  CoefficientResult c = coeff_c_prime(s.bob_bases[0], s.bob_bases[1], u, b);
  r.coefficient = c.value;
  r.rhs = 2.0 * detail::log2d(s.dim) + std::log2(c.value);
  r.finalize();
  if (r.violated && reverify) {
    // The estimated coefficient is only a lower bound; re-verify.
    c = coeff_c_prime(s.bob_bases[0], s.bob_bases[1], u, b.scaled(10));
    r.coefficient = c.value;
    r.rhs = 2.0 * detail::log2d(s.dim) + std::log2(c.value);
    r.method = "optimized+verified";
    r.finalize();
  }
  r.witness_indices = c.witness_indices;
  r.witness_unitary = c.witness_unitary;
  return r;
}

/// State-dependent bound for states (I (x) V)|Phi+>:
/// I(A1:B1) + I(A2:B2) <= 2 log2 d + log2 c~' with c~' exact at the given V.
inline RelationReport eval_two_vs_two_state(const MeasurementScenario& s,
                                            const UnitaryOperator& v) {
  detail::require_bases(s, 2, 2, "eval_two_vs_two_state");
  const DensityOperator marg_a = partial_trace(s.state, s.dim, s.dim, Party::bob);
  const DensityOperator marg_b = partial_trace(s.state, s.dim, s.dim, Party::alice);
  const ComplexMatrix mixed = ComplexMatrix::Identity(s.dim, s.dim) / s.dim;
  detail::require((marg_a.matrix - mixed).cwiseAbs().maxCoeff() < tol::structural &&
                      (marg_b.matrix - mixed).cwiseAbs().maxCoeff() < tol::structural,
                  "eval_two_vs_two_state: state is not maximally entangled");
  RelationReport r;
  r.relation_id = relation_id::two_vs_two_state;
  r.lhs = detail::two_basis_lhs(s);
  const UnitaryOperator u = alignment_unitary(s.alice_bases[0], s.alice_bases[1]);
  const CoefficientResult c = coeff_c_tilde_prime(s.bob_bases[0], s.bob_bases[1], u, v);
  r.coefficient = c.value;
  r.rhs = 2.0 * detail::log2d(s.dim) + std::log2(c.value);
  r.witness_indices = c.witness_indices;
  r.witness_unitary = c.witness_unitary;
  r.finalize();
  return r;
}

/// Overload recovering V from the state itself.
inline RelationReport eval_two_vs_two_state(const MeasurementScenario& s) {
  if (s.state_unitary)
    return eval_two_vs_two_state(s, UnitaryOperator(*s.state_unitary));
  auto v = try_recover_state_unitary(s.state, s.dim);
  detail::require(v.has_value(),
                  "eval_two_vs_two_state: state is not of the form (I(x)V)|Phi+>");
  return eval_two_vs_two_state(s, UnitaryOperator(*v));
}

/// Inverse-overlap bound I(A1:B1) + I(A2:B2) <= log2 c'' - 2 log2 d. A
/// singular c'' makes the bound trivially satisfied and is flagged, never
/// counted as a violation or as supporting evidence.
inline RelationReport eval_exotic(const MeasurementScenario& s, double p = 0.5) {
  detail::require_bases(s, 2, 2, "eval_exotic");
  RelationReport r;
  r.relation_id = relation_id::exotic;
  r.lhs = detail::two_basis_lhs(s);
  const CoefficientResult c = coeff_c_doubleprime(s.alice_bases[0], s.alice_bases[1],
                                                  s.bob_bases[0], s.bob_bases[1], p);
  r.coefficient = c.value;
  if (c.degenerate) {
    r.degenerate_rhs = true;
    r.rhs = std::numeric_limits<double>::infinity();
  } else {
    r.rhs = std::log2(c.value) - 2.0 * detail::log2d(s.dim);
  }
  r.finalize();
  return r;
}

/// Open-question bound I(A1:B1) + I(A2:B2) <= 2 log2 d + log2 c''' with
/// c''' the sum of the d largest conjugated overlaps, maximized over V.
inline RelationReport eval_two_vs_two_sum(const MeasurementScenario& s,
                                          const OptimizerBudget& budget,
                                          bool reverify = true) {
  detail::require_bases(s, 2, 2, "eval_two_vs_two_sum");
  RelationReport r;
  r.relation_id = relation_id::two_vs_two_sum;
  r.tolerance = tol::violation_optimized;
  r.method = "optimized";
  r.open_conjecture = true;
  r.lhs = detail::two_basis_lhs(s);
  const UnitaryOperator u = alignment_unitary(s.alice_bases[0], s.alice_bases[1]);

  OptimizerBudget b = budget;
  if (s.state_unitary) {
    b.extra_starts.push_back(*s.state_unitary);
  } else if (auto v = try_recover_state_unitary(s.state, s.dim)) {
    b.extra_starts.push_back(*v);
  }
  CoefficientResult c = coeff_c_tripleprime(s.bob_bases[0], s.bob_bases[1], u, b);
  r.coefficient = c.value;
  r.rhs = 2.0 * detail::log2d(s.dim) + std::log2(c.value);
  r.finalize();
  if (r.violated && reverify) {
    c = coeff_c_tripleprime(s.bob_bases[0], s.bob_bases[1], u, b.scaled(10));
    r.coefficient = c.value;
    r.rhs = 2.0 * detail::log2d(s.dim) + std::log2(c.value);
    r.method = "optimized+verified";
    r.finalize();
  }
  r.witness_indices = c.witness_indices;
  r.witness_unitary = c.witness_unitary;
  return r;
}

/// The ensemble Alice's measurement prepares on Bob's side: outcome k occurs
/// with the marginal probability and leaves Bob in the conditional state.
inline EnsembleScenario ensemble_from_measurement(const MeasurementScenario& s,
                                                  int alice_basis_index = 0) {
  detail::require(alice_basis_index >= 0 &&
                      alice_basis_index < static_cast<int>(s.alice_bases.size()),
                  "ensemble_from_measurement: bad basis index");
  detail::require(s.bob_bases.size() == 2,
                  "ensemble_from_measurement: need two Bob bases");
  const OrthonormalBasis& alice = s.alice_bases[alice_basis_index];
  const int d = s.dim;
  std::vector<double> weights;
  std::vector<DensityOperator> states;
  for (int k = 0; k < d; ++k) {
    const ComplexVector a = alice.vector(k);
    ComplexMatrix cond = ComplexMatrix::Zero(d, d);
    for (int mi = 0; mi < d; ++mi)
      for (int mj = 0; mj < d; ++mj)
        cond += std::conj(a(mi)) * a(mj) * s.state.matrix.block(mi * d, mj * d, d, d);
    const double w = cond.trace().real();
    if (w < 1e-12) continue;  // zero-probability outcome contributes nothing
    weights.push_back(w);
    states.push_back(DensityOperator(cond / w));
  }
  return EnsembleScenario(Ensemble(std::move(weights), std::move(states)),
                          s.bob_bases[0], s.bob_bases[1], s.label);
}

}  // namespace muir
