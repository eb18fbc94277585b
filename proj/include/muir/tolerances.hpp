#pragma once

// All numeric tolerances used across the library live here so that the
// validation code, the property tests and the CLI agree on one set of
// constants.

namespace muir::tol {

// Structural checks: unitarity, basis orthonormality.
inline constexpr double structural = 1e-8;

// Algebraic identities: hermiticity, traces, norms, defining relations.
inline constexpr double algebraic = 1e-10;

// Idempotence checks (projector P^2 = P).
inline constexpr double idempotence = 1e-12;

// Smallest admissible eigenvalue of a density operator.
inline constexpr double eigenvalue_floor = -1e-9;

// Probabilities below this are clamped to zero before entropy evaluation;
// traces of projector products round to tiny negatives.
inline constexpr double probability_floor = 1e-14;

// Normalization of probability distributions.
inline constexpr double probability_sum = 1e-9;

// Violation thresholds: an inequality counts as violated only when the
// slack is below minus this. Exact right-hand sides tolerate rounding
// error only; optimized right-hand sides also absorb optimizer noise.
inline constexpr double violation_exact = 1e-9;
inline constexpr double violation_optimized = 1e-6;

// Fitness margin above which a search candidate counts as a near-violation
// and triggers re-verification at a larger coefficient budget.
inline constexpr double near_violation = -1e-4;

// Strict-improvement margin for the adaptive mutation scale; float noise
// must not trigger a scale-up.
inline constexpr double improvement_margin = 1e-12;

// |<b_k|b_l>| below this makes an inverse-overlap sum singular.
inline constexpr double overlap_singular = 1e-12;

}  // namespace muir::tol
