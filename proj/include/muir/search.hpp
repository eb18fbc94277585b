#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "muir/ga.hpp"
#include "muir/relations.hpp"
#include "muir/scenarios.hpp"

// Violation search: a genome in [0,1]^n encodes a full measurement scenario
// (state plus bases, plus any free relation parameter), the fitness of a
// genome is lhs - rhs of the target relation, and the genetic engine
// maximizes it. Apparent violations of relations with an optimized bound are
// re-verified at ten times the coefficient budget before being reported.

namespace muir {

enum class SystemKind { single, bipartite, entangled_v, ensemble };

/// Gene layout of an encoded scenario:
///   single:      [state | basis1 | basis2 | params]
///   bipartite:   [state | alice bases.. | bob bases.. | params]
///   entangled_v: [V | alice1 | alice2 | bob1 | bob2 | params]
///   ensemble:    [weights | member states.. | basis1 | basis2 | params]
/// Every basis segment holds d^2 genes decoded into a unitary whose columns
/// are the basis vectors. Pure states use 2n genes (real/imaginary pairs,
/// normalized); mixed states use 2n^2 genes decoding a purification on an
/// ancilla of equal dimension.
struct ScenarioCodec {
  int dim = 2;
  StateMode mode = StateMode::pure;
  SystemKind kind = SystemKind::bipartite;
  int alice_basis_count = 1;  // bipartite kind only
  int param_genes = 0;

  int basis_count() const {
    switch (kind) {
      case SystemKind::single: return 2;
      case SystemKind::bipartite: return alice_basis_count + 2;
      case SystemKind::entangled_v: return 4;
      case SystemKind::ensemble: return 2;
    }
    return 0;
  }

  int state_genes() const {
    const int n = kind == SystemKind::single || kind == SystemKind::ensemble
                      ? dim
                      : dim * dim;
    switch (kind) {
      case SystemKind::single:
      case SystemKind::bipartite:
        return mode == StateMode::pure ? 2 * n : 2 * n * n;
      case SystemKind::entangled_v:
        return dim * dim;  // the genes of V itself
      case SystemKind::ensemble:
        return dim + dim * 2 * dim;  // weights plus d pure members
    }
    return 0;
  }

  int length() const {
    return state_genes() + basis_count() * dim * dim + param_genes;
  }
};

namespace detail {

inline ComplexVector decode_amplitudes(std::span<const double> genes, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = Complex(2.0 * genes[2 * i] - 1.0, 2.0 * genes[2 * i + 1] - 1.0);
  if (v.norm() < 1e-12) v(0) = 1.0;  // the measure-zero all-midpoint genome
  return ComplexVector(v / v.norm());
}

/// Pure: rank-one projector. Mixed: purification on n (x) n traced over the
/// second factor (rows index the kept system).
inline DensityOperator decode_state(std::span<const double> genes, int n, StateMode mode) {
  if (mode == StateMode::pure) {
    const ComplexVector psi = decode_amplitudes(genes, n);
    return DensityOperator(psi * psi.adjoint());
  }
  const ComplexVector psi = decode_amplitudes(genes, n * n);
  ComplexMatrix coeff(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) coeff(i, j) = psi(i * n + j);
  return DensityOperator(coeff * coeff.adjoint());
}

inline OrthonormalBasis decode_basis(std::span<const double> genes) {
  return OrthonormalBasis(unitary_from_unit_vector(genes).matrix);
}

}  // namespace detail

/// Bipartite and entangled_v genomes decode to a MeasurementScenario.
inline MeasurementScenario decode_scenario(const ga::Genome& g, const ScenarioCodec& codec) {
  detail::require(static_cast<int>(g.genes.size()) == codec.length(),
                  "decode_scenario: genome length mismatch");
  const int d = codec.dim;
  const int bgenes = d * d;
  std::span<const double> genes(g.genes);

  if (codec.kind == SystemKind::bipartite) {
    DensityOperator state =
        detail::decode_state(genes.subspan(0, codec.state_genes()), d * d, codec.mode);
    std::size_t off = codec.state_genes();
    std::vector<OrthonormalBasis> alice, bob;
    for (int i = 0; i < codec.alice_basis_count; ++i, off += bgenes)
      alice.push_back(detail::decode_basis(genes.subspan(off, bgenes)));
    for (int i = 0; i < 2; ++i, off += bgenes)
      bob.push_back(detail::decode_basis(genes.subspan(off, bgenes)));
    return MeasurementScenario(d, std::move(state), std::move(alice), std::move(bob),
                               "decoded");
  }
  detail::require(codec.kind == SystemKind::entangled_v,
                  "decode_scenario: codec kind is not bipartite");
  const UnitaryOperator v = unitary_from_unit_vector(genes.subspan(0, bgenes));
  std::size_t off = bgenes;
  std::vector<OrthonormalBasis> alice, bob;
  for (int i = 0; i < 2; ++i, off += bgenes)
    alice.push_back(detail::decode_basis(genes.subspan(off, bgenes)));
  for (int i = 0; i < 2; ++i, off += bgenes)
    bob.push_back(detail::decode_basis(genes.subspan(off, bgenes)));
  MeasurementScenario s(d, DensityOperator::from_pure(maximally_entangled(d, v)),
                        std::move(alice), std::move(bob), "decoded");
  s.state_unitary = v.matrix;
  return s;
}

inline SingleScenario decode_single(const ga::Genome& g, const ScenarioCodec& codec) {
  detail::require(codec.kind == SystemKind::single &&
                      static_cast<int>(g.genes.size()) == codec.length(),
                  "decode_single: codec/genome mismatch");
  const int d = codec.dim;
  std::span<const double> genes(g.genes);
  DensityOperator state =
      detail::decode_state(genes.subspan(0, codec.state_genes()), d, codec.mode);
  std::size_t off = codec.state_genes();
  OrthonormalBasis b1 = detail::decode_basis(genes.subspan(off, d * d));
  OrthonormalBasis b2 = detail::decode_basis(genes.subspan(off + d * d, d * d));
  return SingleScenario(std::move(state), std::move(b1), std::move(b2), "decoded");
}

inline EnsembleScenario decode_ensemble(const ga::Genome& g, const ScenarioCodec& codec) {
  detail::require(codec.kind == SystemKind::ensemble &&
                      static_cast<int>(g.genes.size()) == codec.length(),
                  "decode_ensemble: codec/genome mismatch");
  const int d = codec.dim;
  std::span<const double> genes(g.genes);
  std::vector<double> weights(d);
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    weights[i] = genes[i] + 1e-9;
    sum += weights[i];
  }
  for (double& w : weights) w /= sum;
  std::vector<DensityOperator> members;
  std::size_t off = d;
  for (int i = 0; i < d; ++i, off += 2 * d) {
    const ComplexVector psi = detail::decode_amplitudes(genes.subspan(off, 2 * d), d);
    members.push_back(DensityOperator(psi * psi.adjoint()));
  }
  OrthonormalBasis b1 = detail::decode_basis(genes.subspan(off, d * d));
  OrthonormalBasis b2 = detail::decode_basis(genes.subspan(off + d * d, d * d));
  return EnsembleScenario(Ensemble(std::move(weights), std::move(members)),
                          std::move(b1), std::move(b2), "decoded");
}

/// Free Renyi order decoded log-uniformly over [2^-3, 2^6].
inline double decode_alpha(double gene) { return std::exp2(-3.0 + 9.0 * gene); }

// ---------------------------------------------------------------------------
// Search driver
// ---------------------------------------------------------------------------

struct SearchTarget {
  std::string relation_id;
  int dim = 2;
  StateMode mode = StateMode::pure;
  std::optional<double> alpha;   // renyi-mu: fixed order, or free gene when unset
  double exponent_p = 0.5;       // exotic
  OptimizerBudget coeff_budget;  // rhs optimization of two-vs-two[-sum]

  bool optimized_rhs() const {
    return relation_id == relation_id::two_vs_two ||
           relation_id == relation_id::two_vs_two_sum;
  }
};

inline ScenarioCodec codec_for(const SearchTarget& t) {
  ScenarioCodec codec;
  codec.dim = t.dim;
  codec.mode = t.mode;
  const std::string& id = t.relation_id;
  if (id == relation_id::maassen_uffink) {
    codec.kind = SystemKind::single;
  } else if (id == relation_id::renyi_mu) {
    codec.kind = SystemKind::single;
    codec.param_genes = t.alpha ? 0 : 1;
  } else if (id == relation_id::hall) {
    codec.kind = SystemKind::ensemble;
  } else if (id == relation_id::one_vs_two || id == relation_id::one_vs_two_sq ||
             id == relation_id::one_vs_two_max) {
    codec.kind = SystemKind::bipartite;
    codec.alice_basis_count = 1;
  } else if (id == relation_id::two_vs_two || id == relation_id::exotic ||
             id == relation_id::two_vs_two_sum) {
    codec.kind = SystemKind::bipartite;
    codec.alice_basis_count = 2;
  } else if (id == relation_id::two_vs_two_state) {
    codec.kind = SystemKind::entangled_v;
  } else {
    throw std::invalid_argument("codec_for: unknown relation id '" + id + "'");
  }
  return codec;
}

/// Evaluates the target relation on a decoded genome. budget_scale > 1 runs
/// the verification pass for optimized bounds; `internal_reverify` controls
/// whether the optimized evaluators run their own violation re-check (the
/// search loop disables it and verifies candidates itself).
inline RelationReport evaluate_target(const SearchTarget& t, const ScenarioCodec& codec,
                                      const ga::Genome& g, int budget_scale = 1,
                                      bool internal_reverify = true) {
  const std::string& id = t.relation_id;
  if (id == relation_id::maassen_uffink) {
    const SingleScenario s = decode_single(g, codec);
    return eval_maassen_uffink(s.state, s.basis1, s.basis2);
  }
  if (id == relation_id::renyi_mu) {
    const SingleScenario s = decode_single(g, codec);
    const double alpha = t.alpha ? *t.alpha : decode_alpha(g.genes.back());
    return eval_renyi_mu(s.state, s.basis1, s.basis2, alpha);
  }
  if (id == relation_id::hall) return eval_hall(decode_ensemble(g, codec));

  const MeasurementScenario s = decode_scenario(g, codec);
  const OptimizerBudget budget =
      budget_scale > 1 ? t.coeff_budget.scaled(budget_scale) : t.coeff_budget;
  if (id == relation_id::one_vs_two) return eval_one_vs_two(s);
  if (id == relation_id::one_vs_two_sq) return eval_one_vs_two_sq(s);
  if (id == relation_id::one_vs_two_max) return eval_one_vs_two_max(s);
  if (id == relation_id::two_vs_two) return eval_two_vs_two(s, budget, internal_reverify);
  if (id == relation_id::exotic) return eval_exotic(s, t.exponent_p);
  if (id == relation_id::two_vs_two_sum)
    return eval_two_vs_two_sum(s, budget, internal_reverify);
  if (id == relation_id::two_vs_two_state) return eval_two_vs_two_state(s);
  throw std::invalid_argument("evaluate_target: unknown relation id '" + id + "'");
}

struct SearchRow {
  int generation = 0;
  double best_fitness = 0.0;  // raw trajectory, monotone under elitism
  double scale = 1.0;
};

struct SearchRecord {
  SearchTarget target;
  ga::GaConfig config;
  std::vector<SearchRow> rows;
  ga::Genome best_genome;
  double best_fitness = 0.0;      // raw fitness of the best genome
  double verified_fitness = 0.0;  // after the 10x verification pass, if any
  bool reverified = false;
  RelationReport best_report;  // authoritative report for the best genome
  long evaluations = 0;
};

/// Maximizes fitness = lhs - rhs of the target relation over encoded
/// scenarios. Degenerate bounds map to -inf fitness so the search avoids
/// trivially satisfied regions. Deterministic for a fixed seed in serial
/// mode. The per-generation log tracks the raw trajectory (monotone under
/// elitism); the best candidate of an optimized-bound relation is
/// re-evaluated at 10x coefficient budget whenever it sits in near-violation
/// territory, and the final report always carries the verified values.
inline SearchRecord run_search(const SearchTarget& target, const ga::GaConfig& config,
                               int threads = 1) {
  const ScenarioCodec codec = codec_for(target);

  auto raw_fitness = [&](const ga::Genome& g) {
    const RelationReport r =
        evaluate_target(target, codec, g, 1, /*internal_reverify=*/false);
    if (r.degenerate_rhs) return -std::numeric_limits<double>::infinity();
    return -r.slack;
  };

  SearchRecord record;
  record.target = target;
  record.config = config;
  record.rows.reserve(config.generations);

  auto observer = [&record](int gen, const std::vector<ga::Genome>&,
                            const std::vector<double>&, const ga::GenerationStat& stat) {
    record.rows.push_back({gen, stat.best_fitness, stat.scale});
  };

  const ga::EvolveResult res =
      ga::evolve(codec.length(), raw_fitness, config, threads, observer);
  record.best_genome = res.best_genome;
  record.best_fitness = res.best_fitness;
  record.evaluations = res.evaluations;

  // Authoritative report for the winner; near-violations of optimized
  // bounds get the 10x verification pass.
  const bool verify = target.optimized_rhs() && res.best_fitness > tol::near_violation;
  record.best_report = evaluate_target(target, codec, res.best_genome, verify ? 10 : 1);
  record.reverified = verify;
  record.verified_fitness = record.best_report.degenerate_rhs
                                ? -std::numeric_limits<double>::infinity()
                                : -record.best_report.slack;
  return record;
}

}  // namespace muir
