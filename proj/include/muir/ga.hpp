#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "muir/tolerances.hpp"

// Real-coded genetic algorithm over [0,1]^n with elitism, binary tournament
// selection, positionwise swap crossover and adaptive mutation scaling: the
// scale starts at 1, grows by 1.1x (capped at 1) on improvement, shrinks by
// /1.05 otherwise and resets to 1 when it falls below 1e-9.

namespace muir::ga {

using Rng = std::mt19937_64;

/// Portable uniform draw in [0,1); avoids distribution-object variability.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Stateless mix for deriving substream seeds (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct Genome {
  std::vector<double> genes;  // each in [0,1]

  bool operator==(const Genome&) const = default;
};

struct GaConfig {
  int population_size = 25;
  int elite_count = 3;
  int generations = 1000;
  std::uint64_t seed = 0;
  double mutation_rate = 0.1;   // per-gene selection probability
  double crossover_rate = 0.7;  // per-pair crossover probability
  double scale_floor = 1e-9;
  double scale_up = 1.1;
  double scale_down = 1.05;

  void validate() const {
    if (population_size < 2 || elite_count < 0 || elite_count >= population_size)
      throw std::invalid_argument("GaConfig: need 0 <= elite < population");
    if (generations < 1) throw std::invalid_argument("GaConfig: generations < 1");
    if (mutation_rate < 0 || mutation_rate > 1 || crossover_rate < 0 || crossover_rate > 1)
      throw std::invalid_argument("GaConfig: rates must be in [0,1]");
  }
};

/// Adaptive scale rule: min(1, up*s) on improvement, s/down otherwise,
/// reset to 1 when the result falls below the floor.
inline double mutation_scale_update(double s, bool improved, double up = 1.1,
                                    double down = 1.05, double floor = 1e-9) {
  if (improved) return std::min(1.0, up * s);
  const double next = s / down;
  return next < floor ? 1.0 : next;
}

/// Each gene is selected with probability `rate` and shifted by s*(1-2r)
/// with a fresh uniform r, then clamped to [0,1].
inline Genome mutate(const Genome& g, double s, double rate, Rng& rng) {
  Genome out = g;
  for (double& gene : out.genes) {
    if (uniform01(rng) < rate) {
      gene += s * (1.0 - 2.0 * uniform01(rng));
      gene = std::clamp(gene, 0.0, 1.0);
    }
  }
  return out;
}

/// Positionwise swap: each position is exchanged with probability 1/2, so
/// {child1[i], child2[i]} = {a[i], b[i]} for every i.
inline std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) {
  if (a.genes.size() != b.genes.size())
    throw std::invalid_argument("crossover: genome length mismatch");
  Genome c1 = a, c2 = b;
  for (std::size_t i = 0; i < a.genes.size(); ++i)
    if (uniform01(rng) < 0.5) std::swap(c1.genes[i], c2.genes[i]);
  return {std::move(c1), std::move(c2)};
}

struct GenerationStat {
  int generation = 0;
  double best_fitness = 0.0;  // best ever, monotone nondecreasing
  double scale = 1.0;         // value after this generation's update
  bool improved = false;
};

struct EvolveResult {
  Genome best_genome;
  double best_fitness = 0.0;
  std::vector<GenerationStat> log;
  long evaluations = 0;
};

/// Observer invoked after each generation's evaluation with the sorted-by-
/// fitness population (descending); used by tests and search logging.
using GenerationObserver = std::function<void(
    int generation, const std::vector<Genome>& population,
    const std::vector<double>& fitnesses, const GenerationStat& stat)>;

/// Maximizes `fitness` over [0,1]^genome_length. Breeding randomness comes
/// from one substream per generation derived from the master seed, so serial
/// and parallel fitness evaluation produce identical populations; runs are
/// bit-identical for a fixed seed.
template <typename Fitness>
EvolveResult evolve(int genome_length, Fitness&& fitness, const GaConfig& cfg,
                    int threads = 1, const GenerationObserver& observer = {}) {
  cfg.validate();
  if (genome_length < 1) throw std::invalid_argument("evolve: empty genome");

  const int pop_n = cfg.population_size;
  Rng init_rng(mix_seed(cfg.seed, 0));
  std::vector<Genome> population(pop_n);
  for (auto& g : population) {
    g.genes.resize(genome_length);
    for (double& x : g.genes) x = uniform01(init_rng);
  }

  auto evaluate_all = [&](const std::vector<Genome>& pop) {
    std::vector<double> fit(pop.size());
    if (threads > 1) {
      std::vector<std::future<void>> jobs;
      const int stride = (static_cast<int>(pop.size()) + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        const int lo = t * stride;
        const int hi = std::min<int>(lo + stride, static_cast<int>(pop.size()));
        if (lo >= hi) break;
        jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
          for (int i = lo; i < hi; ++i) fit[i] = fitness(pop[i]);
        }));
      }
      for (auto& j : jobs) j.get();
    } else {
      for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = fitness(pop[i]);
    }
    return fit;
  };

  EvolveResult result;
  result.log.reserve(cfg.generations);
  double best_ever = -std::numeric_limits<double>::infinity();
  double scale = 1.0;

  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::vector<double> fit = evaluate_all(population);
    result.evaluations += pop_n;

    std::vector<int> order(pop_n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fit[a] > fit[b]; });

    const double gen_best = fit[order[0]];
    const bool improved = gen_best > best_ever + tol::improvement_margin;
    if (gen_best > best_ever) {
      best_ever = gen_best;
      result.best_genome = population[order[0]];
    }
    scale = mutation_scale_update(scale, improved, cfg.scale_up, cfg.scale_down,
                                  cfg.scale_floor);
    const GenerationStat stat{gen, best_ever, scale, improved};
    result.log.push_back(stat);
    if (observer) {
      std::vector<Genome> sorted_pop(pop_n);
      std::vector<double> sorted_fit(pop_n);
      for (int i = 0; i < pop_n; ++i) {
        sorted_pop[i] = population[order[i]];
        sorted_fit[i] = fit[order[i]];
      }
      observer(gen, sorted_pop, sorted_fit, stat);
    }
    if (gen + 1 == cfg.generations) break;

    // Breed the next generation: elites verbatim, the rest from binary
    // tournaments over the whole current population.
    Rng breed_rng(mix_seed(cfg.seed, 0x67656e00ull + static_cast<std::uint64_t>(gen)));
    auto tournament = [&]() -> const Genome& {
      const int a = static_cast<int>(uniform01(breed_rng) * pop_n);
      const int b = static_cast<int>(uniform01(breed_rng) * pop_n);
      return fit[a] >= fit[b] ? population[a] : population[b];
    };
    std::vector<Genome> next;
    next.reserve(pop_n);
    for (int e = 0; e < cfg.elite_count; ++e) next.push_back(population[order[e]]);
    while (static_cast<int>(next.size()) < pop_n) {
      Genome c1 = tournament();
      Genome c2 = tournament();
      if (uniform01(breed_rng) < cfg.crossover_rate)
        std::tie(c1, c2) = crossover(c1, c2, breed_rng);
      next.push_back(mutate(c1, scale, cfg.mutation_rate, breed_rng));
      if (static_cast<int>(next.size()) < pop_n)
        next.push_back(mutate(c2, scale, cfg.mutation_rate, breed_rng));
    }
    population = std::move(next);
  }

  result.best_fitness = best_ever;
  return result;
}

}  // namespace muir::ga
