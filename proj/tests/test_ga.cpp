#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "muir/ga.hpp"

using namespace muir;
using ga::Genome;

TEST_CASE("mutation scale update", "[ga]") {
  SECTION("improvement grows by 1.1x capped at 1") {
    REQUIRE(ga::mutation_scale_update(1.0, true) == 1.0);
    REQUIRE(ga::mutation_scale_update(0.5, true) == 0.55);
    REQUIRE(ga::mutation_scale_update(0.95, true) == 1.0);
  }
  SECTION("stagnation shrinks by /1.05") {
    REQUIRE(ga::mutation_scale_update(0.5, false) == 0.5 / 1.05);
    REQUIRE(ga::mutation_scale_update(1.0, false) == 1.0 / 1.05);
  }
  SECTION("falling below the 1e-9 floor resets to 1") {
    REQUIRE(ga::mutation_scale_update(1.0e-9, false) == 1.0);
    REQUIRE(ga::mutation_scale_update(1.05e-9, false) == 1.05e-9 / 1.05);
  }
}

TEST_CASE("mutate", "[ga]") {
  ga::Rng rng(101);
  Genome g{std::vector<double>(50, 0.5)};

  SECTION("zero scale leaves the genome unchanged") {
    REQUIRE(ga::mutate(g, 0.0, 1.0, rng) == g);
  }
  SECTION("zero rate leaves the genome unchanged") {
    REQUIRE(ga::mutate(g, 1.0, 0.0, rng) == g);
  }
  SECTION("offsets stay within +-s and average to zero") {
    const double s = 0.01;
    double mean = 0.0;
    long count = 0;
    for (int rep = 0; rep < 2000; ++rep) {
      const Genome m = ga::mutate(g, s, 1.0, rng);
      for (std::size_t i = 0; i < m.genes.size(); ++i) {
        const double delta = m.genes[i] - 0.5;
        REQUIRE(std::abs(delta) <= s + 1e-15);
        mean += delta;
        ++count;
      }
    }
    // 1e5 draws of Uniform(-s, s): sd of the mean is s/sqrt(3e5).
    REQUIRE(std::abs(mean / count) < 5.0 * s / std::sqrt(3.0 * count));
  }
  SECTION("results stay in [0,1] even at full scale") {
    for (int rep = 0; rep < 500; ++rep) {
      const Genome m = ga::mutate(g, 1.0, 1.0, rng);
      for (double x : m.genes) {
        REQUIRE(x >= 0.0);
        REQUIRE(x <= 1.0);
      }
    }
  }
}

TEST_CASE("crossover", "[ga]") {
  ga::Rng rng(103);

  SECTION("identical parents breed identical children") {
    Genome a{{0.1, 0.2, 0.3, 0.4}};
    auto [c1, c2] = ga::crossover(a, a, rng);
    REQUIRE(c1 == a);
    REQUIRE(c2 == a);
  }
  SECTION("children are a positionwise permutation of the parents") {
    Genome a{std::vector<double>(40)}, b{std::vector<double>(40)};
    for (int i = 0; i < 40; ++i) {
      a.genes[i] = ga::uniform01(rng);
      b.genes[i] = ga::uniform01(rng);
    }
    for (int rep = 0; rep < 200; ++rep) {
      auto [c1, c2] = ga::crossover(a, b, rng);
      for (int i = 0; i < 40; ++i) {
        const bool kept = c1.genes[i] == a.genes[i] && c2.genes[i] == b.genes[i];
        const bool swapped = c1.genes[i] == b.genes[i] && c2.genes[i] == a.genes[i];
        REQUIRE((kept || swapped));
      }
    }
  }
  SECTION("swap count is Binomial(n, 1/2)") {
    const int n = 100;
    Genome a{std::vector<double>(n, 0.0)}, b{std::vector<double>(n, 1.0)};
    long swaps = 0;
    const int reps = 5000;
    for (int rep = 0; rep < reps; ++rep) {
      auto [c1, c2] = ga::crossover(a, b, rng);
      for (int i = 0; i < n; ++i)
        if (c1.genes[i] == 1.0) ++swaps;
    }
    // sd of the per-rep count is sqrt(n/4) = 5, so the mean over 5000 reps
    // has sd ~ 0.07; 0.5 is a seven-sigma corridor.
    const double mean = double(swaps) / reps;
    REQUIRE(std::abs(mean - n / 2.0) < 0.5);
  }
  SECTION("length mismatch throws") {
    Genome a{{0.1}}, b{{0.1, 0.2}};
    REQUIRE_THROWS_AS(ga::crossover(a, b, rng), std::invalid_argument);
  }
}

TEST_CASE("evolve mechanics", "[ga]") {
  // Toy landscape with a unique optimum at 0.7 per gene.
  auto fitness = [](const Genome& g) {
    double f = 0.0;
    for (double x : g.genes) f -= (x - 0.7) * (x - 0.7);
    return f;
  };
  ga::GaConfig cfg;
  cfg.population_size = 25;
  cfg.elite_count = 3;
  cfg.generations = 120;
  cfg.seed = 7;

  SECTION("best fitness is monotone and the scale follows the rule") {
    const ga::EvolveResult res = ga::evolve(8, fitness, cfg);
    REQUIRE(static_cast<int>(res.log.size()) == cfg.generations);
    double prev_best = -1e300;
    double prev_scale = 1.0;
    for (const auto& stat : res.log) {
      REQUIRE(stat.best_fitness >= prev_best);
      const double expected =
          ga::mutation_scale_update(prev_scale, stat.improved);
      REQUIRE(stat.scale == expected);
      prev_best = stat.best_fitness;
      prev_scale = stat.scale;
    }
    REQUIRE(res.best_fitness > -0.01);  // converges near the optimum
    REQUIRE(res.evaluations == long(cfg.generations) * cfg.population_size);
  }

  SECTION("elites survive verbatim and counts stay fixed") {
    std::vector<std::vector<Genome>> sorted_pops;
    auto observer = [&](int, const std::vector<Genome>& pop,
                        const std::vector<double>&, const ga::GenerationStat&) {
      sorted_pops.push_back(pop);
    };
    ga::evolve(6, fitness, cfg, 1, observer);
    for (std::size_t g = 0; g + 1 < sorted_pops.size(); ++g) {
      REQUIRE(static_cast<int>(sorted_pops[g].size()) == cfg.population_size);
      for (int e = 0; e < cfg.elite_count; ++e) {
        const Genome& elite = sorted_pops[g][e];
        const auto& next = sorted_pops[g + 1];
        REQUIRE(std::count(next.begin(), next.end(), elite) >= 1);
      }
    }
  }

  SECTION("all genes remain in [0,1] through every generation") {
    auto observer = [&](int, const std::vector<Genome>& pop,
                        const std::vector<double>&, const ga::GenerationStat&) {
      for (const auto& g : pop)
        for (double x : g.genes) {
          REQUIRE(x >= 0.0);
          REQUIRE(x <= 1.0);
        }
    };
    ga::evolve(5, fitness, cfg, 1, observer);
  }

  SECTION("fixed seed reproduces bit-identical runs") {
    const ga::EvolveResult r1 = ga::evolve(10, fitness, cfg);
    const ga::EvolveResult r2 = ga::evolve(10, fitness, cfg);
    REQUIRE(r1.best_genome == r2.best_genome);
    REQUIRE(r1.best_fitness == r2.best_fitness);
    REQUIRE(r1.log.size() == r2.log.size());
    for (std::size_t i = 0; i < r1.log.size(); ++i) {
      REQUIRE(r1.log[i].best_fitness == r2.log[i].best_fitness);
      REQUIRE(r1.log[i].scale == r2.log[i].scale);
    }
  }

  SECTION("parallel evaluation matches serial exactly") {
    const ga::EvolveResult serial = ga::evolve(10, fitness, cfg, 1);
    const ga::EvolveResult parallel = ga::evolve(10, fitness, cfg, 4);
    REQUIRE(serial.best_genome == parallel.best_genome);
    REQUIRE(serial.best_fitness == parallel.best_fitness);
  }

  SECTION("invalid configuration throws") {
    ga::GaConfig bad = cfg;
    bad.elite_count = bad.population_size;
    REQUIRE_THROWS_AS(ga::evolve(4, fitness, bad), std::invalid_argument);
  }
}
