#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "muir/info.hpp"
#include "muir/scenarios.hpp"

using namespace muir;

TEST_CASE("shannon entropy", "[info]") {
  REQUIRE(shannon_entropy(ProbVector({1.0, 0.0})) == 0.0);
  REQUIRE(std::abs(shannon_entropy(ProbVector({0.25, 0.25, 0.25, 0.25})) - 2.0) < 1e-15);
  REQUIRE(std::abs(shannon_entropy(ProbVector({0.5, 0.25, 0.25})) - 1.5) < 1e-15);
}

TEST_CASE("renyi entropy", "[info]") {
  SECTION("uniform is log d at every order") {
    for (double alpha : {0.3, 0.999999, 2.0, 7.5, alpha_infinity}) {
      REQUIRE(std::abs(renyi_entropy(ProbVector({0.25, 0.25, 0.25, 0.25}), alpha) - 2.0) <
              1e-9);
    }
  }
  SECTION("min-entropy sentinel") {
    REQUIRE(std::abs(renyi_entropy(ProbVector({0.5, 0.25, 0.25}), alpha_infinity) - 1.0) <
            1e-15);
  }
  SECTION("collision entropy of (1/2,1/4,1/4)") {
    REQUIRE(std::abs(renyi_entropy(ProbVector({0.5, 0.25, 0.25}), 2.0) -
                     std::log2(8.0 / 3.0)) < 1e-12);
  }
  SECTION("alpha -> 1 delegates to Shannon") {
    const ProbVector p({0.7, 0.2, 0.1});
    REQUIRE(renyi_entropy(p, 1.0 + 1e-9) == shannon_entropy(p));
  }
  SECTION("huge alpha does not underflow") {
    REQUIRE(std::abs(renyi_entropy(ProbVector({0.5, 0.5}), 5000.0) - 1.0) < 1e-3);
  }
  SECTION("monotone nonincreasing in alpha") {
    ga::Rng rng(43);
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = 2 + static_cast<int>(ga::uniform01(rng) * 6);
      std::vector<double> p(d);
      double sum = 0.0;
      for (double& x : p) {
        x = ga::uniform01(rng) + 1e-9;
        sum += x;
      }
      for (double& x : p) x /= sum;
      const ProbVector pv(std::move(p));
      double a = 0.1 + 4.0 * ga::uniform01(rng);
      double b = a + 0.1 + 10.0 * ga::uniform01(rng);
      REQUIRE(renyi_entropy(pv, a) - renyi_entropy(pv, b) >= -1e-10);
      REQUIRE(renyi_entropy(pv, b) - renyi_entropy(pv, alpha_infinity) >= -1e-10);
    }
  }
  SECTION("invalid alpha throws") {
    REQUIRE_THROWS_AS(renyi_entropy(ProbVector({0.5, 0.5}), 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(renyi_entropy(ProbVector({0.5, 0.5}), -2.0), std::invalid_argument);
  }
}

TEST_CASE("joint distribution", "[info]") {
  const OrthonormalBasis comp = OrthonormalBasis::computational(2);
  const DensityOperator bell = DensityOperator::from_pure(phi_plus(2));

  SECTION("|Phi+> in matching computational bases") {
    const JointDistribution j = joint_distribution(bell, comp, comp);
    REQUIRE(std::abs(j.p(0, 0) - 0.5) < 1e-12);
    REQUIRE(std::abs(j.p(1, 1) - 0.5) < 1e-12);
    REQUIRE(j.p(0, 1) < 1e-12);
  }
  SECTION("product states factorize") {
    ga::Rng rng(47);
    const DensityOperator rho_a = random_density_operator(3, rng);
    const DensityOperator rho_b = random_density_operator(3, rng);
    const DensityOperator joint_state =
        DensityOperator(tensor_product(rho_a.matrix, rho_b.matrix));
    const OrthonormalBasis ba = random_basis(3, rng);
    const OrthonormalBasis bb = random_basis(3, rng);
    const JointDistribution j = joint_distribution(joint_state, ba, bb);
    const ProbVector pa = outcome_distribution(rho_a, ba);
    const ProbVector pb = outcome_distribution(rho_b, bb);
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        REQUIRE(std::abs(j.p(k, l) - pa.probs[k] * pb.probs[l]) < 1e-12);
  }
  SECTION("mutually unbiased pair on |Phi+> is uniform") {
    ComplexMatrix h(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    const JointDistribution j = joint_distribution(bell, comp, OrthonormalBasis(h));
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) REQUIRE(std::abs(j.p(k, l) - 0.25) < 1e-12);
  }
  SECTION("Bob's marginal ignores Alice's basis choice") {
    ga::Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
      const int d = 2 + static_cast<int>(ga::uniform01(rng) * 2);
      const DensityOperator rho = random_density_operator(d * d, rng);
      const OrthonormalBasis a1 = random_basis(d, rng);
      const OrthonormalBasis a2 = random_basis(d, rng);
      const OrthonormalBasis bb = random_basis(d, rng);
      const ProbVector m1 = joint_distribution(rho, a1, bb).marginal_bob();
      const ProbVector m2 = joint_distribution(rho, a2, bb).marginal_bob();
      for (int j = 0; j < d; ++j)
        REQUIRE(std::abs(m1.probs[j] - m2.probs[j]) < 1e-10);
    }
  }
}

TEST_CASE("mutual information", "[info]") {
  SECTION("product joint vanishes") {
    RealMatrix p(2, 2);
    p << 0.35, 0.35, 0.15, 0.15;
    REQUIRE(mutual_information(JointDistribution(p)) < 1e-12);
  }
  SECTION("perfect correlation gives log d") {
    for (int d : {2, 3, 4}) {
      RealMatrix p = RealMatrix::Zero(d, d);
      for (int i = 0; i < d; ++i) p(i, i) = 1.0 / d;
      REQUIRE(std::abs(mutual_information(JointDistribution(p)) - std::log2(double(d))) <
              1e-12);
    }
  }
  SECTION("bounded by the smaller marginal entropy") {
    ga::Rng rng(59);
    for (int trial = 0; trial < 500; ++trial) {
      const int d = 2 + static_cast<int>(ga::uniform01(rng) * 4);
      RealMatrix p(d, d);
      double sum = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          p(i, j) = ga::uniform01(rng);
          sum += p(i, j);
        }
      p /= sum;
      const JointDistribution joint(p);
      const double mi = mutual_information(joint);
      REQUIRE(mi >= 0.0);
      REQUIRE(mi <= std::min(shannon_entropy(joint.marginal_alice()),
                             shannon_entropy(joint.marginal_bob())) +
                        1e-12);
    }
  }
  SECTION("coarse-graining Bob never increases it") {
    ga::Rng rng(61);
    for (int trial = 0; trial < 300; ++trial) {
      const int d = 3 + static_cast<int>(ga::uniform01(rng) * 3);
      RealMatrix p(d, d);
      double sum = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          p(i, j) = ga::uniform01(rng);
          sum += p(i, j);
        }
      p /= sum;
      // Merge Bob's last two outcomes.
      RealMatrix q(d, d - 1);
      q.leftCols(d - 2) = p.leftCols(d - 2);
      q.col(d - 2) = p.col(d - 2) + p.col(d - 1);
      REQUIRE(mutual_information(JointDistribution(q)) <=
              mutual_information(JointDistribution(p)) + 1e-10);
    }
  }
}

TEST_CASE("accessible information", "[info]") {
  SECTION("identical members carry nothing") {
    ga::Rng rng(67);
    const DensityOperator rho = random_density_operator(3, rng);
    const Ensemble e({0.4, 0.6}, {rho, rho});
    REQUIRE(accessible_information(e, random_basis(3, rng)) < 1e-12);
  }
  SECTION("orthogonal pure states in their own basis give log d") {
    for (int d : {2, 3, 4}) {
      const OrthonormalBasis comp = OrthonormalBasis::computational(d);
      std::vector<double> w(d, 1.0 / d);
      std::vector<DensityOperator> states;
      for (int i = 0; i < d; ++i)
        states.push_back(DensityOperator(projector(PureState(comp.vector(i)))));
      const Ensemble e(w, std::move(states));
      REQUIRE(std::abs(accessible_information(e, comp) - std::log2(double(d))) < 1e-12);
    }
  }
  SECTION("agrees with the induced joint's mutual information") {
    ga::Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
      const int members = 2 + static_cast<int>(ga::uniform01(rng) * 3);
      std::vector<double> w(members);
      double sum = 0.0;
      for (double& x : w) {
        x = ga::uniform01(rng) + 1e-6;
        sum += x;
      }
      for (double& x : w) x /= sum;
      std::vector<DensityOperator> states;
      for (int i = 0; i < members; ++i) states.push_back(random_density_operator(2, rng));
      const Ensemble e(std::move(w), std::move(states));
      const OrthonormalBasis basis = random_basis(2, rng);
      REQUIRE(std::abs(accessible_information(e, basis) -
                       mutual_information(ensemble_joint(e, basis))) < 1e-10);
      REQUIRE(accessible_information(e, basis) <=
              shannon_entropy(ProbVector(std::vector<double>(e.weights))) + 1e-10);
    }
  }
}
