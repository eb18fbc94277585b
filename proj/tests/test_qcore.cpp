#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "muir/ga.hpp"
#include "muir/qcore.hpp"
#include "muir/scenarios.hpp"

using namespace muir;

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_CASE("tensor product identities and index order", "[qcore]") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  REQUIRE((tensor_product(i2, i2) - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1;  // |0>_A|1>_B at flat index 0*2+1
  REQUIRE((tensor_product(p0, p1) - expected).cwiseAbs().maxCoeff() == 0.0);

  // X (x) Z against the hand-expanded block matrix [[0,Z],[Z,0]].
  ComplexMatrix xz(4, 4);
  xz << 0, 0, 1, 0,
        0, 0, 0, -1,
        1, 0, 0, 0,
        0, -1, 0, 0;
  REQUIRE((tensor_product(pauli_x(), pauli_z()) - xz).cwiseAbs().maxCoeff() == 0.0);

  // Independent oracle: the explicit index formula on random matrices.
  ga::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int ra = 2 + static_cast<int>(ga::uniform01(rng) * 3);
    const int rb = 2 + static_cast<int>(ga::uniform01(rng) * 3);
    ComplexMatrix a(ra, ra), b(rb, rb);
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < ra; ++j)
        a(i, j) = Complex(ga::uniform01(rng) - 0.5, ga::uniform01(rng) - 0.5);
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < rb; ++j)
        b(i, j) = Complex(ga::uniform01(rng) - 0.5, ga::uniform01(rng) - 0.5);
    const ComplexMatrix t = tensor_product(a, b);
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < ra; ++j)
        for (int k = 0; k < rb; ++k)
          for (int l = 0; l < rb; ++l)
            REQUIRE(t(i * rb + k, j * rb + l) == a(i, j) * b(k, l));
  }
}

TEST_CASE("partial trace", "[qcore]") {
  SECTION("maximally mixed marginal of |Phi+>") {
    const DensityOperator rho = DensityOperator::from_pure(phi_plus(2));
    const DensityOperator red = partial_trace(rho, 2, 2, Party::alice);
    REQUIRE((red.matrix - ComplexMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("product state reduces to its factor") {
    ga::Rng rng(11);
    const DensityOperator rho_a = random_density_operator(3, rng);
    const DensityOperator rho_b = random_density_operator(3, rng);
    const DensityOperator joint =
        DensityOperator(tensor_product(rho_a.matrix, rho_b.matrix));
    const DensityOperator red = partial_trace(joint, 3, 3, Party::bob);
    REQUIRE((red.matrix - rho_a.matrix).cwiseAbs().maxCoeff() < 1e-12);
    const DensityOperator red_b = partial_trace(joint, 3, 3, Party::alice);
    REQUIRE((red_b.matrix - rho_b.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("Schmidt-weight marginal") {
    const std::vector<double> lambda{0.0332, 0.9668};
    const OrthonormalBasis comp = OrthonormalBasis::computational(2);
    const PureState psi = schmidt_state(lambda, comp, comp);
    const DensityOperator red =
        partial_trace(DensityOperator::from_pure(psi), 2, 2, Party::alice);
    REQUIRE(std::abs(red.matrix(0, 0).real() - 0.0332) < 1e-12);
    REQUIRE(std::abs(red.matrix(1, 1).real() - 0.9668) < 1e-12);
    REQUIRE(std::abs(red.matrix(0, 1)) < 1e-12);
  }
  SECTION("dimension mismatch throws") {
    const DensityOperator rho = DensityOperator::from_pure(phi_plus(2));
    REQUIRE_THROWS_AS(partial_trace(rho, 3, 2, Party::alice), std::invalid_argument);
  }
}

TEST_CASE("projector", "[qcore]") {
  ComplexVector e0(2);
  e0 << 1, 0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1;
  REQUIRE((projector(PureState(e0)) - expected).cwiseAbs().maxCoeff() == 0.0);

  ComplexVector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const ComplexMatrix p = projector(PureState(plus));
  REQUIRE(std::abs(p(0, 1).real() - 0.5) < 1e-15);

  ga::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(ga::uniform01(rng) * 5);
    const ComplexMatrix pr = projector(random_pure_state(d, rng));
    REQUIRE((pr * pr - pr).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE((pr - pr.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }

  ComplexVector zero = ComplexVector::Zero(2);
  REQUIRE_THROWS_AS(PureState(zero), std::invalid_argument);
}

TEST_CASE("maximally entangled state", "[qcore]") {
  const PureState bell = maximally_entangled(2, UnitaryOperator::identity(2));
  REQUIRE(std::abs(bell.amplitudes(0) - Complex(1 / std::sqrt(2.0))) < 1e-15);
  REQUIRE(std::abs(bell.amplitudes(3) - Complex(1 / std::sqrt(2.0))) < 1e-15);
  REQUIRE(std::abs(bell.amplitudes(1)) == 0.0);

  const PureState ghz3 = maximally_entangled(3, UnitaryOperator::identity(3));
  for (int i = 0; i < 3; ++i)
    REQUIRE(std::abs(ghz3.amplitudes(i * 3 + i) - Complex(1 / std::sqrt(3.0))) < 1e-15);

  ga::Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(ga::uniform01(rng) * 3);
    const UnitaryOperator v = random_unitary(d, rng);
    const DensityOperator rho = DensityOperator::from_pure(maximally_entangled(d, v));
    const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / d;
    REQUIRE((partial_trace(rho, d, d, Party::alice).matrix - mixed).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE((partial_trace(rho, d, d, Party::bob).matrix - mixed).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("schmidt state", "[qcore]") {
  const OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
  const std::vector<double> pin{1.0, 0.0};
  const PureState s = schmidt_state(pin, comp2, comp2);
  REQUIRE(std::abs(s.amplitudes(0) - Complex(1.0)) < 1e-15);

  const std::vector<double> uniform{0.5, 0.5};
  const PureState u = schmidt_state(uniform, comp2, comp2);
  const PureState bell = maximally_entangled(2, UnitaryOperator::identity(2));
  REQUIRE((u.amplitudes - bell.amplitudes).cwiseAbs().maxCoeff() < 1e-15);

  const std::vector<double> bad{-0.1, 1.1};
  REQUIRE_THROWS_AS(schmidt_state(bad, comp2, comp2), std::invalid_argument);
  const std::vector<double> unnormalized{0.4, 0.4};
  REQUIRE_THROWS_AS(schmidt_state(unnormalized, comp2, comp2), std::invalid_argument);
}

TEST_CASE("unitary from unit vector", "[qcore]") {
  SECTION("d=1 is a pure phase") {
    const std::vector<double> x{0.25};
    const UnitaryOperator u = unitary_from_unit_vector(x);
    REQUIRE(std::abs(u.matrix(0, 0) - std::polar(1.0, std::numbers::pi / 2.0)) < 1e-15);
  }
  SECTION("unitarity over random inputs") {
    ga::Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = 2 + static_cast<int>(ga::uniform01(rng) * 7);
      std::vector<double> x(static_cast<std::size_t>(d) * d);
      for (double& xi : x) xi = ga::uniform01(rng);
      const ComplexMatrix u = unitary_from_unit_vector(x).matrix;
      REQUIRE((u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  SECTION("out-of-range genes are clamped") {
    const std::vector<double> x{-0.5, 2.0, 0.3, 1.7};
    REQUIRE_NOTHROW(unitary_from_unit_vector(x));
  }
  SECTION("wrong length throws") {
    const std::vector<double> x{0.1, 0.2, 0.3};
    REQUIRE_THROWS_AS(unitary_from_unit_vector(x), std::invalid_argument);
  }
  SECTION("uniform genes give the Haar trace moment") {
    // E |tr U|^2 = 1 under the Haar measure; Monte-Carlo oracle.
    ga::Rng rng(23);
    for (int d : {2, 3}) {
      double sum = 0.0;
      const int samples = 100000;
      std::vector<double> x(static_cast<std::size_t>(d) * d);
      for (int i = 0; i < samples; ++i) {
        for (double& xi : x) xi = ga::uniform01(rng);
        sum += std::norm(unitary_from_unit_vector(x).matrix.trace());
      }
      REQUIRE(std::abs(sum / samples - 1.0) < 0.05);
    }
  }
}

TEST_CASE("gram schmidt", "[qcore]") {
  SECTION("orthonormal input unchanged") {
    ga::Rng rng(29);
    const OrthonormalBasis b = random_basis(4, rng);
    std::vector<ComplexVector> cols;
    for (int k = 0; k < 4; ++k) cols.push_back(b.vector(k));
    const OrthonormalBasis out = gram_schmidt(cols);
    REQUIRE((out.vectors - b.vectors).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("two-vector example") {
    ComplexVector v1(2), v2(2);
    v1 << 1, 0;
    v2 << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const OrthonormalBasis out = gram_schmidt({v1, v2});
    REQUIRE(std::abs(out.vectors(0, 0) - Complex(1.0)) < 1e-12);
    REQUIRE(std::abs(std::abs(out.vectors(1, 1)) - 1.0) < 1e-12);
    REQUIRE(std::abs(out.vectors(0, 1)) < 1e-12);
  }
  SECTION("random full-rank sets orthonormalize") {
    ga::Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 2 + static_cast<int>(ga::uniform01(rng) * 5);
      std::vector<ComplexVector> cols;
      for (int k = 0; k < d; ++k) {
        ComplexVector v(d);
        for (int i = 0; i < d; ++i)
          v(i) = Complex(ga::uniform01(rng) - 0.5, ga::uniform01(rng) - 0.5);
        cols.push_back(v);
      }
      const OrthonormalBasis out = gram_schmidt(cols);
      const ComplexMatrix gram = out.vectors.adjoint() * out.vectors;
      REQUIRE((gram - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SECTION("rank deficiency throws") {
    ComplexVector v1(2), v2(2);
    v1 << 1, 0;
    v2 << 1 + 1e-13, 0;
    REQUIRE_THROWS_AS(gram_schmidt({v1, v2}), std::invalid_argument);
  }
}

TEST_CASE("transpose identity U (x) U* |Phi+> = |Phi+>", "[qcore]") {
  ga::Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(ga::uniform01(rng) * 3);
    const ComplexMatrix u = random_unitary(d, rng).matrix;
    const ComplexMatrix full = tensor_product(u, u.conjugate());
    const ComplexVector phi = phi_plus(d).amplitudes;
    REQUIRE((full * phi - phi).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("density operator validation", "[qcore]") {
  ComplexMatrix not_hermitian(2, 2);
  not_hermitian << 0.5, 0.1, 0.2, 0.5;
  REQUIRE_THROWS_AS(DensityOperator(not_hermitian), std::invalid_argument);

  ComplexMatrix wrong_trace = ComplexMatrix::Identity(2, 2);
  REQUIRE_THROWS_AS(DensityOperator(wrong_trace), std::invalid_argument);

  ComplexMatrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  REQUIRE_THROWS_AS(DensityOperator(negative), std::invalid_argument);

  ga::Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityOperator rho = random_density_operator(4, rng);
    REQUIRE(std::abs(rho.matrix.trace().real() - 1.0) < 1e-10);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix, Eigen::EigenvaluesOnly);
    REQUIRE(es.eigenvalues().minCoeff() >= -1e-9);
    REQUIRE(es.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
  }
}

TEST_CASE("observable eigenbasis", "[qcore]") {
  ComplexMatrix xz(2, 2);
  xz << 1, 1, 1, -1;  // X + Z, eigenvalues +-sqrt 2
  const OrthonormalBasis b = observable_eigenbasis(xz);
  // First column belongs to the larger eigenvalue.
  const ComplexVector v0 = b.vector(0);
  REQUIRE((xz * v0 - std::sqrt(2.0) * v0).cwiseAbs().maxCoeff() < 1e-10);

  REQUIRE_THROWS_AS(observable_eigenbasis(ComplexMatrix::Identity(2, 2)),
                    std::invalid_argument);
}
