#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "muir/tolerances.hpp"

// Dense complex linear algebra and quantum-state constructors for small
// dimensions (up to ~16 per party). Bipartite index convention throughout:
// |i>_A (x) |j>_B maps to flat index i*dB + j. Transposes and conjugates are
// always taken in the computational basis.

namespace muir {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline bool finite(const ComplexMatrix& m) {
  return m.allFinite();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Unit-norm complex vector; ||amplitudes||^2 = 1 within tol::algebraic.
struct PureState {
  ComplexVector amplitudes;

  explicit PureState(ComplexVector amps) : amplitudes(std::move(amps)) {
    detail::require(amplitudes.size() > 0, "PureState: empty amplitude vector");
    detail::require(amplitudes.allFinite(), "PureState: non-finite amplitude");
    const double n2 = amplitudes.squaredNorm();
    detail::require(std::abs(n2 - 1.0) < tol::algebraic,
                    "PureState: norm^2 = " + std::to_string(n2) + " not 1");
  }

  /// Normalizes the input; rejects (near-)zero vectors.
  static PureState normalized(ComplexVector amps) {
    const double n = amps.norm();
    detail::require(n > 1e-12, "PureState::normalized: zero vector");
    return PureState(ComplexVector(amps / n));
  }

  int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// Hermitian, positive semidefinite, unit-trace operator.
struct DensityOperator {
  ComplexMatrix matrix;

  explicit DensityOperator(ComplexMatrix m) : matrix(std::move(m)) {
    detail::require(matrix.rows() == matrix.cols() && matrix.rows() > 0,
                    "DensityOperator: matrix not square");
    detail::require(detail::finite(matrix), "DensityOperator: non-finite entry");
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    detail::require(herm < tol::algebraic,
                    "DensityOperator: not Hermitian, deviation " + std::to_string(herm));
    const double tr = matrix.trace().real();
    detail::require(std::abs(tr - 1.0) < tol::algebraic,
                    "DensityOperator: trace = " + std::to_string(tr) + " not 1");
    // Hermitian eigensolver; matrices stay <= 256x256 at desk scale.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix, Eigen::EigenvaluesOnly);
    detail::require(es.eigenvalues().minCoeff() >= tol::eigenvalue_floor,
                    "DensityOperator: negative eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()));
  }

  static DensityOperator from_pure(const PureState& psi) {
    return DensityOperator(psi.amplitudes * psi.amplitudes.adjoint());
  }

  int dim() const { return static_cast<int>(matrix.rows()); }

  double purity() const { return (matrix * matrix).trace().real(); }
};

/// Ordered list of d orthonormal vectors (stored as matrix columns) defining
/// a projective measurement. Gram matrix = identity within tol::structural.
struct OrthonormalBasis {
  ComplexMatrix vectors;  // column k is the k-th basis vector

  explicit OrthonormalBasis(ComplexMatrix cols) : vectors(std::move(cols)) {
    detail::require(vectors.rows() == vectors.cols() && vectors.rows() > 0,
                    "OrthonormalBasis: need d vectors of dimension d");
    detail::require(detail::finite(vectors), "OrthonormalBasis: non-finite entry");
    const ComplexMatrix gram = vectors.adjoint() * vectors;
    const double dev =
        (gram - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    detail::require(dev < tol::structural,
                    "OrthonormalBasis: Gram deviation " + std::to_string(dev));
  }

  int dim() const { return static_cast<int>(vectors.rows()); }

  ComplexVector vector(int k) const { return vectors.col(k); }

  static OrthonormalBasis computational(int d) {
    return OrthonormalBasis(ComplexMatrix::Identity(d, d));
  }
};

/// U with U^dagger U = I within tol::structural.
struct UnitaryOperator {
  ComplexMatrix matrix;

  explicit UnitaryOperator(ComplexMatrix m) : matrix(std::move(m)) {
    detail::require(matrix.rows() == matrix.cols() && matrix.rows() > 0,
                    "UnitaryOperator: matrix not square");
    detail::require(detail::finite(matrix), "UnitaryOperator: non-finite entry");
    const ComplexMatrix g = matrix.adjoint() * matrix;
    const double dev =
        (g - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    detail::require(dev < tol::structural,
                    "UnitaryOperator: U^dag U deviation " + std::to_string(dev));
  }

  int dim() const { return static_cast<int>(matrix.rows()); }

  static UnitaryOperator identity(int d) {
    return UnitaryOperator(ComplexMatrix::Identity(d, d));
  }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Kronecker product, left factor outermost:
/// (A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l].
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

enum class Party { alice, bob };

/// Traces out the given party of a state on A (x) B, returning the reduced
/// operator on the other one. Trace is preserved.
inline DensityOperator partial_trace(const DensityOperator& rho, int dim_a,
                                     int dim_b, Party traced_out) {
  detail::require(dim_a > 0 && dim_b > 0 && rho.dim() == dim_a * dim_b,
                  "partial_trace: state dimension is not dim_a*dim_b");
  const ComplexMatrix& m = rho.matrix;
  if (traced_out == Party::alice) {
    ComplexMatrix red = ComplexMatrix::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i)
      red += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
    return DensityOperator(std::move(red));
  }
  ComplexMatrix red = ComplexMatrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j) {
      Complex s = 0;
      for (int k = 0; k < dim_b; ++k) s += m(i * dim_b + k, j * dim_b + k);
      red(i, j) = s;
    }
  return DensityOperator(std::move(red));
}

/// Rank-one projector |v><v|.
inline ComplexMatrix projector(const PureState& v) {
  return v.amplitudes * v.amplitudes.adjoint();
}

/// |Phi+> = (1/sqrt d) sum_i |i>|i>.
inline PureState phi_plus(int d) {
  detail::require(d >= 1, "phi_plus: dimension must be positive");
  ComplexVector amps = ComplexVector::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) amps(i * d + i) = a;
  return PureState(std::move(amps));
}

/// (I (x) V)|Phi+>; every Schmidt coefficient equals 1/sqrt d.
inline PureState maximally_entangled(int d, const UnitaryOperator& v) {
  detail::require(v.dim() == d, "maximally_entangled: V dimension mismatch");
  ComplexVector amps(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) amps(i * d + j) = a * v.matrix(j, i);
  return PureState(std::move(amps));
}

/// sum_i sqrt(lambda_i) |basis_a_i> (x) |basis_b_i>. Coefficients must be
/// nonnegative and sum to 1 within tol::algebraic.
inline PureState schmidt_state(std::span<const double> coeffs,
                               const OrthonormalBasis& basis_a,
                               const OrthonormalBasis& basis_b) {
  const int d = basis_a.dim();
  detail::require(basis_b.dim() == d, "schmidt_state: basis dimension mismatch");
  detail::require(!coeffs.empty() && static_cast<int>(coeffs.size()) <= d,
                  "schmidt_state: need 1..d coefficients");
  double sum = 0.0;
  for (double c : coeffs) {
    detail::require(c >= 0.0, "schmidt_state: negative coefficient");
    sum += c;
  }
  detail::require(std::abs(sum - 1.0) < tol::algebraic,
                  "schmidt_state: coefficients sum to " + std::to_string(sum));
  ComplexVector amps = ComplexVector::Zero(d * d);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double w = std::sqrt(coeffs[i]);
    const ComplexVector va = basis_a.vector(static_cast<int>(i));
    const ComplexVector vb = basis_b.vector(static_cast<int>(i));
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) amps(m * d + n) += w * va(m) * vb(n);
  }
  return PureState(std::move(amps));
}

/// Deterministic map [0,1]^(d^2) -> U(d), built as a composition of
/// elementary two-dimensional rotations with phases (one recursion stage per
/// dimension). The rotation angles use root-of-uniform maps chosen so that
/// each stage's first column is uniform on the complex sphere; by the
/// subgroup decomposition of the unitary group, uniform input then induces
/// the Haar distribution. Continuous in x and surjective up to measure zero.
/// Out-of-range components are clamped to [0,1].
inline UnitaryOperator unitary_from_unit_vector(std::span<const double> x) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(x.size()))));
  detail::require(n >= 1 && static_cast<std::size_t>(n) * n == x.size(),
                  "unitary_from_unit_vector: length must be a perfect square");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto gene = [&x](std::size_t i) { return std::clamp(x[i], 0.0, 1.0); };

  std::size_t idx = 0;
  ComplexMatrix u(1, 1);
  u(0, 0) = std::polar(1.0, two_pi * gene(idx++));
  for (int m = 2; m <= n; ++m) {
    ComplexMatrix w = ComplexMatrix::Identity(m, m);
    w.block(1, 1, m - 1, m - 1) = u;
    // Left-multiply rotations in planes (0, j-1): row mixing only.
    for (int j = 2; j <= m; ++j) {
      // cos^2(phi_j) ~ Beta(j-1, 1): stick-breaking of a uniform simplex
      // point for the stage's first-column magnitudes.
      const double xi = gene(idx++);
      const double phi = std::acos(std::pow(xi, 0.5 / (j - 1)));
      const double chi = two_pi * gene(idx++);
      const double c = std::cos(phi), s = std::sin(phi);
      const Complex e_plus = std::polar(1.0, chi);
      const Complex e_minus = std::polar(1.0, -chi);
      const Eigen::RowVectorXcd row0 = w.row(0);
      const Eigen::RowVectorXcd rowj = w.row(j - 1);
      w.row(0) = c * row0 - s * e_minus * rowj;
      w.row(j - 1) = s * e_plus * row0 + c * rowj;
    }
    w.row(0) *= std::polar(1.0, two_pi * gene(idx++));
    u = std::move(w);
  }
  return UnitaryOperator(std::move(u));
}

/// Modified Gram-Schmidt with re-orthogonalization. Preserves the span and
/// the direction of the first vector; throws on rank deficiency.
inline OrthonormalBasis gram_schmidt(const std::vector<ComplexVector>& vectors) {
  detail::require(!vectors.empty(), "gram_schmidt: no vectors");
  const int d = static_cast<int>(vectors.front().size());
  detail::require(static_cast<int>(vectors.size()) == d,
                  "gram_schmidt: need exactly d vectors of dimension d");
  ComplexMatrix q(d, d);
  for (int k = 0; k < d; ++k) {
    detail::require(vectors[k].size() == d, "gram_schmidt: ragged input");
    ComplexVector v = vectors[k];
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < k; ++j) v -= q.col(j).dot(v) * q.col(j);
    const double norm = v.norm();
    detail::require(norm >= 1e-10, "gram_schmidt: rank-deficient input at vector " +
                                       std::to_string(k));
    q.col(k) = v / norm;
  }
  return OrthonormalBasis(std::move(q));
}

/// Eigenbasis of a Hermitian observable, outcomes ordered by descending
/// eigenvalue. Degenerate spectra are rejected for d <= 4 (the measurement
/// partition would be ambiguous).
inline OrthonormalBasis observable_eigenbasis(const ComplexMatrix& observable) {
  detail::require(observable.rows() == observable.cols() && observable.rows() > 0,
                  "observable_eigenbasis: matrix not square");
  const double herm = (observable - observable.adjoint()).cwiseAbs().maxCoeff();
  detail::require(herm < tol::structural, "observable_eigenbasis: not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(observable);
  const int d = static_cast<int>(observable.rows());
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (d <= 4) {
    for (int i = 0; i + 1 < d; ++i)
      detail::require(es.eigenvalues()(i + 1) - es.eigenvalues()(i) > tol::structural * scale,
                      "observable_eigenbasis: degenerate eigenvalues");
  }
  ComplexMatrix cols(d, d);
  for (int k = 0; k < d; ++k) cols.col(k) = es.eigenvectors().col(d - 1 - k);
  return OrthonormalBasis(std::move(cols));
}

}  // namespace muir
