#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nogaps/common.hpp"

namespace nogaps::linalg {

struct Eigenpair {
  Complex value;
  Vector vector;    // unit norm, canonical phase
  double residual;  // ||A v - lambda v||_2
};

/// Full spectrum of a square matrix. Eigenvalues are sorted lexicographically
/// by (real part, imaginary part); each eigenvector has unit norm and its
/// largest-modulus coordinate (ties broken by lowest index) made real and
/// nonnegative. For clustered or defective spectra the residual is the only
/// promise.
struct Spectrum {
  std::vector<Eigenpair> pairs;
  double norm_estimate = 0.0;  // operator norm used for the residual bound
  double tol = 0.0;            // relative residual bound the spectrum satisfies
};

/// Thrown when the Schur iteration fails to converge or a residual exceeds
/// the requested bound. Carries the partial Schur form.
class EigenDecompositionError : public std::runtime_error {
 public:
  EigenDecompositionError(const std::string& what, Matrix partial_t, Matrix partial_u)
      : std::runtime_error(what), partial_t_(std::move(partial_t)), partial_u_(std::move(partial_u)) {}
  const Matrix& partial_schur_t() const { return partial_t_; }
  const Matrix& partial_schur_u() const { return partial_u_; }

 private:
  Matrix partial_t_, partial_u_;
};

/// A - lambda with lambda subtracted on the main diagonal only; valid for
/// rectangular A.
Matrix shift(const Matrix& a, Complex lambda);

/// Columns of A selected by the index set J, in ascending index order.
/// Out-of-range or duplicate indices are rejected.
Matrix column_submatrix(const Matrix& a, std::vector<Index> cols);

Spectrum eigen_decompose(const Matrix& a, double tol = 1e-8);

/// s_min(A) for rows >= cols, from the singular spectrum of the
/// bidiagonalized matrix (never the Gram matrix). Callers with rows < cols
/// transpose instead.
double smallest_singular_value(const Matrix& a);

/// s_1(A) via power iteration on A^* A with a deterministic random start and
/// a successive-estimate convergence test. Zero matrices return 0.
double operator_norm(const Matrix& a, double tol = 1e-8);

/// Unit kernel vector of an (n-1) x n matrix, with the same phase convention
/// as eigen_decompose. ||A v|| is at machine-precision scale for full
/// row-rank inputs.
Vector kernel_vector(const Matrix& a);

/// dist(X, H + v) = ||(X - v) - P_H (X - v)|| where H = span(basis), by
/// modified Gram-Schmidt with one reorthogonalization pass. Rank is decided
/// at threshold 1e-12 * (largest basis norm); the basis may be
/// rank-deficient.
double dist_to_subspace(const Vector& x, const std::vector<Vector>& basis, const Vector& v);

/// underline(v) = (Re v; Im v).
RealVector realify_vector(const Vector& v);
/// [M] = [[A, -B], [B, A]] for M = A + iB. Satisfies [M] underline(x) = underline(Mx).
RealMatrix realify_matrix(const Matrix& m);

/// sqrt(N) - sqrt(n-1), the tail normalization scale for N x n matrices,
/// computed in the cancellation-free form.
double smin_scale(Index rows, Index cols);

/// Rotates v so its largest-modulus coordinate is real and nonnegative.
void canonical_phase(Vector& v);

}  // namespace nogaps::linalg
