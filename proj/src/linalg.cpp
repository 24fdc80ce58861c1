#include "nogaps/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nogaps/randgen.hpp"

namespace nogaps::linalg {

namespace {

// Seed for the deterministic start vector in operator_norm; fixed so the
// whole module stays a pure function of its inputs.
constexpr std::uint64_t kPowerIterationSeed = 0x6f706e6f726dULL;

void check_finite(const Matrix& a, const char* who) {
  if (!a.allFinite()) throw std::invalid_argument(std::string(who) + ": entries must be finite");
}

}  // namespace

Matrix shift(const Matrix& a, Complex lambda) {
  Matrix b = a;
  const Index d = std::min(b.rows(), b.cols());
  for (Index i = 0; i < d; ++i) b(i, i) -= lambda;
  return b;
}

Matrix column_submatrix(const Matrix& a, std::vector<Index> cols) {
  if (cols.empty()) throw std::invalid_argument("column_submatrix: empty index set");
  std::sort(cols.begin(), cols.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] < 0 || cols[k] >= a.cols())
      throw std::invalid_argument("column_submatrix: index out of range");
    if (k > 0 && cols[k] == cols[k - 1])
      throw std::invalid_argument("column_submatrix: duplicate index");
  }
  Matrix b(a.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) b.col(static_cast<Index>(k)) = a.col(cols[k]);
  return b;
}

void canonical_phase(Vector& v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex pivot = v(imax);
  const double mag = std::abs(pivot);
  if (mag > 0.0) v *= std::conj(pivot) / mag;
  v(imax) = Complex(std::abs(v(imax)), 0.0);
}

Spectrum eigen_decompose(const Matrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw std::invalid_argument("eigen_decompose: matrix must be square and nonempty");
  check_finite(a, "eigen_decompose");
  const Index n = a.rows();

  Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw EigenDecompositionError("eigen_decompose: Schur iteration did not converge",
                                  schur.matrixT(), schur.matrixU());
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();

  const double tmax = t.cwiseAbs().maxCoeff();
  const double smallnum = std::numeric_limits<double>::epsilon() * std::max(tmax, 1e-300);

  Spectrum result;
  result.tol = tol;
  result.norm_estimate = operator_norm(a, 1e-9);
  result.pairs.resize(static_cast<std::size_t>(n));

  // Back-substitution on the triangular factor, one eigenvector per diagonal
  // entry. Tiny denominators are perturbed to smallnum; the residual records
  // whatever accuracy that yields.
  Vector y(n);
  for (Index k = 0; k < n; ++k) {
    y.setZero();
    y(k) = Complex(1.0, 0.0);
    for (Index i = k - 1; i >= 0; --i) {
      const Complex s = (t.row(i).segment(i + 1, k - i) * y.segment(i + 1, k - i)).value();
      Complex d = t(i, i) - t(k, k);
      if (std::abs(d) < smallnum) d = Complex(smallnum, 0.0);
      y(i) = -s / d;
      const double yi = std::abs(y(i));
      if (yi > 1e140) y.segment(i, k - i + 1) /= yi;  // overflow guard
    }
    Vector v = u.leftCols(k + 1) * y.head(k + 1);
    v.normalize();
    canonical_phase(v);
    auto& pair = result.pairs[static_cast<std::size_t>(k)];
    pair.value = t(k, k);
    pair.vector = std::move(v);
    pair.residual = (a * pair.vector - pair.value * pair.vector).norm();
  }

  std::stable_sort(result.pairs.begin(), result.pairs.end(), [](const Eigenpair& l, const Eigenpair& r) {
    if (l.value.real() != r.value.real()) return l.value.real() < r.value.real();
    return l.value.imag() < r.value.imag();
  });

  if (result.norm_estimate > 0.0) {
    for (const auto& pair : result.pairs) {
      if (pair.residual > tol * result.norm_estimate)
        throw EigenDecompositionError("eigen_decompose: residual exceeds tolerance",
                                      schur.matrixT(), schur.matrixU());
    }
  }
  return result;
}

double smallest_singular_value(const Matrix& a) {
  if (a.cols() < 1) throw std::invalid_argument("smallest_singular_value: empty matrix");
  if (a.rows() < a.cols())
    throw std::invalid_argument("smallest_singular_value: rows < cols; transpose the input");
  check_finite(a, "smallest_singular_value");
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(a.cols() - 1);
}

double operator_norm(const Matrix& a, double tol) {
  check_finite(a, "operator_norm");
  if (a.size() == 0) return 0.0;
  const double fro = a.norm();
  if (fro == 0.0) return 0.0;

  randgen::SeedStream stream(kPowerIterationSeed, static_cast<std::uint64_t>(a.rows()));
  Vector x(a.cols());
  for (Index i = 0; i < a.cols(); ++i) x(i) = Complex(stream.next_normal(), stream.next_normal());
  x.normalize();

  double sigma = 0.0;
  int settled = 0;
  const int max_iters = 100000;
  for (int iter = 0; iter < max_iters; ++iter) {
    Vector w = a * x;
    const double estimate = w.norm();
    if (estimate == 0.0) {
      // start vector hit the kernel; redraw
      for (Index i = 0; i < a.cols(); ++i) x(i) = Complex(stream.next_normal(), stream.next_normal());
      x.normalize();
      continue;
    }
    Vector z = a.adjoint() * w;
    x = z / z.norm();
    if (std::abs(estimate - sigma) <= 0.125 * tol * estimate) {
      if (++settled >= 3) return estimate;
    } else {
      settled = 0;
    }
    sigma = estimate;
  }
  return sigma;
}

Vector kernel_vector(const Matrix& a) {
  if (a.rows() != a.cols() - 1)
    throw std::invalid_argument("kernel_vector: matrix must be (n-1) x n");
  check_finite(a, "kernel_vector");
  const Index n = a.cols();
  // The last column of Q from A^* = QR spans the orthogonal complement of the
  // row space; applying the Householder sequence to a unit vector avoids
  // forming Q.
  Eigen::HouseholderQR<Matrix> qr(a.adjoint());
  Vector v = qr.householderQ() * Vector::Unit(n, n - 1);
  v.normalize();
  canonical_phase(v);
  return v;
}

double dist_to_subspace(const Vector& x, const std::vector<Vector>& basis, const Vector& v) {
  if (x.size() != v.size()) throw std::invalid_argument("dist_to_subspace: dimension mismatch");
  double max_norm = 0.0;
  for (const auto& b : basis) {
    if (b.size() != x.size()) throw std::invalid_argument("dist_to_subspace: dimension mismatch");
    max_norm = std::max(max_norm, b.norm());
  }
  const double rank_threshold = 1e-12 * max_norm;

  std::vector<Vector> q;
  q.reserve(basis.size());
  Vector w;
  for (const auto& b : basis) {
    w = b;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : q) w -= qi.dot(w) * qi;
    const double norm = w.norm();
    if (norm > rank_threshold) q.push_back(w / norm);
  }

  Vector r = x - v;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& qi : q) r -= qi.dot(r) * qi;
  return r.norm();
}

RealVector realify_vector(const Vector& v) {
  RealVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

RealMatrix realify_matrix(const Matrix& m) {
  RealMatrix out(2 * m.rows(), 2 * m.cols());
  out.topLeftCorner(m.rows(), m.cols()) = m.real();
  out.topRightCorner(m.rows(), m.cols()) = -m.imag();
  out.bottomLeftCorner(m.rows(), m.cols()) = m.imag();
  out.bottomRightCorner(m.rows(), m.cols()) = m.real();
  return out;
}

double smin_scale(Index rows, Index cols) {
  const double n = static_cast<double>(rows);
  const double k = static_cast<double>(cols - 1);
  return (n - k) / (std::sqrt(n) + std::sqrt(k));
}

}  // namespace nogaps::linalg
