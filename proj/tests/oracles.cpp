#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracles {

RealVector jacobi_hermitian_eigenvalues(Matrix h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("jacobi: matrix must be square");
  const Index n = h.rows();
  const double scale = std::max(h.norm(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (off <= 1e-30 * scale * scale) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex apq = h(p, q);
        const double b = std::abs(apq);
        if (b < 1e-300) continue;
        const Complex phase = apq / b;
        const double tau = (h(q, q).real() - h(p, p).real()) / (2.0 * b);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // plane rotation Q = diag(1, conj(phase)) * [[c, s], [-s, c]] on the
        // (p, q) plane; diag(1, conj(phase)) makes the off-diagonal real
        for (Index i = 0; i < n; ++i) {
          const Complex up = h(i, p), uq = h(i, q);
          h(i, p) = c * up - s * std::conj(phase) * uq;
          h(i, q) = s * up + c * std::conj(phase) * uq;
        }
        for (Index j = 0; j < n; ++j) {
          const Complex rp = h(p, j), rq = h(q, j);
          h(p, j) = c * rp - s * phase * rq;
          h(q, j) = s * rp + c * phase * rq;
        }
      }
    }
  }
  RealVector eigs = h.diagonal().real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

double gram_smin(const Matrix& a) {
  const RealVector eigs = jacobi_hermitian_eigenvalues(a.adjoint() * a);
  return std::sqrt(std::max(0.0, eigs(0)));
}

double gram_smax(const Matrix& a) {
  const RealVector eigs = jacobi_hermitian_eigenvalues(a.adjoint() * a);
  return std::sqrt(std::max(0.0, eigs(eigs.size() - 1)));
}

namespace {

void enumerate_subsets(Index n, Index m, const std::function<void(const std::vector<Index>&)>& visit) {
  std::vector<Index> subset(static_cast<std::size_t>(m));
  std::function<void(Index, Index)> rec = [&](Index start, Index depth) {
    if (depth == m) {
      visit(subset);
      return;
    }
    for (Index i = start; i <= n - (m - depth); ++i) {
      subset[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

double exhaustive_min_subset_mass(const Vector& v, Index m) {
  const Vector u = v / v.norm();
  double best = std::numeric_limits<double>::infinity();
  enumerate_subsets(u.size(), m, [&](const std::vector<Index>& subset) {
    double mass = 0.0;
    for (Index i : subset) mass += std::norm(u(i));
    best = std::min(best, mass);
  });
  return std::sqrt(best);
}

double exhaustive_max_subset_mass(const Vector& v, Index m) {
  const Vector u = v / v.norm();
  double best = 0.0;
  enumerate_subsets(u.size(), m, [&](const std::vector<Index>& subset) {
    double mass = 0.0;
    for (Index i : subset) mass += std::norm(u(i));
    best = std::max(best, mass);
  });
  return std::sqrt(best);
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double split = left + right;
  if (depth <= 0 || std::abs(split - whole) <= 15.0 * tol) {
    return split + (split - whole) / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double quad_limit_mass_min(double delta) {
  // -int_{1-delta}^{1} log(u) du; smooth on the interval for delta < 1
  return adaptive_simpson([](double u) { return -std::log(u); }, 1.0 - delta, 1.0, 1e-12);
}

double quad_limit_mass_max(double delta) {
  // -int_0^delta log(u) du with u = t^6, which removes the endpoint
  // singularity: integrand -36 t^5 log(t) has bounded derivatives at 0
  const double upper = std::pow(delta, 1.0 / 6.0);
  return adaptive_simpson(
      [](double t) { return t == 0.0 ? 0.0 : -36.0 * std::pow(t, 5.0) * std::log(t); }, 0.0,
      upper, 1e-12);
}

double brute_lcd_complex(const Vector& a, double alpha, double gamma, double r_max, double step) {
  const double norm_a = a.norm();
  const auto radii = static_cast<long long>(std::floor(r_max / step));
  for (long long j = 1; j <= radii; ++j) {
    const double r = static_cast<double>(j) * step;
    const auto arcs = std::max<long long>(
        4, static_cast<long long>(std::ceil(2.0 * std::numbers::pi * r / step)));
    for (long long i = 0; i < arcs; ++i) {
      const double phi =
          2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(arcs);
      const Complex theta = r * Complex(std::cos(phi), std::sin(phi));
      const double threshold = std::min(gamma * r * norm_a, alpha);
      double d2 = 0.0;
      for (Index k = 0; k < a.size(); ++k) {
        const Complex w = theta * a(k);
        const double dr = w.real() - std::nearbyint(w.real());
        const double di = w.imag() - std::nearbyint(w.imag());
        d2 += dr * dr + di * di;
        if (d2 >= threshold * threshold) break;
      }
      if (d2 < threshold * threshold) return r;
    }
  }
  return r_max;
}

double normal_equations_distance(const Vector& x, const std::vector<Vector>& basis,
                                 const Vector& v) {
  const Vector rhs = x - v;
  if (basis.empty()) return rhs.norm();
  Matrix b(x.size(), static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) b.col(static_cast<Index>(k)) = basis[k];
  const Matrix gram = b.adjoint() * b;
  const Vector y = gram.ldlt().solve(b.adjoint() * rhs);
  return (rhs - b * y).norm();
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double c = cdf(sample[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
    d = std::max(d, std::abs(static_cast<double>(i) / n - c));
  }
  return d;
}

}  // namespace oracles
