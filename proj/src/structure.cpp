#include "nogaps/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nogaps/experiments.hpp"
#include "nogaps/linalg.hpp"

namespace nogaps::structure {

namespace {

bool feasible(const Vector& a, Complex theta, double alpha, double gamma, double a_norm,
              double* dist_out = nullptr) {
  const double product_norm = std::abs(theta) * a_norm;
  const double threshold = std::min(gamma * product_norm, alpha);
  if (threshold <= 0.0) return false;
  const double thr_sq = threshold * threshold;
  double d2 = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const Complex w = theta * a(i);
    const double dr = w.real() - std::nearbyint(w.real());
    const double di = w.imag() - std::nearbyint(w.imag());
    d2 += dr * dr + di * di;
    if (d2 >= thr_sq) return false;
  }
  if (dist_out) *dist_out = std::sqrt(d2);
  return true;
}

// Bisect the feasibility boundary inside (lo, hi], where hi is feasible.
Complex refine_radially(const Vector& a, const LcdParams& p, double a_norm, double lo, double hi,
                        Complex direction) {
  for (int it = 0; it < p.refine_iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 0.0 && feasible(a, mid * direction, p.alpha, p.gamma, a_norm)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi * direction;
}

}  // namespace

void LcdParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("lcd: alpha must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("lcd: gamma must be in (0, 1)");
  if (!(r_max > 0.0)) throw std::invalid_argument("lcd: r_max must be positive");
  if (!(grid_step > 0.0)) throw std::invalid_argument("lcd: grid_step must be positive");
  if (refine_iters < 0) throw std::invalid_argument("lcd: refine_iters must be nonnegative");
}

double lattice_dist(const Vector& a, Complex theta) {
  double d2 = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const Complex w = theta * a(i);
    const double dr = w.real() - std::nearbyint(w.real());
    const double di = w.imag() - std::nearbyint(w.imag());
    d2 += dr * dr + di * di;
  }
  return std::sqrt(d2);
}

LcdResult lcd(const LcdQuery& query) {
  query.params.validate();
  const double a_norm = query.a.norm();
  if (!(a_norm > 0.0)) throw std::invalid_argument("lcd: zero coefficient vector");
  const LcdParams& p = query.params;

  LcdResult result;
  result.status = LcdStatus::ExceedsCap;
  result.value = p.r_max;
  result.resolution = p.grid_step;

  if (query.field == ThetaField::Real) {
    const auto steps = static_cast<long long>(std::floor(p.r_max / p.grid_step));
    for (long long k = 1; k <= steps; ++k) {
      const double theta = static_cast<double>(k) * p.grid_step;
      if (feasible(query.a, Complex(theta, 0.0), p.alpha, p.gamma, a_norm)) {
        const Complex witness = refine_radially(query.a, p, a_norm,
                                                theta - p.grid_step, theta, Complex(1.0, 0.0));
        result.status = LcdStatus::Found;
        result.witness_theta = witness;
        result.value = std::abs(witness);
        result.achieved_dist = lattice_dist(query.a, witness);
        return result;
      }
    }
    return result;
  }

  // Polar grid over the disc: radius step = grid_step, angle step chosen so
  // the arc length does not exceed grid_step.
  const auto radii = static_cast<long long>(std::floor(p.r_max / p.grid_step));
  for (long long j = 1; j <= radii; ++j) {
    const double r = static_cast<double>(j) * p.grid_step;
    const auto arcs = std::max<long long>(
        4, static_cast<long long>(std::ceil(2.0 * std::numbers::pi * r / p.grid_step)));
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(arcs);
    const double cd = std::cos(dphi), sd = std::sin(dphi);
    double c = 1.0, s = 0.0;
    for (long long i = 0; i < arcs; ++i) {
      if (feasible(query.a, Complex(r * c, r * s), p.alpha, p.gamma, a_norm)) {
        const Complex direction(c, s);
        const Complex witness =
            refine_radially(query.a, p, a_norm, r - p.grid_step, r, direction);
        result.status = LcdStatus::Found;
        result.witness_theta = witness;
        result.value = std::abs(witness);
        result.achieved_dist = lattice_dist(query.a, witness);
        return result;
      }
      const double c_next = c * cd - s * sd;
      s = c * sd + s * cd;
      c = c_next;
    }
  }
  return result;
}

LcdResult lcd_subspace_estimate(const std::vector<Vector>& basis, const LcdParams& params,
                                int samples, randgen::SeedStream& stream) {
  params.validate();
  if (basis.empty()) throw std::invalid_argument("lcd_subspace_estimate: empty basis");
  if (samples < 1) throw std::invalid_argument("lcd_subspace_estimate: samples must be >= 1");

  // Orthonormalize so unit coefficient vectors give unit vectors of E.
  double max_norm = 0.0;
  for (const auto& b : basis) max_norm = std::max(max_norm, b.norm());
  std::vector<Vector> q;
  for (const auto& b : basis) {
    Vector w = b;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : q) w -= qi.dot(w) * qi;
    if (w.norm() > 1e-12 * max_norm) q.push_back(w.normalized());
  }
  if (q.empty()) throw std::invalid_argument("lcd_subspace_estimate: basis spans nothing");

  LcdResult best;
  best.status = LcdStatus::ExceedsCap;
  best.value = params.r_max;
  best.resolution = params.grid_step;
  for (int sample = 0; sample < samples; ++sample) {
    Vector x = Vector::Zero(basis.front().size());
    for (const auto& qi : q) {
      const Complex coeff(stream.next_normal(), stream.next_normal());
      x += coeff * qi;
    }
    x.normalize();
    const LcdResult r = lcd({x, ThetaField::Complex, params});
    if (r.status == LcdStatus::Found &&
        (best.status == LcdStatus::ExceedsCap || r.value < best.value)) {
      best = r;
    }
  }
  return best;
}

void CompressParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("compress: delta must be in (0, 1)");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("compress: rho must be in (0, 1)");
}

double compress_distance(const Vector& x, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("compress_distance: delta must be in [0, 1]");
  const double norm = x.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("compress_distance: zero vector");
  const Index n = x.size();
  const auto sparse = static_cast<Index>(std::floor(delta * static_cast<double>(n) + 1e-9));
  if (sparse >= n) return 0.0;
  RealVector sq = (x.cwiseAbs2() / (norm * norm)).real();
  std::sort(sq.begin(), sq.end());
  return std::sqrt(std::max(0.0, sq.head(n - sparse).sum()));
}

Compressibility classify(const Vector& x, const CompressParams& params) {
  params.validate();
  return compress_distance(x, params.delta) <= params.rho ? Compressibility::Compressible
                                                          : Compressibility::Incompressible;
}

SpreadSet spread_set(const Vector& x, double nu2, double nu3) {
  if (!(nu2 > 0.0 && nu2 < nu3)) throw std::invalid_argument("spread_set: need 0 < nu2 < nu3");
  const double root_n = std::sqrt(static_cast<double>(x.size()));
  SpreadSet s;
  for (Index k = 0; k < x.size(); ++k) {
    const double mag = std::abs(x(k));
    if (mag >= nu2 / root_n && mag <= nu3 / root_n) s.indices.push_back(k);
  }
  s.fraction = static_cast<double>(s.indices.size()) / static_cast<double>(x.size());
  return s;
}

bool totally_spread_check(const Vector& y, double k1, double k2) {
  if (y.size() < 1) throw std::invalid_argument("totally_spread_check: empty vector");
  const double root_d = std::sqrt(static_cast<double>(y.size()));
  for (Index k = 0; k < y.size(); ++k) {
    const double mag = std::abs(y(k));
    if (mag < k1 / root_d || mag > k2 / root_d) return false;
  }
  return true;
}

LevelSetMembership level_set_membership(const Vector& x, double d_level, const LcdParams& params,
                                        ThetaField field) {
  if (!(d_level > 0.0)) throw std::invalid_argument("level_set_membership: D must be positive");
  const LcdResult r = lcd({x, field, params});
  if (r.status == LcdStatus::ExceedsCap) {
    // LCD exceeds r_max; that excludes [D, 2D) only if the whole window is below the cap.
    return params.r_max >= 2.0 * d_level ? LevelSetMembership::Outside
                                         : LevelSetMembership::Indeterminate;
  }
  const double tol = std::max(r.resolution, params.grid_step);
  if (r.value >= d_level + tol && r.value < 2.0 * d_level - tol) return LevelSetMembership::Inside;
  if (r.value < d_level - tol || r.value >= 2.0 * d_level + tol) return LevelSetMembership::Outside;
  return LevelSetMembership::Indeterminate;
}

LevyEstimate levy_concentration(const std::function<RealVector(randgen::SeedStream&)>& sampler,
                                double eps, std::int64_t trials, randgen::SeedStream& stream) {
  if (trials < 1000) throw std::invalid_argument("levy_concentration: trials must be >= 1000");
  if (!(eps > 0.0)) throw std::invalid_argument("levy_concentration: eps must be positive");

  std::vector<RealVector> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) samples.push_back(sampler(stream));
  const Index dim = samples.front().size();
  for (const auto& s : samples)
    if (s.size() != dim) throw std::invalid_argument("levy_concentration: inconsistent sample dims");

  std::int64_t best = 0;
  if (dim == 1) {
    std::vector<double> vals(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) vals[i] = samples[i](0);
    std::sort(vals.begin(), vals.end());
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      while (vals[i] - vals[lo] > eps) ++lo;
      while (hi < vals.size() && vals[hi] - vals[i] <= eps) ++hi;
      best = std::max<std::int64_t>(best, static_cast<std::int64_t>(hi - lo));
    }
  } else {
    const double eps_sq = eps * eps;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::int64_t count = 0;
      for (std::size_t j = 0; j < samples.size(); ++j)
        if ((samples[i] - samples[j]).squaredNorm() <= eps_sq) ++count;
      best = std::max(best, count);
    }
  }

  LevyEstimate est;
  est.estimate = static_cast<double>(best) / static_cast<double>(trials);
  est.upper_conf = experiments::wilson95(best, trials).hi;
  return est;
}

}  // namespace nogaps::structure
