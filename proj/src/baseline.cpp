#include "nogaps/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nogaps/deloc.hpp"
#include "nogaps/randgen.hpp"

namespace nogaps::baseline {

namespace {

void check_nonnegative(double x, const char* who) {
  if (x < 0.0) throw std::invalid_argument(std::string(who) + ": argument must be nonnegative");
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1) + 0.5);
  return sorted[std::min(idx, sorted.size() - 1)];
}

}  // namespace

double F_cdf(double x) {
  check_nonnegative(x, "F_cdf");
  return -std::expm1(-x);
}

double G_cdf(double x) {
  check_nonnegative(x, "G_cdf");
  return -std::expm1(-x * x);
}

double chi_squared_cdf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_squared_cdf: dof must be >= 1");
  check_nonnegative(x, "chi_squared_cdf");
  if (x == 0.0) return 0.0;
  const double h = 0.5 * x;
  if (dof % 2 == 0) {
    // 1 - e^{-h} sum_{j < dof/2} h^j / j!
    double term = std::exp(-h);
    double sum = term;
    for (int j = 1; j < dof / 2; ++j) {
      term *= h / j;
      sum += term;
    }
    return std::max(0.0, 1.0 - sum);
  }
  // F_1 = erf(sqrt(h)); F_{k+2} = F_k - e^{-h} h^{k/2} / Gamma(k/2 + 1)
  double f = std::erf(std::sqrt(h));
  double term = std::exp(-h) * std::sqrt(h) * 2.0 / std::sqrt(M_PI);  // k = 1
  for (int k = 1; k <= dof - 2; k += 2) {
    f -= term;
    term *= h / (0.5 * (k + 2));
  }
  return std::clamp(f, 0.0, 1.0);
}

double Q_quantile(double s) {
  if (!(s >= 0.0 && s < 1.0)) throw std::invalid_argument("Q_quantile: s must be in [0, 1)");
  return -std::log1p(-s);
}

double H_func(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("H_func: s must be in (0, 1)");
  return std::log(s);
}

double limit_mass(double delta, MassExtreme which) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("limit_mass: delta must be in (0, 1]");
  if (delta == 1.0) return 1.0;
  if (which == MassExtreme::Min) return delta + (1.0 - delta) * std::log1p(-delta);
  return delta * (1.0 - std::log(delta));
}

std::vector<Index> dyadic_band_counts(const Vector& v, double delta, int bands, Field field) {
  if (!(delta > 0.0)) throw std::invalid_argument("dyadic_band_counts: delta must be positive");
  if (bands < 1) throw std::invalid_argument("dyadic_band_counts: need at least one band");
  const double n = static_cast<double>(v.size());
  const double base = field == Field::Complex ? delta / n : delta * delta / (n * n);
  std::vector<Index> counts(static_cast<std::size_t>(bands), 0);
  for (Index i = 0; i < v.size(); ++i) {
    const double sq = std::norm(v(i));
    double lower = base;
    for (int k = 1; k <= bands; ++k, lower *= 2.0) {
      if (sq >= lower && sq < 2.0 * lower) {
        ++counts[static_cast<std::size_t>(k - 1)];
        break;
      }
    }
  }
  return counts;
}

BandParams default_band_params(Index n, Index m) {
  if (n < 3 || m < 1) throw std::invalid_argument("default_band_params: need n >= 3, m >= 1");
  const double delta = 1.0 / std::log(static_cast<double>(n));
  const int bands = static_cast<int>(
      std::floor(std::log2(static_cast<double>(m) / (2.0 * delta))));
  return {delta, std::max(1, bands)};
}

SphereMassSummary sphere_subset_mass_simulation(Index n, Index m, Field field,
                                                std::int64_t trials, std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("sphere_subset_mass_simulation: trials must be >= 1");
  if (m < 1 || m > n)
    throw std::invalid_argument("sphere_subset_mass_simulation: need 1 <= m <= n");
  SphereMassSummary s;
  s.n = n;
  s.m = m;
  s.field = field;
  s.trials = trials;

  std::vector<double> min_masses(static_cast<std::size_t>(trials));
  double sum_min = 0.0, sum_min_sq = 0.0, sum_max_sq = 0.0, linf_max = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    auto stream = randgen::derive_stream(master_seed, static_cast<std::uint64_t>(t));
    const Vector v = randgen::sample_unit_sphere(n, field, stream);
    const deloc::DelocProfile p = deloc::profile(v);
    const double mn = deloc::min_subset_mass(p, m);
    const double mx = deloc::max_subset_mass(p, m);
    min_masses[static_cast<std::size_t>(t)] = mn;
    sum_min += mn;
    sum_min_sq += mn * mn;
    sum_max_sq += mx * mx;
    linf_max = std::max(linf_max, p.linf);
  }
  std::sort(min_masses.begin(), min_masses.end());
  const double count = static_cast<double>(trials);
  s.mean_min_mass = sum_min / count;
  s.mean_min_mass_sq = sum_min_sq / count;
  s.mean_max_mass_sq = sum_max_sq / count;
  s.q05 = sorted_quantile(min_masses, 0.05);
  s.q50 = sorted_quantile(min_masses, 0.50);
  s.q95 = sorted_quantile(min_masses, 0.95);
  s.linf_max = linf_max;
  return s;
}

}  // namespace nogaps::baseline
