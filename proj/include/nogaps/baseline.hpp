#pragma once

#include <cstdint>
#include <vector>

#include "nogaps/common.hpp"

namespace nogaps::baseline {

// Quantile machinery for the squared modulus of a unit-variance complex
// Gaussian coordinate: F(x) = 1 - e^{-x} (the law of Z^2/2 + Z'^2/2 for
// standard normals Z, Z'), G(x) = F(x^2) is the modulus law, Q inverts F, and
// H(s) = -Q(1-s) = log(s) is the integrand of the subset-mass limits.

double F_cdf(double x);  // x >= 0
double G_cdf(double x);  // x >= 0

/// Chi-square CDF; closed form for dof 1 (error function) and even dof
/// (Poisson partial sums), recurrence otherwise.
double chi_squared_cdf(double x, int dof);

double Q_quantile(double s);  // s in [0, 1); Q(0) = 0
double H_func(double s);      // s in (0, 1)

enum class MassExtreme { Min, Max };

/// Limiting subset mass squared at fraction delta, via the antiderivative:
///   min -> delta + (1 - delta) log(1 - delta)
///   max -> delta (1 - log delta)
/// delta = 1 is allowed as a limit and returns 1.
double limit_mass(double delta, MassExtreme which);

/// Dyadic band counts eta_1..eta_L: eta_k counts coordinates with |v_i|^2 in
/// [base 2^{k-1}, base 2^k), where base = delta/n for the complex field and
/// delta^2/n^2 for the real field. Half-open bands keep the counts disjoint.
std::vector<Index> dyadic_band_counts(const Vector& v, double delta, int bands, Field field);

struct BandParams {
  double delta = 0.0;
  int bands = 0;
};

/// Default band-analysis parameters for the complex field:
/// delta = 1/log n and L = floor(log2(m / (2 delta))).
BandParams default_band_params(Index n, Index m);

struct SphereMassSummary {
  Index n = 0;
  Index m = 0;
  Field field = Field::Complex;
  std::int64_t trials = 0;
  double mean_min_mass = 0.0;
  double mean_min_mass_sq = 0.0;
  double mean_max_mass_sq = 0.0;
  double q05 = 0.0, q50 = 0.0, q95 = 0.0;  // quantiles of the min subset mass
  double linf_max = 0.0;                   // largest l-infinity norm seen
};

/// Samples uniform sphere vectors with deterministic per-trial streams and
/// summarizes min/max subset mass at size m and the l-infinity norm.
SphereMassSummary sphere_subset_mass_simulation(Index n, Index m, Field field,
                                                std::int64_t trials, std::uint64_t master_seed);

}  // namespace nogaps::baseline
