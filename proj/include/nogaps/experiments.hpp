#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nogaps/common.hpp"
#include "nogaps/randgen.hpp"

namespace nogaps::experiments {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// 95% Wilson score interval for hits successes out of trials.
WilsonInterval wilson95(std::int64_t hits, std::int64_t trials);

/// Shared-sample tail curve: one statistic per trial, thresholded against
/// every eps afterwards, so phat is nondecreasing in eps by construction.
struct TailCurve {
  std::vector<double> eps;
  std::vector<std::int64_t> hits;
  std::int64_t trials = 0;
  std::vector<double> phat;
  std::vector<double> wilson_lo;
  std::vector<double> wilson_hi;
};

struct SlopeFit {
  double slope = 0.0;
  double stderr_value = 0.0;
  int points_used = 0;
};

/// OLS of log(phat) on log(eps) over the grid points with at least min_hits
/// successes. Throws when fewer than two usable points remain.
SlopeFit slope_estimate(const TailCurve& curve, std::int64_t min_hits = 20);

/// Per-experiment report. Everything needed to reconstruct the run (given the
/// code version) is in config/master_seed; runtime_seconds is informational
/// and never serialized, so reports are byte-stable across reruns and worker
/// counts.
struct RunReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t master_seed = 0;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::optional<SlopeFit> slope;
  double runtime_seconds = 0.0;
};

/// Thrown for non-recoverable per-trial numerical failures; carries the trial
/// index and its derived seed so the run can be replayed.
struct TrialError : std::runtime_error {
  TrialError(const std::string& what, std::int64_t trial, std::uint64_t master_seed)
      : std::runtime_error(what), trial_index(trial), master_seed(master_seed) {}
  std::int64_t trial_index;
  std::uint64_t master_seed;
};

/// P(s_n(A - lambda) <= eps (sqrt(N) - sqrt(n-1))) over a shared-sample grid.
/// Trial t draws its matrix from derive_stream(master_seed, t).
TailCurve smin_tail(const randgen::MatrixEnsemble& ensemble, Complex lambda,
                    const std::vector<double>& eps_grid, std::int64_t trials,
                    std::uint64_t master_seed, int threads = 1, double norm_constant = 4.0);

struct DelocExperimentResult {
  Index n = 0;
  std::vector<Index> m_list;
  std::int64_t trials_completed = 0;
  std::int64_t failures = 0;
  bool real_ensemble = false;
  double min_coord_modulus = 0.0;   // over all eigenvectors of all trials
  std::vector<double> worst_mass;   // per m: min over trials and eigenvectors
  std::vector<double> q05, q50, q95;  // per m: quantiles of the per-trial worst mass
  std::vector<double> c_hat;        // per m: worst_mass / (m/n)^{3/2}
  std::vector<double> c_hat_real;   // per m, real eigenpairs only: worst / (m/n)^2
  std::int64_t real_eigenpairs = 0;
  RunReport report;
};

/// Full-spectrum delocalization sweep (worst subset mass per m, fitted
/// constants). Eigensolver failures are counted and the trial discarded.
DelocExperimentResult deloc_experiment(Index n, const randgen::MatrixEnsemble& ensemble,
                                       const std::vector<Index>& m_list, std::int64_t trials,
                                       std::uint64_t master_seed, int threads = 1);

struct NormalVectorResult {
  Index n = 0;
  std::vector<double> delta_list;
  std::int64_t trials_completed = 0;
  std::int64_t discarded = 0;  // rank-deficient draws
  std::vector<double> mean_min_mass_sq;  // per delta
  std::vector<double> mean_max_mass_sq;
  std::vector<double> limit_min;  // closed-form targets
  std::vector<double> limit_max;
  double ks_distance = 0.0;  // pooled sqrt(n)|x_i| vs the complex Gaussian modulus law
  RunReport report;
};

/// Kernel vectors of (n-1) x n draws: subset-mass means vs the closed-form
/// limits, plus a KS distance for the coordinate modulus law.
NormalVectorResult normal_vector_experiment(Index n, const randgen::MatrixEnsemble& ensemble,
                                            const std::vector<double>& delta_list,
                                            std::int64_t trials, std::uint64_t master_seed,
                                            int threads = 1);

struct DistTailResult {
  TailCurve curve;
  std::vector<double> oracle;  // P(chi^2_{2m} <= m eps^2) per grid point
  RunReport report;
};

/// dist(X, H) <= eps sqrt(m) tail for X and H spanned by N-m independent
/// genuinely complex Gaussian vectors. Per trial, X is drawn first, then the
/// spanning vectors.
DistTailResult dist_tail(Index dim, Index m, std::int64_t trials,
                         const std::vector<double>& eps_grid, std::uint64_t master_seed,
                         int threads = 1);

struct OpNormResult {
  Index n = 0;
  std::int64_t trials = 0;
  double mean_ratio = 0.0;    // mean of ||A||/sqrt(n)
  double fitted_m = 0.0;      // 99.9% quantile of the ratio
  double max_ratio = 0.0;
  double q50 = 0.0;
  RunReport report;
};

OpNormResult opnorm_experiment(Index n, const randgen::MatrixEnsemble& ensemble,
                               std::int64_t trials, std::uint64_t master_seed, int threads = 1);

struct IncompressibleImageResult {
  std::int64_t trials = 0;
  double p01 = 0.0, p05 = 0.0, p50 = 0.0;  // quantiles of ||(A - lambda)x|| / sqrt(N)
  double min_ratio = 0.0;
  RunReport report;
};

/// Images of sampled compressible unit vectors (sparse support plus a
/// rho-scaled perturbation) under (A - lambda), normalized by sqrt(N).
IncompressibleImageResult incompressible_image_experiment(Index rows, Index cols, Complex lambda,
                                                          double delta, double rho,
                                                          std::int64_t trials,
                                                          std::uint64_t master_seed,
                                                          int threads = 1);

}  // namespace nogaps::experiments
