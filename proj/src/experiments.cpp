#include "nogaps/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "nogaps/baseline.hpp"
#include "nogaps/deloc.hpp"
#include "nogaps/io.hpp"
#include "nogaps/linalg.hpp"
#include "nogaps/structure.hpp"

namespace nogaps::experiments {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Runs body(t) for t in [0, trials) on up to `threads` workers. Each trial
// writes only to its own slot, so results are independent of the worker
// count; any thrown error is rethrown, preferring the lowest trial index.
void run_trials(std::int64_t trials, int threads,
                const std::function<void(std::int64_t)>& body) {
  threads = std::max(1, threads);
  if (threads == 1 || trials < 2) {
    for (std::int64_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::int64_t first_error_trial = -1;
  auto worker = [&] {
    for (;;) {
      const std::int64_t t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error_trial < 0 || t < first_error_trial) {
          first_error_trial = t;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = static_cast<int>(std::min<std::int64_t>(threads, trials));
  pool.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> checked_grid(std::vector<double> eps_grid) {
  if (eps_grid.empty()) throw std::invalid_argument("tail experiment: empty eps grid");
  std::sort(eps_grid.begin(), eps_grid.end());
  if (eps_grid.front() <= 0.0)
    throw std::invalid_argument("tail experiment: eps values must be positive");
  return eps_grid;
}

// Thresholds the shared per-trial statistics against the grid.
TailCurve make_curve(const std::vector<double>& eps_grid, const std::vector<double>& stats,
                     double scale) {
  TailCurve curve;
  curve.eps = eps_grid;
  curve.trials = static_cast<std::int64_t>(stats.size());
  curve.hits.assign(eps_grid.size(), 0);
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    const double threshold = eps_grid[e] * scale;
    std::int64_t hits = 0;
    for (double s : stats)
      if (s <= threshold) ++hits;
    curve.hits[e] = hits;
  }
  curve.phat.resize(eps_grid.size());
  curve.wilson_lo.resize(eps_grid.size());
  curve.wilson_hi.resize(eps_grid.size());
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    curve.phat[e] = static_cast<double>(curve.hits[e]) / static_cast<double>(curve.trials);
    const WilsonInterval w = wilson95(curve.hits[e], curve.trials);
    curve.wilson_lo[e] = w.lo;
    curve.wilson_hi[e] = w.hi;
  }
  return curve;
}

void echo_ensemble(RunReport& report, const randgen::MatrixEnsemble& ensemble) {
  report.config.emplace_back("rows", std::to_string(ensemble.rows));
  report.config.emplace_back("cols", std::to_string(ensemble.cols));
  report.config.emplace_back("field", field_name(ensemble.field));
  report.config.emplace_back("dist", std::string(ensemble.entry_dist.name()));
}

double sorted_quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(q * static_cast<double>(values.size() - 1) + 0.5);
  return values[std::min(idx, values.size() - 1)];
}

}  // namespace

WilsonInterval wilson95(std::int64_t hits, std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("wilson95: trials must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  WilsonInterval w{std::max(0.0, (center - half) / denom), std::min(1.0, (center + half) / denom)};
  if (hits == 0) w.lo = 0.0;
  if (hits == trials) w.hi = 1.0;
  return w;
}

SlopeFit slope_estimate(const TailCurve& curve, std::int64_t min_hits) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.eps.size(); ++i) {
    if (curve.hits[i] >= min_hits && curve.phat[i] > 0.0) {
      xs.push_back(std::log(curve.eps[i]));
      ys.push_back(std::log(curve.phat[i]));
    }
  }
  const auto k = xs.size();
  if (k < 2)
    throw std::invalid_argument("slope_estimate: fewer than two grid points reach min_hits");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope_estimate: degenerate grid");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.points_used = static_cast<int>(k);
  double rss = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ys[i] - my - fit.slope * (xs[i] - mx);
    rss += r * r;
  }
  fit.stderr_value = k > 2 ? std::sqrt(rss / (static_cast<double>(k - 2) * sxx)) : 0.0;
  return fit;
}

TailCurve smin_tail(const randgen::MatrixEnsemble& ensemble, Complex lambda,
                    const std::vector<double>& eps_grid, std::int64_t trials,
                    std::uint64_t master_seed, int threads, double norm_constant) {
  if (trials < 1) throw std::invalid_argument("smin_tail: trials must be positive");
  if (ensemble.rows < ensemble.cols)
    throw std::invalid_argument("smin_tail: need rows >= cols");
  const auto grid = checked_grid(eps_grid);
  const double lambda_cap = norm_constant * std::sqrt(static_cast<double>(ensemble.rows));
  if (std::abs(lambda) > lambda_cap)
    throw std::invalid_argument("smin_tail: |lambda| exceeds M sqrt(N)");

  std::vector<double> stats(static_cast<std::size_t>(trials));
  run_trials(trials, threads, [&](std::int64_t t) {
    auto stream = randgen::derive_stream(master_seed, static_cast<std::uint64_t>(t));
    const Matrix a = randgen::sample_matrix(ensemble, stream);
    stats[static_cast<std::size_t>(t)] =
        linalg::smallest_singular_value(linalg::shift(a, lambda));
  });
  return make_curve(grid, stats, linalg::smin_scale(ensemble.rows, ensemble.cols));
}

DelocExperimentResult deloc_experiment(Index n, const randgen::MatrixEnsemble& ensemble,
                                       const std::vector<Index>& m_list, std::int64_t trials,
                                       std::uint64_t master_seed, int threads) {
  if (n < 2) throw std::invalid_argument("deloc_experiment: n must be >= 2");
  if (trials < 1) throw std::invalid_argument("deloc_experiment: trials must be positive");
  if (m_list.empty()) throw std::invalid_argument("deloc_experiment: empty m list");
  for (Index m : m_list)
    if (m < 1 || m > n) throw std::invalid_argument("deloc_experiment: m out of range");
  const Stopwatch watch;
  randgen::MatrixEnsemble square = ensemble;
  square.rows = square.cols = n;

  const std::size_t mk = m_list.size();
  const auto tn = static_cast<std::size_t>(trials);
  // worst min-subset mass per (trial, m); NaN marks a discarded trial
  std::vector<std::vector<double>> worst(mk, std::vector<double>(tn, 0.0));
  std::vector<std::vector<double>> worst_real(mk,
      std::vector<double>(tn, std::numeric_limits<double>::infinity()));
  std::vector<double> min_coord(tn, std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> real_counts(tn, 0);
  std::vector<char> failed(tn, 0);

  run_trials(trials, threads, [&](std::int64_t t) {
    auto stream = randgen::derive_stream(master_seed, static_cast<std::uint64_t>(t));
    const Matrix a = randgen::sample_matrix(square, stream);
    linalg::Spectrum spectrum;
    try {
      spectrum = linalg::eigen_decompose(a, 1e-8);
    } catch (const linalg::EigenDecompositionError&) {
      failed[static_cast<std::size_t>(t)] = 1;
      return;
    }
    const double real_cut = 1e-8 * spectrum.norm_estimate;
    for (std::size_t im = 0; im < mk; ++im) {
      double w = std::numeric_limits<double>::infinity();
      double wr = std::numeric_limits<double>::infinity();
      for (const auto& pair : spectrum.pairs) {
        const auto p = deloc::profile(pair.vector);
        const double mass = deloc::min_subset_mass(p, m_list[im]);
        w = std::min(w, mass);
        if (std::abs(pair.value.imag()) <= real_cut) wr = std::min(wr, mass);
        if (im == 0) {
          min_coord[static_cast<std::size_t>(t)] =
              std::min(min_coord[static_cast<std::size_t>(t)], std::sqrt(p.sorted_sq(0)));
        }
      }
      worst[im][static_cast<std::size_t>(t)] = w;
      worst_real[im][static_cast<std::size_t>(t)] = wr;
    }
    std::int64_t rc = 0;
    for (const auto& pair : spectrum.pairs)
      if (std::abs(pair.value.imag()) <= real_cut) ++rc;
    real_counts[static_cast<std::size_t>(t)] = rc;
  });

  DelocExperimentResult result;
  result.n = n;
  result.m_list = m_list;
  result.real_ensemble = ensemble.field == Field::Real;
  result.min_coord_modulus = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < tn; ++t) {
    if (failed[t]) {
      ++result.failures;
    } else {
      ++result.trials_completed;
      result.min_coord_modulus = std::min(result.min_coord_modulus, min_coord[t]);
      result.real_eigenpairs += real_counts[t];
    }
  }
  if (result.trials_completed == 0)
    throw TrialError("deloc_experiment: every trial failed", 0, master_seed);

  const double nd = static_cast<double>(n);
  for (std::size_t im = 0; im < mk; ++im) {
    std::vector<double> completed;
    completed.reserve(tn);
    double w = std::numeric_limits<double>::infinity();
    double wr = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < tn; ++t) {
      if (failed[t]) continue;
      completed.push_back(worst[im][t]);
      w = std::min(w, worst[im][t]);
      wr = std::min(wr, worst_real[im][t]);
    }
    const double ratio = static_cast<double>(m_list[im]) / nd;
    result.worst_mass.push_back(w);
    result.q05.push_back(sorted_quantile(completed, 0.05));
    result.q50.push_back(sorted_quantile(completed, 0.50));
    result.q95.push_back(sorted_quantile(completed, 0.95));
    result.c_hat.push_back(w / std::pow(ratio, 1.5));
    result.c_hat_real.push_back(std::isfinite(wr) ? wr / (ratio * ratio)
                                                  : std::numeric_limits<double>::infinity());
  }

  RunReport& report = result.report;
  report.experiment = "deloc";
  report.master_seed = master_seed;
  report.config.emplace_back("n", std::to_string(n));
  echo_ensemble(report, square);
  {
    std::string ms;
    for (Index m : m_list) ms += (ms.empty() ? "" : " ") + std::to_string(m);
    report.config.emplace_back("m_list", ms);
  }
  report.config.emplace_back("trials", std::to_string(trials));
  report.metrics.emplace_back("trials_completed", static_cast<double>(result.trials_completed));
  report.metrics.emplace_back("failures", static_cast<double>(result.failures));
  report.metrics.emplace_back("min_coord_modulus", result.min_coord_modulus);
  report.metrics.emplace_back("real_eigenpairs", static_cast<double>(result.real_eigenpairs));
  report.series.emplace_back("m", std::vector<double>(m_list.begin(), m_list.end()));
  report.series.emplace_back("worst_mass", result.worst_mass);
  report.series.emplace_back("q05", result.q05);
  report.series.emplace_back("q50", result.q50);
  report.series.emplace_back("q95", result.q95);
  report.series.emplace_back("c_hat", result.c_hat);
  if (result.real_ensemble) report.series.emplace_back("c_hat_real", result.c_hat_real);
  report.runtime_seconds = watch.seconds();
  return result;
}

NormalVectorResult normal_vector_experiment(Index n, const randgen::MatrixEnsemble& ensemble,
                                            const std::vector<double>& delta_list,
                                            std::int64_t trials, std::uint64_t master_seed,
                                            int threads) {
  if (n < 3) throw std::invalid_argument("normal_vector_experiment: n must be >= 3");
  if (trials < 1) throw std::invalid_argument("normal_vector_experiment: trials must be positive");
  if (delta_list.empty()) throw std::invalid_argument("normal_vector_experiment: empty delta list");
  std::vector<Index> m_list;
  for (double d : delta_list) {
    if (!(d > 0.0 && d < 1.0))
      throw std::invalid_argument("normal_vector_experiment: delta must be in (0, 1)");
    const auto m = static_cast<Index>(std::floor(d * static_cast<double>(n) + 1e-9));
    if (m < 1) throw std::invalid_argument("normal_vector_experiment: floor(delta n) must be >= 1");
    m_list.push_back(m);
  }
  const Stopwatch watch;
  randgen::MatrixEnsemble rect = ensemble;
  rect.rows = n - 1;
  rect.cols = n;

  const std::size_t dk = delta_list.size();
  const auto tn = static_cast<std::size_t>(trials);
  std::vector<std::vector<double>> min_sq(dk, std::vector<double>(tn, 0.0));
  std::vector<std::vector<double>> max_sq(dk, std::vector<double>(tn, 0.0));
  std::vector<char> discarded(tn, 0);
  std::vector<std::vector<double>> moduli(tn);

  run_trials(trials, threads, [&](std::int64_t t) {
    auto stream = randgen::derive_stream(master_seed, static_cast<std::uint64_t>(t));
    const Matrix a = randgen::sample_matrix(rect, stream);
    // rank screen: smallest singular value of A equals that of the leading
    // triangular factor of the QR of A^*
    Eigen::HouseholderQR<Matrix> qr(a.adjoint());
    const Matrix r1 = qr.matrixQR().topLeftCorner(n - 1, n - 1).triangularView<Eigen::Upper>();
    Vector y = Vector::Ones(n - 1) / std::sqrt(static_cast<double>(n - 1));
    double growth = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      Vector u = r1.adjoint().triangularView<Eigen::Lower>().solve(y);
      Vector w = r1.triangularView<Eigen::Upper>().solve(u);
      growth = w.norm();
      y = w / growth;
    }
    const double smin_est = 1.0 / std::sqrt(growth);
    if (smin_est < 1e-12 * a.norm()) {
      discarded[static_cast<std::size_t>(t)] = 1;
      return;
    }
    const Vector v = linalg::kernel_vector(a);
    const auto p = deloc::profile(v);
    for (std::size_t id = 0; id < dk; ++id) {
      const double mn = deloc::min_subset_mass(p, m_list[id]);
      const double mx = deloc::max_subset_mass(p, m_list[id]);
      min_sq[id][static_cast<std::size_t>(t)] = mn * mn;
      max_sq[id][static_cast<std::size_t>(t)] = mx * mx;
    }
    auto& mods = moduli[static_cast<std::size_t>(t)];
    mods.resize(static_cast<std::size_t>(n));
    const double root_n = std::sqrt(static_cast<double>(n));
    for (Index i = 0; i < n; ++i) mods[static_cast<std::size_t>(i)] = root_n * std::abs(v(i));
  });

  NormalVectorResult result;
  result.n = n;
  result.delta_list = delta_list;
  for (std::size_t t = 0; t < tn; ++t)
    (discarded[t] ? result.discarded : result.trials_completed) += 1;
  if (result.trials_completed == 0)
    throw TrialError("normal_vector_experiment: every draw was rank-deficient", 0, master_seed);

  for (std::size_t id = 0; id < dk; ++id) {
    double sum_min = 0, sum_max = 0;
    for (std::size_t t = 0; t < tn; ++t) {
      if (discarded[t]) continue;
      sum_min += min_sq[id][t];
      sum_max += max_sq[id][t];
    }
    const double count = static_cast<double>(result.trials_completed);
    result.mean_min_mass_sq.push_back(sum_min / count);
    result.mean_max_mass_sq.push_back(sum_max / count);
    result.limit_min.push_back(baseline::limit_mass(delta_list[id], baseline::MassExtreme::Min));
    result.limit_max.push_back(baseline::limit_mass(delta_list[id], baseline::MassExtreme::Max));
  }

  // KS distance of the pooled rescaled moduli against G(x) = 1 - e^{-x^2}
  std::vector<double> pooled;
  pooled.reserve(tn * static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < tn; ++t)
    if (!discarded[t]) pooled.insert(pooled.end(), moduli[t].begin(), moduli[t].end());
  std::sort(pooled.begin(), pooled.end());
  double ks = 0.0;
  const double total = static_cast<double>(pooled.size());
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    const double cdf = baseline::G_cdf(pooled[i]);
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / total - cdf));
    ks = std::max(ks, std::abs(static_cast<double>(i) / total - cdf));
  }
  result.ks_distance = ks;

  RunReport& report = result.report;
  report.experiment = "normal-vector";
  report.master_seed = master_seed;
  report.config.emplace_back("n", std::to_string(n));
  echo_ensemble(report, rect);
  report.config.emplace_back("trials", std::to_string(trials));
  report.metrics.emplace_back("trials_completed", static_cast<double>(result.trials_completed));
  report.metrics.emplace_back("discarded", static_cast<double>(result.discarded));
  report.metrics.emplace_back("ks_distance", result.ks_distance);
  report.series.emplace_back("delta", result.delta_list);
  report.series.emplace_back("mean_min_mass_sq", result.mean_min_mass_sq);
  report.series.emplace_back("mean_max_mass_sq", result.mean_max_mass_sq);
  report.series.emplace_back("limit_min", result.limit_min);
  report.series.emplace_back("limit_max", result.limit_max);
  report.runtime_seconds = watch.seconds();
  return result;
}

DistTailResult dist_tail(Index dim, Index m, std::int64_t trials,
                         const std::vector<double>& eps_grid, std::uint64_t master_seed,
                         int threads) {
  if (!(m > 0 && m < dim)) throw std::invalid_argument("dist_tail: need 0 < m < N");
  if (trials < 1) throw std::invalid_argument("dist_tail: trials must be positive");
  const auto grid = checked_grid(eps_grid);

  const Stopwatch watch;
  const auto tn = static_cast<std::size_t>(trials);
  std::vector<double> stats(tn);
  run_trials(trials, threads, [&](std::int64_t t) {
    auto stream = randgen::derive_stream(master_seed, static_cast<std::uint64_t>(t));
    Vector x(dim);
    for (Index i = 0; i < dim; ++i) x(i) = Complex(stream.next_normal(), stream.next_normal());
    std::vector<Vector> basis(static_cast<std::size_t>(dim - m));
    for (auto& b : basis) {
      b.resize(dim);
      for (Index i = 0; i < dim; ++i) b(i) = Complex(stream.next_normal(), stream.next_normal());
    }
    stats[static_cast<std::size_t>(t)] =
        linalg::dist_to_subspace(x, basis, Vector::Zero(dim));
  });

  DistTailResult result;
  result.curve = make_curve(grid, stats, std::sqrt(static_cast<double>(m)));
  for (double eps : grid)
    result.oracle.push_back(
        baseline::chi_squared_cdf(static_cast<double>(m) * eps * eps, static_cast<int>(2 * m)));

  RunReport& report = result.report;
  report.experiment = "dist-tail";
  report.master_seed = master_seed;
  report.config.emplace_back("dim", std::to_string(dim));
  report.config.emplace_back("m", std::to_string(m));
  report.config.emplace_back("trials", std::to_string(trials));
  report.series.emplace_back("eps", result.curve.eps);
  report.series.emplace_back("phat", result.curve.phat);
  report.series.emplace_back("oracle", result.oracle);
  try {
    report.slope = slope_estimate(result.curve);
  } catch (const std::invalid_argument&) {
    // too few usable points; the curve is still reported
  }
  report.runtime_seconds = watch.seconds();
  return result;
}

OpNormResult opnorm_experiment(Index n, const randgen::MatrixEnsemble& ensemble,
                               std::int64_t trials, std::uint64_t master_seed, int threads) {
  if (n < 2) throw std::invalid_argument("opnorm_experiment: n must be >= 2");
  if (trials < 1) throw std::invalid_argument("opnorm_experiment: trials must be positive");
  const Stopwatch watch;
  randgen::MatrixEnsemble square = ensemble;
  square.rows = square.cols = n;

  std::vector<double> ratios(static_cast<std::size_t>(trials));
  const double root_n = std::sqrt(static_cast<double>(n));
  run_trials(trials, threads, [&](std::int64_t t) {
    auto stream = randgen::derive_stream(master_seed, static_cast<std::uint64_t>(t));
    const Matrix a = randgen::sample_matrix(square, stream);
    ratios[static_cast<std::size_t>(t)] = linalg::operator_norm(a, 1e-8) / root_n;
  });

  OpNormResult result;
  result.n = n;
  result.trials = trials;
  double sum = 0;
  for (double r : ratios) sum += r;
  result.mean_ratio = sum / static_cast<double>(trials);
  result.fitted_m = sorted_quantile(ratios, 0.999);
  result.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  result.q50 = sorted_quantile(ratios, 0.5);

  RunReport& report = result.report;
  report.experiment = "opnorm";
  report.master_seed = master_seed;
  report.config.emplace_back("n", std::to_string(n));
  echo_ensemble(report, square);
  report.config.emplace_back("trials", std::to_string(trials));
  report.metrics.emplace_back("mean_ratio", result.mean_ratio);
  report.metrics.emplace_back("fitted_m", result.fitted_m);
  report.metrics.emplace_back("max_ratio", result.max_ratio);
  report.metrics.emplace_back("q50", result.q50);
  report.runtime_seconds = watch.seconds();
  return result;
}

IncompressibleImageResult incompressible_image_experiment(Index rows, Index cols, Complex lambda,
                                                          double delta, double rho,
                                                          std::int64_t trials,
                                                          std::uint64_t master_seed, int threads) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("incompressible_image_experiment: bad dimensions");
  if (2 * rows < cols)
    throw std::invalid_argument("incompressible_image_experiment: need N >= n/2");
  if (trials < 1)
    throw std::invalid_argument("incompressible_image_experiment: trials must be positive");
  structure::CompressParams params{delta, rho};
  params.validate();

  const Stopwatch watch;
  randgen::MatrixEnsemble ens;
  ens.field = Field::Complex;
  ens.rows = rows;
  ens.cols = cols;
  ens.entry_dist = randgen::EntryDistribution::standard_gaussian();

  const auto tn = static_cast<std::size_t>(trials);
  std::vector<double> ratios(tn);
  const double root_rows = std::sqrt(static_cast<double>(rows));
  const auto support = std::max<Index>(
      1, static_cast<Index>(std::floor(delta * static_cast<double>(cols) + 1e-9)));

  run_trials(trials, threads, [&](std::int64_t t) {
    auto stream = randgen::derive_stream(master_seed, static_cast<std::uint64_t>(t));
    const Matrix a = randgen::sample_matrix(ens, stream);
    // compressible unit vector: random sparse support, Gaussian coefficients,
    // plus a perturbation of norm < rho
    Vector x;
    for (int attempt = 0; attempt < 100; ++attempt) {
      std::vector<Index> perm(static_cast<std::size_t>(cols));
      std::iota(perm.begin(), perm.end(), Index{0});
      for (Index i = 0; i < support; ++i) {
        const auto j =
            i + static_cast<Index>(stream.next_uniform() * static_cast<double>(cols - i));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(std::min(j, cols - 1))]);
      }
      Vector sparse = Vector::Zero(cols);
      for (Index i = 0; i < support; ++i)
        sparse(perm[static_cast<std::size_t>(i)]) =
            Complex(stream.next_normal(), stream.next_normal());
      sparse.normalize();
      const double scale = 0.9 * rho * stream.next_uniform();
      Vector noise(cols);
      for (Index i = 0; i < cols; ++i)
        noise(i) = Complex(stream.next_normal(), stream.next_normal());
      noise *= scale / noise.norm();
      x = (sparse + noise).normalized();
      if (structure::classify(x, params) == structure::Compressibility::Compressible) break;
    }
    ratios[static_cast<std::size_t>(t)] = (linalg::shift(a, lambda) * x).norm() / root_rows;
  });

  IncompressibleImageResult result;
  result.trials = trials;
  result.p01 = sorted_quantile(ratios, 0.01);
  result.p05 = sorted_quantile(ratios, 0.05);
  result.p50 = sorted_quantile(ratios, 0.50);
  result.min_ratio = *std::min_element(ratios.begin(), ratios.end());

  RunReport& report = result.report;
  report.experiment = "compress-image";
  report.master_seed = master_seed;
  report.config.emplace_back("rows", std::to_string(rows));
  report.config.emplace_back("cols", std::to_string(cols));
  report.config.emplace_back("lambda_re", io::format_double(lambda.real()));
  report.config.emplace_back("lambda_im", io::format_double(lambda.imag()));
  report.config.emplace_back("delta", io::format_double(delta));
  report.config.emplace_back("rho", io::format_double(rho));
  report.config.emplace_back("trials", std::to_string(trials));
  report.metrics.emplace_back("p01", result.p01);
  report.metrics.emplace_back("p05", result.p05);
  report.metrics.emplace_back("p50", result.p50);
  report.metrics.emplace_back("min_ratio", result.min_ratio);
  report.runtime_seconds = watch.seconds();
  return result;
}

}  // namespace nogaps::experiments
