// Command-line front end: experiment dispatch, CSV/JSON emission, and the
// matrix text format. Exit codes: 0 success, 1 usage error, 2 numerical
// failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nogaps/baseline.hpp"
#include "nogaps/deloc.hpp"
#include "nogaps/experiments.hpp"
#include "nogaps/io.hpp"
#include "nogaps/linalg.hpp"
#include "nogaps/randgen.hpp"
#include "nogaps/structure.hpp"

namespace {

using namespace nogaps;

struct CommonOpts {
  std::uint64_t seed = 1;
  std::int64_t trials = 100;
  int threads = 1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_trials = true) {
  cmd->add_option("--seed", opts.seed, "master seed");
  if (with_trials) cmd->add_option("--trials", opts.trials, "number of Monte Carlo trials");
  cmd->add_option("--threads", opts.threads, "worker threads (never changes numerical output)");
  cmd->add_option("--out", opts.out, "output path (stem for commands writing CSV+JSON)");
}

Field parse_field(const std::string& name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  throw std::invalid_argument("--field must be 'real' or 'complex'");
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty())
    std::cout << content;
  else
    io::write_file(out, content);
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2)
    throw std::invalid_argument("eps grid: need 0 < eps-min < eps-max and eps-count >= 2");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + i * step);
  return grid;
}

void write_tail_outputs(const std::string& stem, const experiments::TailCurve& curve,
                        const experiments::RunReport& report) {
  if (stem.empty()) {
    std::cout << io::tail_curve_csv(curve) << io::run_report_json(report);
  } else {
    io::write_file(stem + ".csv", io::tail_curve_csv(curve));
    io::write_file(stem + ".json", io::run_report_json(report));
  }
}

void report_runtime(const experiments::RunReport& report) {
  std::fprintf(stderr, "[%s] runtime %.3f s\n", report.experiment.c_str(),
               report.runtime_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nogaps: delocalization statistics and tail experiments for random matrices"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file; command-line flags take precedence");
  app.allow_config_extras(false);

  // gen
  auto* gen = app.add_subcommand("gen", "sample a matrix and write the text format");
  CommonOpts gen_opts;
  Index gen_rows = 0, gen_cols = 0;
  std::uint64_t gen_stream = 0;
  std::string gen_field = "complex", gen_dist = "gaussian";
  gen->add_option("--rows", gen_rows, "rows")->required();
  gen->add_option("--cols", gen_cols, "cols")->required();
  gen->add_option("--field", gen_field, "real|complex");
  gen->add_option("--dist", gen_dist, "gaussian|rademacher|uniform");
  gen->add_option("--stream-index", gen_stream, "stream index within the master seed");
  add_common(gen, gen_opts, false);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "eigendecomposition of a matrix file");
  CommonOpts spec_opts;
  std::string spec_in, spec_vectors;
  double spec_tol = 1e-8;
  spectrum->add_option("--in", spec_in, "input matrix file")->required();
  spectrum->add_option("--tol", spec_tol, "relative residual bound");
  spectrum->add_option("--vectors", spec_vectors, "optional output path for eigenvectors");
  add_common(spectrum, spec_opts, false);

  // deloc
  auto* deloc_cmd = app.add_subcommand("deloc", "eigenvector subset-mass sweep");
  CommonOpts deloc_opts;
  Index deloc_n = 0;
  std::string deloc_field = "complex", deloc_dist = "gaussian";
  std::vector<Index> deloc_m;
  deloc_cmd->add_option("--n", deloc_n, "matrix dimension")->required();
  deloc_cmd->add_option("--field", deloc_field, "real|complex");
  deloc_cmd->add_option("--dist", deloc_dist, "entry distribution");
  deloc_cmd->add_option("--m", deloc_m, "subset sizes")->required()->expected(-1);
  add_common(deloc_cmd, deloc_opts);

  // smin-tail
  auto* smin = app.add_subcommand("smin-tail", "smallest singular value tail curve");
  CommonOpts smin_opts;
  smin_opts.trials = 1000;
  Index smin_rows = 0, smin_cols = 0;
  std::string smin_field = "complex", smin_dist = "gaussian";
  double smin_lre = 0.0, smin_lim = 0.0, smin_lo = 0.05, smin_hi = 0.5, smin_norm = 4.0;
  int smin_count = 10;
  smin->add_option("--rows", smin_rows, "rows")->required();
  smin->add_option("--cols", smin_cols, "cols")->required();
  smin->add_option("--field", smin_field, "real|complex");
  smin->add_option("--dist", smin_dist, "entry distribution");
  smin->add_option("--lambda-re", smin_lre, "shift, real part");
  smin->add_option("--lambda-im", smin_lim, "shift, imaginary part");
  smin->add_option("--eps-min", smin_lo, "smallest eps");
  smin->add_option("--eps-max", smin_hi, "largest eps");
  smin->add_option("--eps-count", smin_count, "log-spaced grid size");
  smin->add_option("--norm-const", smin_norm, "norm constant M bounding |lambda|");
  add_common(smin, smin_opts);

  // dist-tail
  auto* dist = app.add_subcommand("dist-tail", "distance-to-subspace tail curve");
  CommonOpts dist_opts;
  dist_opts.trials = 1000;
  Index dist_dim = 0, dist_m = 0;
  double dist_lo = 0.05, dist_hi = 0.7;
  int dist_count = 8;
  dist->add_option("--dim", dist_dim, "ambient dimension N")->required();
  dist->add_option("--m", dist_m, "codimension of the subspace")->required();
  dist->add_option("--eps-min", dist_lo, "smallest eps");
  dist->add_option("--eps-max", dist_hi, "largest eps");
  dist->add_option("--eps-count", dist_count, "log-spaced grid size");
  add_common(dist, dist_opts);

  // normal-vector
  auto* normal = app.add_subcommand("normal-vector", "kernel vector subset-mass limits");
  CommonOpts normal_opts;
  normal_opts.trials = 50;
  Index normal_n = 0;
  std::string normal_field = "complex", normal_dist = "gaussian";
  std::vector<double> normal_delta;
  normal->add_option("--n", normal_n, "ambient dimension")->required();
  normal->add_option("--field", normal_field, "real|complex");
  normal->add_option("--dist", normal_dist, "entry distribution");
  normal->add_option("--delta", normal_delta, "subset fractions")->required()->expected(-1);
  add_common(normal, normal_opts);

  // lcd
  auto* lcd_cmd = app.add_subcommand("lcd", "essential least common denominator search");
  CommonOpts lcd_opts;
  std::string lcd_vec, lcd_theta = "auto";
  structure::LcdParams lcd_params;
  lcd_cmd->add_option("--vec", lcd_vec, "coefficient vector file (one-column matrix format)")
      ->required();
  lcd_cmd->add_option("--alpha", lcd_params.alpha, "alpha");
  lcd_cmd->add_option("--gamma", lcd_params.gamma, "gamma in (0,1)");
  lcd_cmd->add_option("--rmax", lcd_params.r_max, "search radius cap");
  lcd_cmd->add_option("--step", lcd_params.grid_step, "initial grid resolution");
  lcd_cmd->add_option("--refine", lcd_params.refine_iters, "local bisection rounds");
  lcd_cmd->add_option("--theta", lcd_theta, "theta domain: auto|real|complex");
  add_common(lcd_cmd, lcd_opts, false);

  // compress
  auto* compress = app.add_subcommand("compress", "compressibility classification");
  CommonOpts comp_opts;
  std::string comp_vec;
  double comp_delta = 0.1, comp_rho = 0.5;
  compress->add_option("--vec", comp_vec, "vector file (one-column matrix format)")->required();
  compress->add_option("--delta", comp_delta, "sparsity fraction")->required();
  compress->add_option("--rho", comp_rho, "distance threshold")->required();
  add_common(compress, comp_opts, false);

  // levy
  auto* levy = app.add_subcommand("levy", "Levy concentration function estimate");
  CommonOpts levy_opts;
  levy_opts.trials = 10000;
  std::string levy_dist = "rademacher";
  int levy_terms = 1;
  double levy_eps = 0.5;
  levy->add_option("--dist", levy_dist, "entry distribution of the summands");
  levy->add_option("--terms", levy_terms, "number of iid summands");
  levy->add_option("--eps", levy_eps, "ball radius")->required();
  add_common(levy, levy_opts);

  // baseline
  auto* base = app.add_subcommand("baseline", "uniform-sphere subset mass simulation");
  CommonOpts base_opts;
  base_opts.trials = 100;
  Index base_n = 0, base_m = 0;
  double base_delta = 0.0;
  std::string base_field = "complex";
  base->add_option("--n", base_n, "dimension")->required();
  base->add_option("--m", base_m, "subset size");
  base->add_option("--delta", base_delta, "subset fraction (alternative to --m)");
  base->add_option("--field", base_field, "real|complex");
  add_common(base, base_opts);

  // quantile
  auto* quant = app.add_subcommand("quantile", "closed-form subset mass limits");
  CommonOpts quant_opts;
  double quant_delta = 0.0;
  quant->add_option("--delta", quant_delta, "subset fraction in (0, 1]")->required();
  add_common(quant, quant_opts, false);

  // opnorm
  auto* opnorm = app.add_subcommand("opnorm", "operator norm concentration");
  CommonOpts op_opts;
  Index op_n = 0;
  std::string op_field = "complex", op_dist = "gaussian";
  opnorm->add_option("--n", op_n, "matrix dimension")->required();
  opnorm->add_option("--field", op_field, "real|complex");
  opnorm->add_option("--dist", op_dist, "entry distribution");
  add_common(opnorm, op_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      randgen::MatrixEnsemble ens{parse_field(gen_field), gen_rows, gen_cols,
                                  randgen::EntryDistribution::from_name(gen_dist)};
      auto stream = randgen::derive_stream(gen_opts.seed, gen_stream);
      const Matrix a = randgen::sample_matrix(ens, stream);
      emit(gen_opts.out, io::matrix_to_text(a, ens.field));
    } else if (spectrum->parsed()) {
      const auto parsed = io::matrix_from_text(io::read_file(spec_in));
      const auto spec = linalg::eigen_decompose(parsed.matrix, spec_tol);
      std::string csv = "index,re,im,residual\n";
      for (std::size_t k = 0; k < spec.pairs.size(); ++k) {
        const auto& pair = spec.pairs[k];
        csv += std::to_string(k) + "," + io::format_double(pair.value.real()) + "," +
               io::format_double(pair.value.imag()) + "," + io::format_double(pair.residual) +
               "\n";
      }
      emit(spec_opts.out, csv);
      if (!spec_vectors.empty()) {
        Matrix vectors(parsed.matrix.rows(), parsed.matrix.cols());
        for (std::size_t k = 0; k < spec.pairs.size(); ++k)
          vectors.col(static_cast<Index>(k)) = spec.pairs[k].vector;
        io::write_file(spec_vectors, io::matrix_to_text(vectors, Field::Complex));
      }
    } else if (deloc_cmd->parsed()) {
      randgen::MatrixEnsemble ens{parse_field(deloc_field), deloc_n, deloc_n,
                                  randgen::EntryDistribution::from_name(deloc_dist)};
      auto result = experiments::deloc_experiment(deloc_n, ens, deloc_m, deloc_opts.trials,
                                                  deloc_opts.seed, deloc_opts.threads);
      emit(deloc_opts.out, io::run_report_json(result.report));
      report_runtime(result.report);
    } else if (smin->parsed()) {
      randgen::MatrixEnsemble ens{parse_field(smin_field), smin_rows, smin_cols,
                                  randgen::EntryDistribution::from_name(smin_dist)};
      const auto grid = log_grid(smin_lo, smin_hi, smin_count);
      const Complex lambda(smin_lre, smin_lim);
      auto curve = experiments::smin_tail(ens, lambda, grid, smin_opts.trials, smin_opts.seed,
                                          smin_opts.threads, smin_norm);
      experiments::RunReport report;
      report.experiment = "smin-tail";
      report.master_seed = smin_opts.seed;
      report.config.emplace_back("rows", std::to_string(smin_rows));
      report.config.emplace_back("cols", std::to_string(smin_cols));
      report.config.emplace_back("field", smin_field);
      report.config.emplace_back("dist", smin_dist);
      report.config.emplace_back("lambda_re", io::format_double(smin_lre));
      report.config.emplace_back("lambda_im", io::format_double(smin_lim));
      report.config.emplace_back("trials", std::to_string(smin_opts.trials));
      report.series.emplace_back("eps", curve.eps);
      report.series.emplace_back("phat", curve.phat);
      try {
        report.slope = experiments::slope_estimate(curve);
      } catch (const std::invalid_argument&) {
      }
      write_tail_outputs(smin_opts.out, curve, report);
    } else if (dist->parsed()) {
      auto result = experiments::dist_tail(dist_dim, dist_m, dist_opts.trials,
                                           log_grid(dist_lo, dist_hi, dist_count),
                                           dist_opts.seed, dist_opts.threads);
      write_tail_outputs(dist_opts.out, result.curve, result.report);
    } else if (normal->parsed()) {
      randgen::MatrixEnsemble ens{parse_field(normal_field), normal_n - 1, normal_n,
                                  randgen::EntryDistribution::from_name(normal_dist)};
      auto result = experiments::normal_vector_experiment(
          normal_n, ens, normal_delta, normal_opts.trials, normal_opts.seed, normal_opts.threads);
      emit(normal_opts.out, io::run_report_json(result.report));
      report_runtime(result.report);
    } else if (lcd_cmd->parsed()) {
      const auto parsed = io::matrix_from_text(io::read_file(lcd_vec));
      if (parsed.matrix.cols() != 1)
        throw std::invalid_argument("lcd: --vec must be a one-column matrix file");
      structure::LcdQuery query;
      query.a = parsed.matrix.col(0);
      query.params = lcd_params;
      if (lcd_theta == "real")
        query.field = structure::ThetaField::Real;
      else if (lcd_theta == "complex")
        query.field = structure::ThetaField::Complex;
      else if (lcd_theta == "auto")
        query.field = parsed.field == Field::Real ? structure::ThetaField::Real
                                                  : structure::ThetaField::Complex;
      else
        throw std::invalid_argument("lcd: --theta must be auto, real, or complex");
      emit(lcd_opts.out, io::lcd_result_json(structure::lcd(query)));
    } else if (compress->parsed()) {
      const auto parsed = io::matrix_from_text(io::read_file(comp_vec));
      if (parsed.matrix.cols() != 1)
        throw std::invalid_argument("compress: --vec must be a one-column matrix file");
      const Vector x = parsed.matrix.col(0).normalized();
      structure::CompressParams params{comp_delta, comp_rho};
      const double distance = structure::compress_distance(x, comp_delta);
      const auto cls = structure::classify(x, params);
      io::JsonObject obj;
      obj.add("distance", distance);
      obj.add("classification",
              cls == structure::Compressibility::Compressible ? "compressible" : "incompressible");
      obj.add("delta", comp_delta);
      obj.add("rho", comp_rho);
      emit(comp_opts.out, obj.str());
    } else if (levy->parsed()) {
      const auto dist_spec = randgen::EntryDistribution::from_name(levy_dist);
      if (levy_terms < 1) throw std::invalid_argument("levy: --terms must be positive");
      auto stream = randgen::derive_stream(levy_opts.seed, 0);
      auto sampler = [&dist_spec, terms = levy_terms](randgen::SeedStream& s) {
        double sum = 0.0;
        for (int i = 0; i < terms; ++i) sum += s.next_entry(dist_spec);
        return RealVector::Constant(1, sum);
      };
      const auto est = structure::levy_concentration(sampler, levy_eps, levy_opts.trials, stream);
      io::JsonObject obj;
      obj.add("estimate", est.estimate);
      obj.add("upper_conf", est.upper_conf);
      obj.add("eps", levy_eps);
      obj.add("trials", levy_opts.trials);
      emit(levy_opts.out, obj.str());
    } else if (base->parsed()) {
      Index m = base_m;
      if (m == 0) {
        if (!(base_delta > 0.0)) throw std::invalid_argument("baseline: give --m or --delta");
        m = static_cast<Index>(std::floor(base_delta * static_cast<double>(base_n) + 1e-9));
      }
      const auto summary = baseline::sphere_subset_mass_simulation(
          base_n, m, parse_field(base_field), base_opts.trials, base_opts.seed);
      io::JsonObject obj;
      obj.add("n", static_cast<std::int64_t>(summary.n));
      obj.add("m", static_cast<std::int64_t>(summary.m));
      obj.add("field", field_name(summary.field));
      obj.add("trials", summary.trials);
      obj.add("mean_min_mass", summary.mean_min_mass);
      obj.add("q05", summary.q05);
      obj.add("q50", summary.q50);
      obj.add("q95", summary.q95);
      obj.add("linf_max", summary.linf_max);
      obj.add("mean_min_mass_sq", summary.mean_min_mass_sq);
      obj.add("mean_max_mass_sq", summary.mean_max_mass_sq);
      emit(base_opts.out, obj.str());
    } else if (quant->parsed()) {
      const double mn = baseline::limit_mass(quant_delta, baseline::MassExtreme::Min);
      const double mx = baseline::limit_mass(quant_delta, baseline::MassExtreme::Max);
      const std::string text = "delta " + io::format_double(quant_delta) + "\n" +
                               "min_mass " + io::format_double(mn) + "\n" +
                               "max_mass " + io::format_double(mx) + "\n";
      emit(quant_opts.out, text);
    } else if (opnorm->parsed()) {
      randgen::MatrixEnsemble ens{parse_field(op_field), op_n, op_n,
                                  randgen::EntryDistribution::from_name(op_dist)};
      auto result = experiments::opnorm_experiment(op_n, ens, op_opts.trials, op_opts.seed,
                                                   op_opts.threads);
      emit(op_opts.out, io::run_report_json(result.report));
      report_runtime(result.report);
    }
  } catch (const experiments::TrialError& e) {
    std::fprintf(stderr, "numerical failure at trial %lld (master seed %llu): %s\n",
                 static_cast<long long>(e.trial_index),
                 static_cast<unsigned long long>(e.master_seed), e.what());
    return 2;
  } catch (const linalg::EigenDecompositionError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
  return 0;
}
