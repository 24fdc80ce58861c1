#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nogaps/common.hpp"
#include "nogaps/randgen.hpp"

namespace nogaps::structure {

/// Which domain the scalar theta of the LCD search ranges over. Real vectors
/// are usually queried with a real theta (1-D scan); complex vectors with a
/// complex theta (2-D polar scan).
enum class ThetaField { Real, Complex };

struct LcdParams {
  double alpha = 1.0;
  double gamma = 0.5;
  double r_max = 64.0;
  double grid_step = 1e-3;
  int refine_iters = 40;

  void validate() const;
};

struct LcdQuery {
  Vector a;
  ThetaField field = ThetaField::Real;
  LcdParams params;
};

enum class LcdStatus { Found, ExceedsCap };

/// Outcome of a resolution-certified grid search: when found, `value` is an
/// upper bound on the true infimum, within the final grid resolution of the
/// smallest feasible point located, and the witness satisfies
/// dist(underline(theta a), Z^{2N}) < min(gamma ||theta a||, alpha).
/// ExceedsCap means no feasible point was found at or below r_max.
struct LcdResult {
  LcdStatus status = LcdStatus::ExceedsCap;
  double value = 0.0;
  Complex witness_theta{0.0, 0.0};
  double achieved_dist = 0.0;
  double resolution = 0.0;  // final local grid resolution around the witness
};

/// Distance from theta*a to the integer lattice (Z^N for a real product,
/// Z^{2N} through the realification otherwise).
double lattice_dist(const Vector& a, Complex theta);

/// Essential least common denominator by grid scan plus local bisection.
LcdResult lcd(const LcdQuery& query);

/// Upper-bound estimate of LCD(E): the minimum of lcd over `samples` random
/// unit vectors of E, drawn sequentially from `stream` (so nested sample
/// counts give nonincreasing estimates).
LcdResult lcd_subspace_estimate(const std::vector<Vector>& basis, const LcdParams& params,
                                int samples, randgen::SeedStream& stream);

struct CompressParams {
  double delta = 0.1;  // sparsity fraction, in (0, 1)
  double rho = 0.5;    // distance threshold, in (0, 1)

  void validate() const;
};

enum class Compressibility { Compressible, Incompressible };

/// Exact distance from the unit vector x to the set of floor(delta n)-sparse
/// vectors: the mass outside the largest floor(delta n) coordinates.
double compress_distance(const Vector& x, double delta);
Compressibility classify(const Vector& x, const CompressParams& params);

struct SpreadSet {
  std::vector<Index> indices;
  double fraction = 0.0;
};

/// sigma = { k : nu2/sqrt(n) <= |x_k| <= nu3/sqrt(n) } and |sigma|/n.
SpreadSet spread_set(const Vector& x, double nu2, double nu3);

/// True iff every coordinate modulus lies in [K1/sqrt(d), K2/sqrt(d)], where
/// d is the number of coordinates of y.
bool totally_spread_check(const Vector& y, double k1, double k2);

enum class LevelSetMembership { Inside, Outside, Indeterminate };

/// Whether LCD(x) lands in [D, 2D), within the search resolution. Boundary
/// ties and an exceeded cap that cannot exclude the window are reported as
/// Indeterminate rather than guessed.
LevelSetMembership level_set_membership(const Vector& x, double d_level, const LcdParams& params,
                                        ThetaField field = ThetaField::Complex);

struct LevyEstimate {
  double estimate = 0.0;    // max over sample centers of the covered fraction
  double upper_conf = 0.0;  // Wilson 95% upper bound on that fraction
};

/// Empirical Levy concentration function sup_v P(||S - v|| <= eps), with the
/// samples themselves as candidate centers. `sampler` draws one realization
/// per call.
LevyEstimate levy_concentration(const std::function<RealVector(randgen::SeedStream&)>& sampler,
                                double eps, std::int64_t trials, randgen::SeedStream& stream);

}  // namespace nogaps::structure
