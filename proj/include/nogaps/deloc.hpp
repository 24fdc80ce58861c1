#pragma once

#include <optional>
#include <vector>

#include "nogaps/common.hpp"
#include "nogaps/linalg.hpp"

namespace nogaps::deloc {

/// Sorted squared coordinate magnitudes of a unit vector. sorted_sq sums to 1
/// and linf^2 equals its last element.
struct DelocProfile {
  Index n = 0;
  RealVector sorted_sq;  // ascending
  double linf = 0.0;
};

/// Normalizes v internally; rejects the zero vector.
DelocProfile profile(const Vector& v);

/// min over |I| = m of ||v_I||_2: the square root of the sum of the m
/// smallest squared magnitudes. The subset minimizer is always the m smallest
/// coordinates, so sorting replaces the combinatorial quantifier exactly.
double min_subset_mass(const DelocProfile& p, Index m);
/// max over |I| = m of ||v_I||_2 (the m largest coordinates).
double max_subset_mass(const DelocProfile& p, Index m);

struct LocWitness {
  Index eigen_index = 0;            // position in the spectrum's sorted order
  std::vector<Index> subset;        // indices of the m smallest coordinates
};

struct LocResult {
  bool holds = false;
  std::optional<LocWitness> witness;
};

/// loc(A, m, delta): some eigenvector has a size-m subset of mass below
/// delta. The witness reports the canonical worst subset (ties among equal
/// magnitudes broken by lowest index).
LocResult loc_event(const linalg::Spectrum& spectrum, Index m, double delta);

struct ParameterSet {
  double t = 1.0;
  Index m = 1;
  Index n = 1;
  double norm_constant = 1.0;  // M
  Complex lambda0{0.0, 0.0};
  double delta = 0.25;
  double eps = 1.0;

  /// Enforces t in (0,1], 1 <= m <= n, M >= 1, delta in (0,1/2), eps > 0.
  void validate() const;
};

/// loc_{lambda0}: ||(A - lambda0) v|| <= delta * M * sqrt(n) and some size-m
/// subset of v has mass below delta.
bool approx_loc_event(const Matrix& a, const Vector& v, Complex lambda0, const ParameterSet& ps);

enum class DelocBound {
  CplxLargeM,    // c sqrt(t) (m/n)^{3/2}
  CplxSmallM,    // c sqrt(t)/log^2(n) (m/n)^{3/2 + 1/m}
  MinCoord,      // c sqrt(t) / (n^{5/2} log^2 n)
  RealLargeM,    // c t (m/n)^2
  RealSmallM,    // c t (m/n)^{2 + 1/m}
  NormalLargeM,  // c sqrt(t) (m/n)^{3/2}
  NormalSmallM,  // c sqrt(t)/log(n) (m/n)^{3/2}
};

/// Right-hand-side delocalization threshold with the configurable constant c
/// substituted. Parameter-range violations name the violated constraint.
double deloc_lower_bound(DelocBound bound, double t, Index m, Index n, double c);

enum class ShiftVariant { SquareShift, RectShift };

/// Solves 6 delta M sqrt(n) = eps (sqrt(n) - sqrt(n-m-1)) for delta
/// (square-shift); the rect-shift variant uses sqrt(n-1) in place of sqrt(n).
double delta_from_eps(double eps, double norm_constant, Index n, Index m, ShiftVariant variant);

enum class EpsSchedule { Cplx, Real, CplxSmall, Normal, NormalSmall };

/// The scale eps defined by the named identity:
///   cplx         eps = t^{m/(2m-1)} (m/n)^{(m+2)/(2m-1)}
///   real         eps = t (m/n)^{(m+1)/m}
///   cplx-small   (n/m)^{1+2/m} log(n)^{2+2/m} eps^2 = t
///   normal       (n/m) eps^{(2m-1)/m} = t
///   normal-small eps = sqrt(t)/log(n) sqrt(m/n)
double epsilon_schedule(EpsSchedule variant, double t, Index m, Index n);

enum class NetKind { ComplexDisc, RealInterval, Sphere };

/// Net cardinality upper bounds: 9/delta^2 (disc), 3/delta (interval),
/// 4n (1 + 2/eps)^{2n-1} (sphere; param is eps and n the complex dimension).
double net_cardinality_bound(NetKind kind, double param, Index n = 1);

}  // namespace nogaps::deloc
