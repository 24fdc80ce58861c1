#include "nogaps/deloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nogaps::deloc {

namespace {

void check_subset_size(Index m, Index n) {
  if (m < 1 || m > n) throw std::invalid_argument("subset size m must satisfy 1 <= m <= n");
}

double log_n(Index n) { return std::log(static_cast<double>(n)); }

[[noreturn]] void reject(const char* constraint) {
  throw std::invalid_argument(std::string("parameter range violated: ") + constraint);
}

}  // namespace

DelocProfile profile(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("profile: zero vector");
  DelocProfile p;
  p.n = v.size();
  p.sorted_sq = (v.cwiseAbs2() / (norm * norm)).real();
  std::sort(p.sorted_sq.begin(), p.sorted_sq.end());
  p.linf = std::sqrt(p.sorted_sq(p.n - 1));
  return p;
}

double min_subset_mass(const DelocProfile& p, Index m) {
  check_subset_size(m, p.n);
  return std::sqrt(std::max(0.0, p.sorted_sq.head(m).sum()));
}

double max_subset_mass(const DelocProfile& p, Index m) {
  check_subset_size(m, p.n);
  return std::sqrt(std::max(0.0, p.sorted_sq.tail(m).sum()));
}

LocResult loc_event(const linalg::Spectrum& spectrum, Index m, double delta) {
  LocResult result;
  for (std::size_t k = 0; k < spectrum.pairs.size(); ++k) {
    const Vector& v = spectrum.pairs[k].vector;
    const DelocProfile p = profile(v);
    if (min_subset_mass(p, m) < delta) {
      // canonical worst subset: the m smallest magnitudes, ties by lowest index
      std::vector<Index> order(static_cast<std::size_t>(v.size()));
      std::iota(order.begin(), order.end(), Index{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](Index i, Index j) { return std::abs(v(i)) < std::abs(v(j)); });
      order.resize(static_cast<std::size_t>(m));
      std::sort(order.begin(), order.end());
      result.holds = true;
      result.witness = LocWitness{static_cast<Index>(k), std::move(order)};
      return result;
    }
  }
  return result;
}

void ParameterSet::validate() const {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("ParameterSet: t must be in (0, 1]");
  if (m < 1 || m > n) throw std::invalid_argument("ParameterSet: need 1 <= m <= n");
  if (!(norm_constant >= 1.0)) throw std::invalid_argument("ParameterSet: M must be >= 1");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("ParameterSet: delta must be in (0, 1/2)");
  if (!(eps > 0.0)) throw std::invalid_argument("ParameterSet: eps must be positive");
}

bool approx_loc_event(const Matrix& a, const Vector& v, Complex lambda0, const ParameterSet& ps) {
  if (a.cols() != v.size()) throw std::invalid_argument("approx_loc_event: dimension mismatch");
  const double bound = ps.delta * ps.norm_constant * std::sqrt(static_cast<double>(v.size()));
  // the rectangular shift subtracts lambda0 on the main diagonal only
  const double shifted = (linalg::shift(a, lambda0) * v).norm();
  if (shifted > bound) return false;
  return min_subset_mass(profile(v), ps.m) < ps.delta;
}

double deloc_lower_bound(DelocBound bound, double t, Index m, Index n, double c) {
  if (n < 2) reject("n >= 2");
  if (!(t > 0.0 && t <= 1.0)) reject("t in (0, 1]");
  if (m < 1 || m > n) reject("1 <= m <= n");
  const double ratio = static_cast<double>(m) / static_cast<double>(n);
  const double ln = log_n(n);
  const double md = static_cast<double>(m);
  switch (bound) {
    case DelocBound::CplxLargeM:
      if (md < ln * ln) reject("cplx-large-m needs m >= log^2 n");
      if (!(t >= std::exp(-ln * ln))) reject("cplx-large-m needs t >= exp(-log^2 n)");
      return c * std::sqrt(t) * std::pow(ratio, 1.5);
    case DelocBound::CplxSmallM:
      if (md > ln * ln) reject("cplx-small-m needs m <= log^2 n");
      return c * std::sqrt(t) / (ln * ln) * std::pow(ratio, 1.5 + 1.0 / md);
    case DelocBound::MinCoord:
      return c * std::sqrt(t) / (std::pow(static_cast<double>(n), 2.5) * ln * ln);
    case DelocBound::RealLargeM:
      if (md < ln * ln) reject("real-large-m needs m >= log^2 n");
      return c * t * ratio * ratio;
    case DelocBound::RealSmallM:
      if (md > ln * ln) reject("real-small-m needs m <= log^2 n");
      return c * t * std::pow(ratio, 2.0 + 1.0 / md);
    case DelocBound::NormalLargeM:
      if (md < ln * ln) reject("normal-large-m needs m >= log^2 n");
      if (!(t >= std::exp(-ln * ln))) reject("normal-large-m needs t >= exp(-log^2 n)");
      return c * std::sqrt(t) * std::pow(ratio, 1.5);
    case DelocBound::NormalSmallM:
      if (md > ln * ln) reject("normal-small-m needs m <= log^2 n");
      return c * std::sqrt(t) / ln * std::pow(ratio, 1.5);
  }
  throw std::logic_error("unreachable bound variant");
}

double delta_from_eps(double eps, double norm_constant, Index n, Index m, ShiftVariant variant) {
  if (!(eps > 0.0)) throw std::invalid_argument("delta_from_eps: eps must be positive");
  if (!(norm_constant >= 1.0)) throw std::invalid_argument("delta_from_eps: M must be >= 1");
  const Index max_m = variant == ShiftVariant::SquareShift ? n - 1 : n - 2;
  if (m < 1 || m > max_m)
    throw std::invalid_argument("delta_from_eps: m out of range for the shift variant");
  const double nd = static_cast<double>(n);
  const double lead = variant == ShiftVariant::SquareShift ? nd : nd - 1.0;
  const double gap = std::sqrt(lead) - std::sqrt(nd - static_cast<double>(m) - 1.0);
  return eps * gap / (6.0 * norm_constant * std::sqrt(nd));
}

double epsilon_schedule(EpsSchedule variant, double t, Index m, Index n) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("epsilon_schedule: t must be in (0, 1]");
  check_subset_size(m, n);
  const double md = static_cast<double>(m);
  const double ratio = md / static_cast<double>(n);
  const double ln = log_n(n);
  switch (variant) {
    case EpsSchedule::Cplx:
      return std::pow(t, md / (2.0 * md - 1.0)) * std::pow(ratio, (md + 2.0) / (2.0 * md - 1.0));
    case EpsSchedule::Real:
      return t * std::pow(ratio, (md + 1.0) / md);
    case EpsSchedule::CplxSmall:
      if (n < 2) throw std::invalid_argument("epsilon_schedule: cplx-small needs n >= 2");
      return std::sqrt(t) / std::pow(ln, 1.0 + 1.0 / md) * std::pow(ratio, (md + 2.0) / (2.0 * md));
    case EpsSchedule::Normal:
      return std::pow(t * ratio, md / (2.0 * md - 1.0));
    case EpsSchedule::NormalSmall:
      if (n < 2) throw std::invalid_argument("epsilon_schedule: normal-small needs n >= 2");
      return std::sqrt(t) / ln * std::sqrt(ratio);
  }
  throw std::logic_error("unreachable schedule variant");
}

double net_cardinality_bound(NetKind kind, double param, Index n) {
  switch (kind) {
    case NetKind::ComplexDisc:
      if (!(param > 0.0 && param <= 1.0))
        throw std::invalid_argument("net_cardinality_bound: delta must be in (0, 1]");
      return 9.0 / (param * param);
    case NetKind::RealInterval:
      if (!(param > 0.0 && param <= 1.0))
        throw std::invalid_argument("net_cardinality_bound: delta must be in (0, 1]");
      return 3.0 / param;
    case NetKind::Sphere: {
      if (!(param > 0.0)) throw std::invalid_argument("net_cardinality_bound: eps must be positive");
      if (n < 1) throw std::invalid_argument("net_cardinality_bound: n must be >= 1");
      const double nd = static_cast<double>(n);
      return 4.0 * nd * std::pow(1.0 + 2.0 / param, 2.0 * nd - 1.0);
    }
  }
  throw std::logic_error("unreachable net kind");
}

}  // namespace nogaps::deloc
