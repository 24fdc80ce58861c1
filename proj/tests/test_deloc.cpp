#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nogaps/deloc.hpp"
#include "nogaps/linalg.hpp"
#include "nogaps/randgen.hpp"
#include "oracles.hpp"

using namespace nogaps;
using namespace nogaps::deloc;

namespace {

Vector random_unit(Index n, std::uint64_t seed) {
  auto stream = randgen::derive_stream(seed, 0);
  return randgen::sample_unit_sphere(n, Field::Complex, stream);
}

}  // namespace

TEST_CASE("profile: magnitudes, symmetry, scale invariance") {
  Vector v(2);
  v << Complex(0.6, 0), Complex(0.8, 0);
  const DelocProfile p = profile(v);
  CHECK(p.sorted_sq(0) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(p.sorted_sq(1) == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(p.linf == doctest::Approx(0.8).epsilon(1e-15));

  Vector flat = Vector::Constant(4, Complex(0.5, 0));
  const DelocProfile pf = profile(flat);
  for (Index i = 0; i < 4; ++i) CHECK(pf.sorted_sq(i) == doctest::Approx(0.25).epsilon(1e-15));

  Vector unnormalized(2);
  unnormalized << Complex(3, 0), Complex(4, 0);
  const DelocProfile pu = profile(unnormalized);
  CHECK(pu.sorted_sq(0) == doctest::Approx(p.sorted_sq(0)).epsilon(1e-14));
  CHECK(pu.linf == doctest::Approx(p.linf).epsilon(1e-14));

  CHECK_THROWS_AS((void)profile(Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("subset mass: closed cases and the exhaustive oracle") {
  Vector v(2);
  v << Complex(0.6, 0), Complex(0.8, 0);
  const DelocProfile p = profile(v);
  CHECK(min_subset_mass(p, 1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(max_subset_mass(p, 1) == doctest::Approx(0.8).epsilon(1e-15));

  const DelocProfile pf = profile(Vector::Constant(4, Complex(0.5, 0)));
  CHECK(min_subset_mass(pf, 2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  const Vector r = random_unit(8, 21);
  const DelocProfile pr = profile(r);
  CHECK(min_subset_mass(pr, 3) ==
        doctest::Approx(oracles::exhaustive_min_subset_mass(r, 3)).epsilon(1e-13));
  CHECK(max_subset_mass(pr, 3) ==
        doctest::Approx(oracles::exhaustive_max_subset_mass(r, 3)).epsilon(1e-13));

  CHECK_THROWS_AS((void)min_subset_mass(pr, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)min_subset_mass(pr, 9), std::invalid_argument);
}

TEST_CASE("subset mass: monotone in m, complementary identity, full mass") {
  const Vector r = random_unit(12, 22);
  const DelocProfile p = profile(r);
  double prev = 0.0;
  for (Index m = 1; m <= 12; ++m) {
    const double mass = min_subset_mass(p, m);
    CHECK(mass >= prev);
    prev = mass;
  }
  CHECK(min_subset_mass(p, 12) == doctest::Approx(1.0).epsilon(1e-12));
  for (Index m = 1; m < 12; ++m) {
    const double lo = min_subset_mass(p, m);
    const double hi = max_subset_mass(p, 12 - m);
    CHECK(lo * lo + hi * hi == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("loc_event: canonical cases and double-loop equivalence") {
  // identity matrix: eigenvectors are the standard basis
  const auto spec = linalg::eigen_decompose(Matrix::Identity(4, 4), 1e-10);
  const LocResult hit = loc_event(spec, 1, 0.5);
  CHECK(hit.holds);
  REQUIRE(hit.witness.has_value());
  CHECK(hit.witness->subset.size() == 1);

  const LocResult full = loc_event(spec, 4, 0.5);
  CHECK_FALSE(full.holds);

  // random complex Gaussian: nonvanishing at tiny delta
  randgen::MatrixEnsemble ens{Field::Complex, 30, 30,
                              randgen::EntryDistribution::standard_gaussian()};
  auto stream = randgen::derive_stream(23, 0);
  const auto rspec = linalg::eigen_decompose(randgen::sample_matrix(ens, stream), 1e-8);
  CHECK_FALSE(loc_event(rspec, 3, 1e-9).holds);

  // equivalence with a literal double loop over eigenvectors
  for (Index m : {Index(1), Index(5), Index(15)}) {
    for (double delta : {0.05, 0.2, 0.45}) {
      bool literal = false;
      for (const auto& pair : rspec.pairs) {
        if (min_subset_mass(profile(pair.vector), m) < delta) literal = true;
      }
      CHECK(loc_event(rspec, m, delta).holds == literal);
    }
  }
}

TEST_CASE("loc_event witness reports the m smallest coordinates") {
  linalg::Spectrum spec;
  Vector v(4);
  v << Complex(0.5, 0), Complex(0.1, 0), Complex(0.6, 0), Complex(0.1, 0);
  v.normalize();
  spec.pairs.push_back({Complex(1, 0), v, 0.0});
  spec.norm_estimate = 1.0;
  const LocResult r = loc_event(spec, 2, 0.5);
  REQUIRE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->eigen_index == 0);
  REQUIRE(r.witness->subset.size() == 2);
  // ties between the two 0.1 coordinates break to the lowest indices 1, 3
  CHECK(r.witness->subset[0] == 1);
  CHECK(r.witness->subset[1] == 3);
}

TEST_CASE("approx_loc_event: exact eigenpairs, flat vectors, recomputation") {
  Matrix d(2, 2);
  d << Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(3, 0);
  ParameterSet ps;
  ps.n = 2;
  ps.m = 1;
  ps.delta = 0.49;
  ps.norm_constant = 1.0;
  ps.validate();
  // e1 is an exact eigenvector for lambda0 = 2 and has a zero coordinate
  CHECK(approx_loc_event(d, Vector::Unit(2, 0), Complex(2, 0), ps));

  // flat vector: min subset mass sqrt(m/n) = 0.5 >= delta
  ParameterSet flat_ps;
  flat_ps.n = 16;
  flat_ps.m = 4;
  flat_ps.delta = 0.49;
  const Vector flat = Vector::Constant(16, Complex(0.25, 0));
  CHECK_FALSE(approx_loc_event(Matrix::Zero(16, 16), flat, Complex(0, 0), flat_ps));

  // random instances agree with direct recomputation of both inequalities,
  // square and rectangular
  for (Index rows : {Index(8), Index(7)}) {
    randgen::MatrixEnsemble ens{Field::Complex, rows, 8,
                                randgen::EntryDistribution::standard_gaussian()};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto stream = randgen::derive_stream(700 + seed, static_cast<std::uint64_t>(rows));
      const Matrix a = randgen::sample_matrix(ens, stream);
      const Vector v = randgen::sample_unit_sphere(8, Field::Complex, stream);
      ParameterSet rps;
      rps.n = 8;
      rps.m = 2;
      rps.delta = 0.05 + 0.4 * stream.next_uniform();
      const Complex lambda0(stream.next_normal(), stream.next_normal());
      Matrix shifted = a;
      for (Index i = 0; i < std::min(rows, Index(8)); ++i) shifted(i, i) -= lambda0;
      const bool expected =
          (shifted * v).norm() <= rps.delta * rps.norm_constant * std::sqrt(8.0) &&
          min_subset_mass(profile(v), rps.m) < rps.delta;
      CHECK(approx_loc_event(a, v, lambda0, rps) == expected);
    }
  }
}

TEST_CASE("ParameterSet validation enforces the stated ranges") {
  ParameterSet ok;
  ok.t = 0.5;
  ok.m = 2;
  ok.n = 10;
  ok.norm_constant = 1.5;
  ok.delta = 0.3;
  ok.eps = 0.1;
  CHECK_NOTHROW(ok.validate());
  auto broken = ok;
  broken.t = 0.0;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  broken = ok;
  broken.m = 11;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  broken = ok;
  broken.norm_constant = 0.5;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  broken = ok;
  broken.delta = 0.5;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  broken = ok;
  broken.eps = 0.0;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("deloc_lower_bound: formula evaluation") {
  CHECK(deloc_lower_bound(DelocBound::CplxLargeM, 0.25, 100, 10000, 1.0) ==
        doctest::Approx(5e-4).epsilon(1e-13));
  CHECK(deloc_lower_bound(DelocBound::RealLargeM, 0.5, 100, 1000, 1.0) ==
        doctest::Approx(5e-3).epsilon(1e-13));
  // m = n with t = 1 and c = 1 gives exactly 1 for the log-free variants
  for (auto theorem :
       {DelocBound::CplxLargeM, DelocBound::RealLargeM, DelocBound::NormalLargeM}) {
    CHECK(deloc_lower_bound(theorem, 1.0, 16, 16, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  // the constant scales linearly
  CHECK(deloc_lower_bound(DelocBound::CplxSmallM, 0.5, 2, 100, 2.0) ==
        doctest::Approx(2.0 * deloc_lower_bound(DelocBound::CplxSmallM, 0.5, 2, 100, 1.0))
            .epsilon(1e-15));
}

TEST_CASE("deloc_lower_bound: range violations name the constraint") {
  // m below log^2 n for a large-m variant; the message names the constraint
  bool threw = false;
  try {
    (void)deloc_lower_bound(DelocBound::CplxLargeM, 0.5, 2, 1000, 1.0);
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("log^2") != std::string::npos);
  }
  CHECK(threw);
  // m above log^2 n for a small-m variant
  CHECK_THROWS_AS((void)deloc_lower_bound(DelocBound::RealSmallM, 0.5, 500, 1000, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)deloc_lower_bound(DelocBound::MinCoord, 1.5, 1, 100, 1.0),
                  std::invalid_argument);
  CHECK(deloc_lower_bound(DelocBound::MinCoord, 0.5, 1, 100, 1.0) > 0.0);
}

TEST_CASE("delta_from_eps: arithmetic, boundary, linearity") {
  CHECK(delta_from_eps(1.0, 1.0, 100, 36, ShiftVariant::SquareShift) ==
        doctest::Approx(0.03437910111343713).epsilon(1e-13));
  // m = n - 1 collapses sqrt(n - m - 1) to zero
  CHECK(delta_from_eps(0.7, 1.0, 25, 24, ShiftVariant::SquareShift) ==
        doctest::Approx(0.7 / 6.0).epsilon(1e-15));
  // linear in eps, exactly for power-of-two scaling
  const double one = delta_from_eps(0.3, 2.0, 50, 10, ShiftVariant::RectShift);
  const double two = delta_from_eps(0.6, 2.0, 50, 10, ShiftVariant::RectShift);
  CHECK(two == 2.0 * one);
  CHECK_THROWS_AS((void)delta_from_eps(1.0, 1.0, 10, 10, ShiftVariant::SquareShift),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)delta_from_eps(1.0, 1.0, 10, 9, ShiftVariant::RectShift),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)delta_from_eps(1.0, 0.5, 10, 3, ShiftVariant::SquareShift),
                  std::invalid_argument);
}

TEST_CASE("delta_from_eps satisfies its defining identity") {
  for (auto variant : {ShiftVariant::SquareShift, ShiftVariant::RectShift}) {
    for (Index n : {Index(20), Index(100)}) {
      for (Index m : {Index(3), Index(10), Index(n - 2)}) {
        const double eps = 0.37;
        const double big_m = 1.5;
        const double delta = delta_from_eps(eps, big_m, n, m, variant);
        const double lead = variant == ShiftVariant::SquareShift
                                ? static_cast<double>(n)
                                : static_cast<double>(n) - 1.0;
        const double rhs = eps * (std::sqrt(lead) -
                                  std::sqrt(static_cast<double>(n - m) - 1.0));
        CHECK(6.0 * delta * big_m * std::sqrt(static_cast<double>(n)) ==
              doctest::Approx(rhs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("epsilon_schedule: frozen evaluations and m = n") {
  // 0.5^{4/7} * 0.25^{6/7} = 2^{-16/7}
  CHECK(epsilon_schedule(EpsSchedule::Cplx, 0.5, 4, 16) ==
        doctest::Approx(std::exp2(-16.0 / 7.0)).epsilon(1e-13));
  // 0.5 * 0.25^{5/4} = 2^{-3.5}
  CHECK(epsilon_schedule(EpsSchedule::Real, 0.5, 4, 16) ==
        doctest::Approx(std::exp2(-3.5)).epsilon(1e-13));
  for (auto variant : {EpsSchedule::Cplx, EpsSchedule::Real, EpsSchedule::Normal}) {
    CHECK(epsilon_schedule(variant, 1.0, 16, 16) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS((void)epsilon_schedule(EpsSchedule::Cplx, 0.0, 4, 16), std::invalid_argument);
  CHECK_THROWS_AS((void)epsilon_schedule(EpsSchedule::Cplx, 0.5, 17, 16), std::invalid_argument);
}

TEST_CASE("epsilon_schedule satisfies each defining identity") {
  const double t = 0.37;
  for (Index n : {Index(16), Index(100)}) {
    for (Index m : {Index(2), Index(5), Index(n / 2)}) {
      const double nd = static_cast<double>(n), md = static_cast<double>(m);
      const double ln = std::log(nd);
      const double cplx = epsilon_schedule(EpsSchedule::Cplx, t, m, n);
      CHECK(std::pow(nd / md, 1.0 + 2.0 / md) * std::pow(cplx, 2.0 - 1.0 / md) ==
            doctest::Approx(t).epsilon(1e-12));
      const double real = epsilon_schedule(EpsSchedule::Real, t, m, n);
      CHECK(real * std::pow(nd / md, (md + 1.0) / md) == doctest::Approx(t).epsilon(1e-12));
      const double cplx_small = epsilon_schedule(EpsSchedule::CplxSmall, t, m, n);
      CHECK(std::pow(nd / md, 1.0 + 2.0 / md) * std::pow(ln, 2.0 + 2.0 / md) * cplx_small *
                cplx_small ==
            doctest::Approx(t).epsilon(1e-12));
      const double normal = epsilon_schedule(EpsSchedule::Normal, t, m, n);
      CHECK((nd / md) * std::pow(normal, (2.0 * md - 1.0) / md) ==
            doctest::Approx(t).epsilon(1e-12));
      const double normal_small = epsilon_schedule(EpsSchedule::NormalSmall, t, m, n);
      CHECK(normal_small * normal_small * (nd / md) * ln * ln ==
            doctest::Approx(t).epsilon(1e-12));
    }
  }
}

TEST_CASE("net_cardinality_bound evaluates the cited bounds") {
  CHECK(net_cardinality_bound(NetKind::ComplexDisc, 1.0) == doctest::Approx(9.0));
  CHECK(net_cardinality_bound(NetKind::RealInterval, 0.5) == doctest::Approx(6.0));
  CHECK(net_cardinality_bound(NetKind::Sphere, 2.0, 1) == doctest::Approx(8.0));
  CHECK_THROWS_AS((void)net_cardinality_bound(NetKind::ComplexDisc, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)net_cardinality_bound(NetKind::Sphere, -1.0, 2), std::invalid_argument);
}
