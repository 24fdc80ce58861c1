#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "nogaps/randgen.hpp"

using namespace nogaps;
using namespace nogaps::randgen;

TEST_CASE("derive_stream is deterministic and injective on the index") {
  SeedStream a = derive_stream(7, 3);
  SeedStream b = derive_stream(7, 3);
  CHECK(a == b);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

  SeedStream c = derive_stream(7, 4);
  SeedStream d = derive_stream(8, 3);
  CHECK_FALSE(derive_stream(7, 3) == c);
  CHECK_FALSE(derive_stream(7, 3) == d);
}

TEST_CASE("uniform outputs pass a chi-square uniformity test") {
  SeedStream s = derive_stream(7, 0);
  constexpr int kBins = 33;  // 32 degrees of freedom
  constexpr int kDraws = 100000;
  std::array<int, kBins> counts{};
  for (int i = 0; i < kDraws; ++i) {
    const double u = s.next_uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    ++counts[static_cast<std::size_t>(u * kBins)];
  }
  const double expected = static_cast<double>(kDraws) / kBins;
  double stat = 0.0;
  for (int c : counts) stat += (c - expected) * (c - expected) / expected;
  // 0.999 quantile of chi-square with 32 degrees of freedom
  CHECK(stat < 62.487219057088474);
}

TEST_CASE("entry distributions have the stated moments") {
  constexpr int kDraws = 100000;
  const double mean_tol = 4.0 / std::sqrt(static_cast<double>(kDraws));
  const double var_tol = 5.0 / std::sqrt(static_cast<double>(kDraws));
  int index = 0;
  for (const auto& dist : {EntryDistribution::standard_gaussian(), EntryDistribution::rademacher(),
                           EntryDistribution::symmetric_uniform()}) {
    CAPTURE(index);
    SeedStream s = derive_stream(11, static_cast<std::uint64_t>(index++));
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < kDraws; ++i) {
      const double x = s.next_entry(dist);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / kDraws;
    const double var = sum_sq / kDraws - mean * mean;
    CHECK(std::abs(mean) <= mean_tol);
    CHECK(std::abs(var - 1.0) <= var_tol);
    CHECK(dist.subgaussian_bound > 0.0);
    CHECK(std::isfinite(dist.subgaussian_bound));
  }
}

TEST_CASE("symmetric uniform is supported on [-sqrt(3), sqrt(3)]") {
  SeedStream s = derive_stream(5, 0);
  const auto dist = EntryDistribution::symmetric_uniform();
  for (int i = 0; i < 10000; ++i) {
    const double x = s.next_entry(dist);
    CHECK(std::abs(x) <= std::sqrt(3.0) + 1e-15);
  }
}

TEST_CASE("sample_matrix: rademacher complex support and determinism") {
  MatrixEnsemble ens{Field::Complex, 2, 2, EntryDistribution::rademacher()};
  SeedStream s = derive_stream(3, 0);
  SeedStream s2 = derive_stream(3, 0);
  const Matrix a = sample_matrix(ens, s);
  const Matrix b = sample_matrix(ens, s2);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      CHECK(std::abs(std::abs(a(i, j).real()) - 1.0) == 0.0);
      CHECK(std::abs(std::abs(a(i, j).imag()) - 1.0) == 0.0);
      CHECK(a(i, j) == b(i, j));  // bit-identical
    }
  }
}

TEST_CASE("sample_matrix: gaussian entry means at CLT tolerance") {
  MatrixEnsemble ens{Field::Complex, 100, 100, EntryDistribution::standard_gaussian()};
  SeedStream s = derive_stream(17, 0);
  const Matrix a = sample_matrix(ens, s);
  const double tol = 4.0 / std::sqrt(1e4);
  CHECK(std::abs(a.real().mean()) <= tol);
  CHECK(std::abs(a.imag().mean()) <= tol);
}

TEST_CASE("sample_matrix: real field has exactly zero imaginary parts") {
  MatrixEnsemble ens{Field::Real, 50, 40, EntryDistribution::standard_gaussian()};
  SeedStream s = derive_stream(23, 5);
  const Matrix a = sample_matrix(ens, s);
  CHECK(a.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sample_matrix rejects zero dimensions") {
  MatrixEnsemble ens{Field::Real, 0, 3, EntryDistribution::standard_gaussian()};
  SeedStream s = derive_stream(1, 0);
  CHECK_THROWS_AS((void)sample_matrix(ens, s), std::invalid_argument);
}

TEST_CASE("sample_unit_sphere: normalization and edge cases") {
  SeedStream s = derive_stream(29, 0);
  const Vector one = sample_unit_sphere(1, Field::Complex, s);
  CHECK(std::abs(std::abs(one(0)) - 1.0) <= 1e-15);

  const Vector big = sample_unit_sphere(1000, Field::Complex, s);
  CHECK(std::abs(big.norm() - 1.0) <= 1e-14);

  const Vector real_vec = sample_unit_sphere(10, Field::Real, s);
  CHECK(real_vec.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS((void)sample_unit_sphere(0, Field::Real, s), std::invalid_argument);
}

TEST_CASE("|v_1|^2 of a complex 2-sphere vector is uniform") {
  // for n = 2 the squared first coordinate is Beta(1,1)
  constexpr int kDraws = 100000;
  std::vector<double> sample;
  sample.reserve(kDraws);
  for (int t = 0; t < kDraws; ++t) {
    SeedStream s = derive_stream(31, static_cast<std::uint64_t>(t));
    const Vector v = sample_unit_sphere(2, Field::Complex, s);
    sample.push_back(std::norm(v(0)));
  }
  std::sort(sample.begin(), sample.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    ks = std::max(ks, std::abs((i + 1.0) / kDraws - sample[i]));
    ks = std::max(ks, std::abs(static_cast<double>(i) / kDraws - sample[i]));
  }
  CHECK(ks < 0.02);
}
