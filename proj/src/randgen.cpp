#include "nogaps/randgen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nogaps::randgen {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += kGolden);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

EntryDistribution EntryDistribution::standard_gaussian() {
  return {EntryKind::StandardGaussian, std::numbers::sqrt2};
}

EntryDistribution EntryDistribution::rademacher() {
  // P(|X| > t) jumps to 0 at t = 1, so B = 1/sqrt(ln 2) makes 2e^{-t^2/B^2} >= 1 below.
  return {EntryKind::Rademacher, 1.0 / std::sqrt(std::numbers::ln2)};
}

EntryDistribution EntryDistribution::symmetric_uniform() {
  return {EntryKind::SymmetricUniform, std::sqrt(3.0 / std::numbers::ln2)};
}

EntryDistribution EntryDistribution::from_name(std::string_view name) {
  if (name == "gaussian") return standard_gaussian();
  if (name == "rademacher") return rademacher();
  if (name == "uniform") return symmetric_uniform();
  throw std::invalid_argument("unknown entry distribution: " + std::string(name));
}

std::string_view EntryDistribution::name() const {
  switch (kind) {
    case EntryKind::StandardGaussian: return "gaussian";
    case EntryKind::Rademacher: return "rademacher";
    case EntryKind::SymmetricUniform: return "uniform";
  }
  return "unknown";
}

SeedStream::SeedStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  // Absorb both inputs before expanding, so streams differ in all state words
  // even when the raw seeds differ in a single bit.
  std::uint64_t x = master_seed;
  (void)splitmix64(x);
  x ^= stream_index + kGolden + (x << 6) + (x >> 2);
  (void)splitmix64(x);
  for (auto& word : state_) word = splitmix64(x);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t SeedStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeedStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeedStream::next_normal() {
  if (has_pending_normal_) {
    has_pending_normal_ = false;
    return pending_normal_;
  }
  // Box-Muller with a fixed draw count: exactly two uniforms per pair.
  const double u1 = 1.0 - next_uniform();  // (0, 1], keeps the log finite
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  pending_normal_ = r * std::sin(angle);
  has_pending_normal_ = true;
  return r * std::cos(angle);
}

double SeedStream::next_entry(const EntryDistribution& dist) {
  switch (dist.kind) {
    case EntryKind::StandardGaussian:
      return next_normal();
    case EntryKind::Rademacher:
      return (next_u64() >> 63) ? 1.0 : -1.0;
    case EntryKind::SymmetricUniform:
      return (2.0 * next_uniform() - 1.0) * std::numbers::sqrt3;
  }
  throw std::logic_error("unreachable entry kind");
}

SeedStream derive_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
  return SeedStream(master_seed, trial_index);
}

Matrix sample_matrix(const MatrixEnsemble& ensemble, SeedStream& stream) {
  if (ensemble.rows < 1 || ensemble.cols < 1)
    throw std::invalid_argument("sample_matrix: dimensions must be positive");
  Matrix a(ensemble.rows, ensemble.cols);
  for (Index i = 0; i < ensemble.rows; ++i) {
    for (Index j = 0; j < ensemble.cols; ++j) {
      const double re = stream.next_entry(ensemble.entry_dist);
      const double im =
          ensemble.field == Field::Complex ? stream.next_entry(ensemble.entry_dist) : 0.0;
      a(i, j) = Complex(re, im);
    }
  }
  return a;
}

Vector sample_unit_sphere(Index n, Field field, SeedStream& stream) {
  if (n < 1) throw std::invalid_argument("sample_unit_sphere: dimension must be positive");
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = stream.next_normal();
    const double im = field == Field::Complex ? stream.next_normal() : 0.0;
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

}  // namespace nogaps::randgen
