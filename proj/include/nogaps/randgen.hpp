#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "nogaps/common.hpp"

namespace nogaps::randgen {

enum class EntryKind { StandardGaussian, Rademacher, SymmetricUniform };

/// Mean-zero, unit-variance scalar entry law. `subgaussian_bound` is the
/// analytic moment B satisfying P(|X| > t) <= 2 exp(-t^2 / B^2); it is
/// recorded per distribution but nothing downstream consumes it.
struct EntryDistribution {
  EntryKind kind = EntryKind::StandardGaussian;
  double subgaussian_bound = 0.0;

  static EntryDistribution standard_gaussian();
  static EntryDistribution rademacher();
  static EntryDistribution symmetric_uniform();  // uniform on [-sqrt(3), sqrt(3)]

  /// Accepts "gaussian", "rademacher", "uniform". Throws on anything else.
  static EntryDistribution from_name(std::string_view name);
  std::string_view name() const;
};

struct MatrixEnsemble {
  Field field = Field::Complex;
  Index rows = 0;
  Index cols = 0;
  EntryDistribution entry_dist;
};

/// Deterministic counter-derived random stream (xoshiro256++ seeded through
/// splitmix64 from the (master_seed, stream_index) pair). Streams are value
/// types: copying forks the state, and distinct pairs give independent
/// streams, so trials can run in any order or in parallel with identical
/// results. A single stream must not be shared across concurrent samplers.
class SeedStream {
 public:
  SeedStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();
  double next_uniform();  // [0, 1), 53-bit mantissa
  double next_normal();   // Box-Muller; always consumes uniforms in pairs
  double next_entry(const EntryDistribution& dist);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  bool operator==(const SeedStream&) const = default;

 private:
  std::uint64_t master_seed_ = 0;
  std::uint64_t stream_index_ = 0;
  std::array<std::uint64_t, 4> state_{};
  double pending_normal_ = 0.0;
  bool has_pending_normal_ = false;
};

/// Pure function of its inputs; distinct trial indices give distinct streams.
SeedStream derive_stream(std::uint64_t master_seed, std::uint64_t trial_index);

/// Samples an N x n matrix. Draw order is part of the persisted contract:
/// entries row-major, and for complex ensembles the real part of each entry
/// is drawn before its imaginary part (2Nn scalar draws total). Real
/// ensembles produce exactly zero imaginary parts.
Matrix sample_matrix(const MatrixEnsemble& ensemble, SeedStream& stream);

/// Uniform unit-sphere vector, obtained by normalizing a standard real or
/// complex Gaussian vector. Coordinates drawn in index order, real part
/// before imaginary part.
Vector sample_unit_sphere(Index n, Field field, SeedStream& stream);

}  // namespace nogaps::randgen
