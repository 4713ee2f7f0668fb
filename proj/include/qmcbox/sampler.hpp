#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "qmcbox/boxes.hpp"
#include "qmcbox/polytope.hpp"

namespace qmcbox {

/// Independent generator for substream `index` of a run seeded with `seed`.
/// Both words go through splitmix64 before seeding the engine.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

struct RunOptions {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// Accepted points kept in memory; counting continues past the cap.
  std::size_t store_cap = 1'000'000;
};

struct RunResult {
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  double rate = 0.0;
  double rate_stderr = 0.0;  // sqrt(r (1 - r) / n_s)
  std::vector<PointStd> points;
  bool storage_truncated = false;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double wall_seconds = 0.0;
};

/// Rejection sampling: uniform draws in the box, mapped to standard
/// coordinates, kept iff every occupation is non-negative. The result
/// depends only on (box, trials, seed, workers); stored points are ordered by
/// worker, then by draw.
RunResult run(const EnclosingBox& box, const Polytope& polytope, const RunOptions& options);

struct Amplitudes {
  std::vector<std::complex<double>> c;
};

/// c_k = sqrt(p_k) exp(i phi_k) with phases uniform on [0, 2 pi).
Amplitudes attach_phases(const PointStd& point, std::mt19937_64& rng);

/// Uniform point on the probability simplex {p >= 0, sum p = 1} from
/// normalised exponential spacings.
PointStd simplex_sample(std::size_t n, std::mt19937_64& rng);

/// p_1..p_N header, one accepted point per row.
void write_points_csv(const RunResult& result, std::size_t levels, std::ostream& out);

}  // namespace qmcbox
