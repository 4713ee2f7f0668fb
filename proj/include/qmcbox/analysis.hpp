#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qmcbox/sampler.hpp"
#include "qmcbox/spectrum.hpp"

namespace qmcbox {

/// Root of f(lambda) = sum_i (E_i - E_av) / (1 + lambda (E_i - E_av)) on the
/// interval where every denominator is positive. At the root the mean
/// occupations 1 / (N (1 + lambda (E_i - E_av))) are normalised and carry
/// energy E_av.
double solve_lambda(const Spectrum& spectrum, double e_av);

std::vector<double> predicted_occupations(const Spectrum& spectrum, double e_av, double lambda);

struct OccupationRow {
  std::size_t level = 0;  // 0-based
  double energy = 0.0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  double predicted = 0.0;
  double rel_dev = 0.0;  // (mean - predicted) / predicted
};

struct OccupationReport {
  double e_av = 0.0;
  double lambda = 0.0;
  /// E_av - 1/lambda; empty when lambda == 0.
  std::optional<double> pole_energy;
  std::size_t samples = 0;
  std::vector<OccupationRow> rows;
};

/// Needs at least 100 stored accepted points.
OccupationReport occupation_report(const RunResult& run, const Spectrum& spectrum, double e_av);
void write_occupation_csv(const OccupationReport& report, std::ostream& out);

/// Density of sum_i E_i p_i for p uniform on the simplex: the normalised
/// B-spline of degree N-2 on the knots E_1..E_N. Zero outside (E_1, E_N).
double eav_density(const Spectrum& spectrum, double e);

/// Integral of eav_density over [a, b] (Gauss-Legendre per knot interval).
double eav_density_integral(const Spectrum& spectrum, double a, double b);

/// (N-2)-volume of the polytope at energy E_av, from the simplex slice
/// density: V = density(E_av) * sqrt(N) / (N-1)! * |E - mean(E)|.
double manifold_volume(const Spectrum& spectrum, double e_av);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  double bin_lo(std::size_t k) const { return lo + bin_width() * static_cast<double>(k); }
  double bin_hi(std::size_t k) const { return k + 1 == counts.size() ? hi : bin_lo(k + 1); }
};

/// Histogram over [E_1, E_N] of sum_i E_i p_i with p from simplex_sample.
Histogram eav_histogram(const Spectrum& spectrum, std::uint64_t draws, std::size_t bins,
                        std::uint64_t seed, unsigned workers = 1);

/// bin_lo,bin_hi,count
void write_histogram_csv(const Histogram& h, std::ostream& out);

}  // namespace qmcbox
