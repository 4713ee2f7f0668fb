#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qmcbox::stats {

struct ChiSquare {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  std::size_t bins_used = 0;
};

/// Upper-tail critical value of the chi-square distribution.
double chi_square_critical(double dof, double alpha);
double chi_square_p_value(double statistic, double dof);

/// Goodness of fit against expected counts. Adjacent bins are pooled until
/// each pooled bin expects at least `min_expected` events.
ChiSquare chi_square_gof(std::span<const double> observed, std::span<const double> expected,
                         double min_expected = 5.0, int fitted_parameters = 0);

/// Homogeneity of two histograms over the same bins (unequal sample sizes).
/// Bins that are empty in both samples are skipped.
ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                double min_combined = 10.0);

/// One-sample Kolmogorov-Smirnov distance from the uniform law on [0, 1].
double ks_uniform_statistic(std::vector<double> samples);
/// Asymptotic Kolmogorov survival function P(D_n > d).
double ks_p_value(double d, std::size_t n);

/// Number of standard errors separating two estimates.
double z_score(double a, double sa, double b, double sb);

}  // namespace qmcbox::stats
