#include "qmcbox/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace qmcbox::stats {

double chi_square_critical(double dof, double alpha) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double chi_square_p_value(double statistic, double dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(statistic, 0.0)));
}

ChiSquare chi_square_gof(std::span<const double> observed, std::span<const double> expected,
                         double min_expected, int fitted_parameters) {
  if (observed.size() != expected.size()) throw std::invalid_argument("chi_square_gof: size mismatch");
  std::vector<double> obs;
  std::vector<double> expc;
  double o_acc = 0.0;
  double e_acc = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    o_acc += observed[k];
    e_acc += expected[k];
    if (e_acc >= min_expected) {
      obs.push_back(o_acc);
      expc.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (expc.empty()) {
      obs.push_back(o_acc);
      expc.push_back(e_acc);
    } else {
      obs.back() += o_acc;
      expc.back() += e_acc;
    }
  }
  ChiSquare out;
  out.bins_used = obs.size();
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const double d = obs[k] - expc[k];
    out.statistic += d * d / expc[k];
  }
  out.dof = static_cast<double>(obs.size()) - 1.0 - fitted_parameters;
  if (out.dof < 1.0) throw std::invalid_argument("chi_square_gof: not enough populated bins");
  out.p_value = chi_square_p_value(out.statistic, out.dof);
  return out;
}

ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                double min_combined) {
  if (a.size() != b.size()) throw std::invalid_argument("chi_square_two_sample: size mismatch");
  double na = 0.0;
  double nb = 0.0;
  for (auto x : a) na += static_cast<double>(x);
  for (auto x : b) nb += static_cast<double>(x);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi_square_two_sample: empty sample");
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);

  ChiSquare out;
  double pa = 0.0;
  double pb = 0.0;
  auto flush = [&] {
    const double d = ka * pa - kb * pb;
    out.statistic += d * d / (pa + pb);
    ++out.bins_used;
    pa = pb = 0.0;
  };
  for (std::size_t k = 0; k < a.size(); ++k) {
    pa += static_cast<double>(a[k]);
    pb += static_cast<double>(b[k]);
    if (pa + pb >= min_combined) flush();
  }
  if (pa + pb > 0.0) flush();
  out.dof = static_cast<double>(out.bins_used) - 1.0;
  if (out.dof < 1.0) throw std::invalid_argument("chi_square_two_sample: not enough populated bins");
  out.p_value = chi_square_p_value(out.statistic, out.dof);
  return out;
}

double ks_uniform_statistic(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("ks_uniform_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double x = std::clamp(samples[k], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(k) + 1.0) / n - x, x - static_cast<double>(k) / n});
  }
  return d;
}

double ks_p_value(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  // Stephens' finite-n correction to the asymptotic argument.
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double z_score(double a, double sa, double b, double sb) {
  const double s = std::sqrt(sa * sa + sb * sb);
  if (s == 0.0) return a == b ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a - b) / s;
}

}  // namespace qmcbox::stats
