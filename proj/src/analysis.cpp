#include "qmcbox/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace qmcbox {

namespace {

double lambda_residual(const Spectrum& s, double e_av, double lambda) {
  double f = 0.0;
  for (double e : s.energies()) {
    const double d = e - e_av;
    f += d / (1.0 + lambda * d);
  }
  return f;
}

}  // namespace

double solve_lambda(const Spectrum& spectrum, double e_av) {
  if (!(spectrum.lowest() < e_av && e_av < spectrum.highest())) {
    throw std::invalid_argument("solve_lambda: E_av must lie strictly inside (E_1, E_N)");
  }
  constexpr double kMargin = 1e-9;
  double lo = -(1.0 - kMargin) / (spectrum.highest() - e_av);
  double hi = (1.0 - kMargin) / (e_av - spectrum.lowest());
  if (std::abs(lambda_residual(spectrum, e_av, 0.0)) < 1e-12) return 0.0;

  // f is strictly decreasing on (lo, hi), positive near lo, negative near hi.
  double mid = 0.0;
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = lambda_residual(spectrum, e_av, mid);
    if (std::abs(f) < 1e-12) break;
    (f > 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(mid))) break;
  }
  return mid;
}

std::vector<double> predicted_occupations(const Spectrum& spectrum, double e_av, double lambda) {
  const double n = static_cast<double>(spectrum.size());
  std::vector<double> out;
  out.reserve(spectrum.size());
  for (double e : spectrum.energies()) out.push_back(1.0 / (n * (1.0 + lambda * (e - e_av))));
  return out;
}

OccupationReport occupation_report(const RunResult& run, const Spectrum& spectrum, double e_av) {
  if (run.points.size() < 100) {
    throw std::invalid_argument("occupation_report: need at least 100 stored points, have " +
                                std::to_string(run.points.size()));
  }
  const std::size_t n = spectrum.size();
  const double count = static_cast<double>(run.points.size());
  std::vector<double> sum(n, 0.0);
  std::vector<double> sum_sq(n, 0.0);
  for (const auto& p : run.points) {
    if (static_cast<std::size_t>(p.size()) != n) throw std::invalid_argument("occupation_report: point length");
    for (std::size_t k = 0; k < n; ++k) {
      const double x = p[static_cast<Eigen::Index>(k)];
      sum[k] += x;
      sum_sq[k] += x * x;
    }
  }

  OccupationReport report;
  report.e_av = e_av;
  report.lambda = solve_lambda(spectrum, e_av);
  if (report.lambda != 0.0) report.pole_energy = e_av - 1.0 / report.lambda;
  report.samples = run.points.size();
  const auto predicted = predicted_occupations(spectrum, e_av, report.lambda);
  for (std::size_t k = 0; k < n; ++k) {
    OccupationRow row;
    row.level = k;
    row.energy = spectrum[k];
    row.mean = sum[k] / count;
    const double var = std::max(0.0, sum_sq[k] / count - row.mean * row.mean) * count / (count - 1.0);
    row.stderr_mean = std::sqrt(var / count);
    row.predicted = predicted[k];
    row.rel_dev = (row.mean - row.predicted) / row.predicted;
    report.rows.push_back(row);
  }
  return report;
}

void write_occupation_csv(const OccupationReport& report, std::ostream& out) {
  out << "level,E_i,mean_p,stderr,predicted_p,rel_dev\n" << std::setprecision(10);
  for (const auto& r : report.rows) {
    out << r.level + 1 << ',' << r.energy << ',' << r.mean << ',' << r.stderr_mean << ','
        << r.predicted << ',' << r.rel_dev << '\n';
  }
}

double eav_density(const Spectrum& spectrum, double e) {
  const auto& t = spectrum.energies();
  const std::size_t n = t.size();
  if (!(e >= t.front() && e < t.back())) return 0.0;

  // Triangular Curry-Schoenberg recursion; m[a] holds M(e; t_a..t_{a+k}).
  std::vector<double> m(n - 1, 0.0);
  for (std::size_t a = 0; a + 1 < n; ++a) {
    if (t[a] <= e && e < t[a + 1]) m[a] = 1.0 / (t[a + 1] - t[a]);
  }
  for (std::size_t k = 2; k < n; ++k) {
    const double kk = static_cast<double>(k);
    for (std::size_t a = 0; a + k < n; ++a) {
      m[a] = kk * ((e - t[a]) * m[a] + (t[a + k] - e) * m[a + 1]) / ((kk - 1.0) * (t[a + k] - t[a]));
    }
  }
  return std::max(0.0, m[0]);
}

double eav_density_integral(const Spectrum& spectrum, double a, double b) {
  const auto& t = spectrum.energies();
  if (b < a) return -eav_density_integral(spectrum, b, a);
  a = std::max(a, t.front());
  b = std::min(b, t.back());
  if (!(a < b)) return 0.0;

  double total = 0.0;
  double lo = a;
  for (std::size_t k = 0; k + 1 < t.size() && lo < b; ++k) {
    if (t[k + 1] <= lo) continue;
    const double hi = std::min(b, t[k + 1]);
    // Density is a polynomial of degree N-2 on each knot interval.
    total += boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double x) { return eav_density(spectrum, x); }, lo, hi);
    lo = hi;
  }
  return total;
}

double manifold_volume(const Spectrum& spectrum, double e_av) {
  const std::size_t n = spectrum.size();
  const double simplex_volume =
      std::sqrt(static_cast<double>(n)) / boost::math::factorial<double>(static_cast<unsigned>(n - 1));
  return eav_density(spectrum, e_av) * simplex_volume * spectrum.centred_norm();
}

Histogram eav_histogram(const Spectrum& spectrum, std::uint64_t draws, std::size_t bins,
                        std::uint64_t seed, unsigned workers) {
  if (bins == 0) throw std::invalid_argument("eav_histogram: bins must be positive");
  if (workers == 0) throw std::invalid_argument("eav_histogram: need at least one worker");
  Histogram h;
  h.lo = spectrum.lowest();
  h.hi = spectrum.highest();
  h.counts.assign(bins, 0);
  h.total = draws;

  const std::size_t n = spectrum.size();
  const Eigen::Map<const Eigen::VectorXd> energies(spectrum.energies().data(), static_cast<Eigen::Index>(n));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
  auto work = [&](unsigned w) {
    auto rng = substream(seed, w);
    const std::uint64_t share = draws / workers + (w < draws % workers ? 1 : 0);
    auto& counts = partial[w];
    for (std::uint64_t d = 0; d < share; ++d) {
      const double e = energies.dot(simplex_sample(n, rng));
      auto bin = static_cast<std::size_t>((e - h.lo) / (h.hi - h.lo) * static_cast<double>(bins));
      ++counts[std::min(bin, bins - 1)];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < bins; ++k) h.counts[k] += p[k];
  }
  return h;
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
  out << "bin_lo,bin_hi,count\n" << std::setprecision(10);
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << h.bin_lo(k) << ',' << h.bin_hi(k) << ',' << h.counts[k] << '\n';
  }
}

}  // namespace qmcbox
