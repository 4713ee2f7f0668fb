// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// N = 12 acceptance-rate rows run only with --long or QMCBOX_LONG=1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qmcbox/analysis.hpp"
#include "qmcbox/boxes.hpp"
#include "qmcbox/frames.hpp"
#include "qmcbox/sampler.hpp"
#include "qmcbox/stats.hpp"

using namespace qmcbox;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
  void info(const std::string& what) { details.push_back("info " + what); }
};

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream s;
  s << std::setprecision(6);
  (s << ... << args);
  return s.str();
}

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

RunResult sample(const EnclosingBox& box, const Polytope& p, std::uint64_t trials, std::uint64_t seed,
                 std::size_t cap = 0) {
  RunOptions o;
  o.trials = trials;
  o.seed = seed;
  o.store_cap = cap;
  return run(box, p, o);
}

EnclosingBox r_box(const Polytope& p) { return build_rect_box(p, unit_inputs(p.levels(), r_prescription(p))); }
EnclosingBox nr_box(const Polytope& p) { return build_nr_box(p, nr_prescription(p)); }

// 1 ---------------------------------------------------------------------------
Outcome table1_golden() {
  Outcome o;
  const Polytope p(reference_spectrum10(), -0.3);
  const auto report = sequence_search_exhaustive(p, 1e-9);
  const std::array<std::uint64_t, 10> degeneracy = {6, 1872, 6192, 6192, 7056, 7056, 6912, 6480, 4320, 72};
  for (std::size_t g = 0; g < 10; ++g) {
    const double expected = g == 0 ? 0.0992 : 0.0848;
    o.expect(rel_close(report.groups[g].min_volume, expected, 0.005),
             str("group ", g + 1, " V = ", report.groups[g].min_volume, " vs ", expected, " (0.5%)"));
  }
  for (std::size_t g = 0; g < 10; ++g) {
    o.expect(report.groups[g].degeneracy == degeneracy[g],
             str("group ", g + 1, " degeneracy ", report.groups[g].degeneracy, " vs ", degeneracy[g]));
  }
  const auto loose = sequence_search_exhaustive(p, 1e-4);
  std::string alt = "ties within 1e-4 counted over full orderings (x2!):";
  for (const auto& g : loose.groups) alt += str(" ", g.degeneracy * 2);
  o.info(alt);
  return o;
}

// 2 ---------------------------------------------------------------------------
Outcome table2_golden() {
  Outcome o;
  const auto s = reference_spectrum10();
  const Polytope centre(s, 0.0);
  const auto scan = nr_vertex_scan(centre);
  o.expect(std::abs(scan.ratio - 3.106) <= 0.001, str("R_vol = ", scan.ratio, " vs 3.106 +- 0.001"));
  o.expect(rel_close(scan.v_min, 9.93e-3, 0.005), str("V_min = ", scan.v_min, " vs 9.93e-3 (0.5%)"));
  const bool edge_form = std::all_of(scan.argmin.begin(), scan.argmin.end(),
                                     [](const Vertex& v) { return v.i == 0 || v.j == 9; });
  o.expect(scan.argmin.size() == 9 && edge_form,
           str(scan.argmin.size(), " minimising origins, all v(1,j) or v(i,10): ", edge_form));
  o.expect(scan.argmax.size() == 1 && scan.argmax[0] == centre.vertex(4, 5),
           str("maximiser ", scan.argmax.empty() ? "none" : scan.argmax[0].label(), ", count ",
               scan.argmax.size()));

  struct Row {
    double e_av, v_min, r_vol;
  };
  const std::array<Row, 5> rows = {{{-0.04, 9.86e-3, 3.11},
                                    {-0.08, 9.64e-3, 3.11},
                                    {-0.10, 9.27e-3, 2.97},
                                    {-0.46, 8.20e-3, 2.55},
                                    {-0.5, 4.60e-3, 1.88}}};
  for (const auto& row : rows) {
    const auto r = nr_vertex_scan(Polytope(s, row.e_av));
    o.expect(rel_close(r.v_min, row.v_min, 0.01), str("E_av ", row.e_av, ": V_min ", r.v_min, " vs ", row.v_min));
    o.expect(rel_close(r.ratio, row.r_vol, 0.01), str("E_av ", row.e_av, ": R_vol ", r.ratio, " vs ", row.r_vol));
  }
  return o;
}

// 3 ---------------------------------------------------------------------------
struct RateMeasurement {
  double rate = 0.0;
  double stderr_rate = 0.0;
  double predicted = 0.0;
};

RateMeasurement measure(const EnclosingBox& box, const Polytope& p, std::uint64_t trials, std::uint64_t seed) {
  const auto res = sample(box, p, trials, seed);
  return {res.rate, res.rate_stderr, manifold_volume(p.spectrum(), p.e_av()) / box.volume};
}

// Orientation-averaged isotropic baseline (8 random input sets).
RateMeasurement measure_baseline(const Polytope& p, std::uint64_t trials, std::uint64_t seed) {
  constexpr std::uint64_t kOrientations = 8;
  std::uint64_t accepted = 0;
  double predicted = 0.0;
  for (std::uint64_t k = 0; k < kOrientations; ++k) {
    auto rng = substream(seed, 1000 + k);
    const auto box = build_rect_box(p, random_sphere_inputs(p.levels(), p.dimension(), rng));
    accepted += sample(box, p, trials / kOrientations, seed + 7919 * (k + 1)).accepted;
    predicted += manifold_volume(p.spectrum(), p.e_av()) / box.volume / kOrientations;
  }
  const double n = static_cast<double>(trials / kOrientations * kOrientations);
  const double r = static_cast<double>(accepted) / n;
  return {r, std::sqrt(r * (1 - r) / n), predicted};
}

Outcome table3_rates(bool long_run) {
  Outcome o;
  struct Row {
    std::size_t n;
    double ratio;
    double e_av;  // tabulated value for the reference spectrum, unused for N = 12
    double baseline, r_opt, nr_opt;
  };
  const std::array<Row, 6> rows = {{{10, 0.0, 0.0, 1.3e-4, 1.6e-4, 1.6e-4},
                                    {10, 0.5, -0.46, 1.6e-5, 5e-5, 1.8e-5},
                                    {10, 0.8, -0.73, 3.2e-6, 2.5e-5, 2.7e-5},
                                    {12, 0.0, 0.0, 2.1e-6, 2.8e-6, 2.7e-6},
                                    {12, 0.5, 0.0, 2.2e-7, 6.6e-7, 7.2e-7},
                                    {12, 0.8, 0.0, 5.5e-8, 2.7e-7, 2.7e-7}}};
  constexpr std::uint64_t kTrials = 100'000'000;
  for (const auto& row : rows) {
    if (row.n == 12 && !long_run) {
      o.info(str("N=12 E_av/E_1=", row.ratio, " skipped (needs --long)"));
      continue;
    }
    // N = 10 rows use the reference spectrum with the tabulated E_av values;
    // N = 12 rows use the generated spectrum at E_av = ratio * E_1.
    const Spectrum s = row.n == 10 ? reference_spectrum10() : generate_gaussian(row.n, 1.0 / std::sqrt(2.0));
    const double e_av = row.n == 10 ? row.e_av : row.ratio * s.lowest();
    const Polytope p(s, e_av);
    const std::uint64_t seed = 1000 + 10 * row.n + static_cast<std::uint64_t>(row.ratio * 10);
    const std::array<std::pair<std::string, RateMeasurement>, 3> m = {
        {{"baseline", measure_baseline(p, kTrials, seed)},
         {"R", measure(r_box(p), p, kTrials, seed + 1)},
         {"NR", measure(nr_box(p), p, kTrials, seed + 2)}}};
    const std::array<double, 3> target = {row.baseline, row.r_opt, row.nr_opt};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& [name, x] = m[k];
      const double tol = std::max(3.0 * x.stderr_rate, 0.2 * target[k]);
      o.expect(std::abs(x.rate - target[k]) <= tol,
               str("N=", row.n, " E_av=", e_av, " ", name, ": r = ", x.rate, " +- ", x.stderr_rate, " vs ", target[k],
                   " (tol ", tol, "; V_M/V_B = ", x.predicted, ")"));
    }
  }
  o.info("N=14 rows: reproducible in principle only (r ~ 1e-9 needs > 1e11 trials)");
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome simplex_identity() {
  Outcome o;
  struct Case {
    Spectrum s;
    std::uint64_t trials;
  };
  const std::vector<Case> cases = {{reference_spectrum10(), 100'000'000},
                                   {generate_gaussian(4, 1.0), 1'000'000},
                                   {generate_gaussian(3, 1.0), 100'000}};
  for (const auto& c : cases) {
    const double e_av = 0.5 * (c.s[0] + c.s[1]);
    const Polytope p(c.s, e_av);
    const auto box = nr_box(p);
    const double expected = 1.0 / std::tgamma(static_cast<double>(c.s.size() - 1));
    o.expect(rel_close(manifold_volume(c.s, e_av) / box.volume, expected, 1e-9),
             str("N=", c.s.size(), " analytic V_M/V_B = ", manifold_volume(c.s, e_av) / box.volume));
    const auto res = sample(box, p, c.trials, 44);
    const double tol = 3.0 * std::sqrt(expected * (1.0 - expected) / static_cast<double>(c.trials));
    o.expect(std::abs(res.rate - expected) <= tol,
             str("N=", c.s.size(), " r = ", res.rate, " vs 1/(N-2)! = ", expected, " (3 sigma ", tol, ")"));
  }
  return o;
}

// 5 ---------------------------------------------------------------------------
Outcome volume_oracle() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 11);
    const std::size_t dim = m + static_cast<std::size_t>(t % 3);
    std::vector<Eigen::VectorXd> b(m, Eigen::VectorXd(static_cast<Eigen::Index>(dim)));
    for (auto& v : b) {
      for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = g(rng);
    }
    const double vg = parallelotope_volume_gram(b);
    worst = std::max(worst, std::abs(parallelotope_volume_heights(b) - vg) / vg);
  }
  o.expect(worst <= 1e-10, str("1000 random bases, dims 2-12: worst relative gap ", worst));

  double worst_orth = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 2 + t % 11;
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(m + 1, m))
                                  .householderQ() * Eigen::MatrixXd::Identity(m + 1, m);
    std::vector<Eigen::VectorXd> b;
    double product = 1.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const double len = 0.5 + 0.1 * static_cast<double>(k);
      b.push_back(len * q.col(k));
      product *= len;
    }
    worst_orth = std::max(worst_orth, std::abs(parallelotope_volume_heights(b) - product) / product);
  }
  o.expect(worst_orth <= 1e-10, str("orthogonal bases vs product of lengths: worst ", worst_orth));
  return o;
}

// 6 ---------------------------------------------------------------------------
Outcome uniformity() {
  Outcome o;
  {
    const Polytope p(Spectrum({-1.0, 0.0, 1.0}), -0.2);
    const auto a = p.embed(p.vertex(0, 1));
    const auto b = p.embed(p.vertex(0, 2));
    std::vector<std::size_t> seq = {1};
    for (const auto& box : {build_rect_box(p, unit_inputs(3, seq)), nr_box(p)}) {
      const auto res = sample(box, p, 100000, 6, 100000);
      std::vector<double> counts(20, 0.0);
      for (const auto& x : res.points) {
        const double u = (x - a).dot(b - a) / (b - a).squaredNorm();
        counts[std::min<std::size_t>(19, static_cast<std::size_t>(u * 20))] += 1.0;
      }
      const std::vector<double> expected(20, static_cast<double>(res.points.size()) / 20.0);
      const auto chi = stats::chi_square_gof(counts, expected);
      o.expect(chi.p_value > 0.01, str("N=3 ", to_string(box.kind), " box: chi2 p = ", chi.p_value));
    }
  }
  {
    const auto s = generate_gaussian(4, 1.0);
    const Polytope p(s, 0.5 * (s[0] + s[1]));
    const auto v1 = p.embed(p.vertices()[0]);
    const auto v2 = p.embed(p.vertices()[1]);
    const auto v3 = p.embed(p.vertices()[2]);
    Eigen::MatrixXd m(4, 2);
    m.col(0) = v1 - v3;
    m.col(1) = v2 - v3;
    const auto qr = m.colPivHouseholderQr();
    for (const auto& box : {r_box(p), nr_box(p)}) {
      const auto res = sample(box, p, 400000, 7, 400000);
      std::vector<double> counts(25, 0.0);
      for (const auto& x : res.points) {
        const Eigen::VectorXd l = qr.solve(x - v3);
        const double u = (1.0 - l[0]) * (1.0 - l[0]);  // uniform for a uniform triangle
        const double w = l[1] / (1.0 - l[0]);         // independent uniform
        counts[std::min<std::size_t>(4, static_cast<std::size_t>(u * 5)) * 5 +
               std::min<std::size_t>(4, static_cast<std::size_t>(w * 5))] += 1.0;
      }
      const std::vector<double> expected(25, static_cast<double>(res.points.size()) / 25.0);
      const auto chi = stats::chi_square_gof(counts, expected);
      o.expect(chi.p_value > 0.01, str("N=4 triangle ", to_string(box.kind), " box: chi2 p = ", chi.p_value));
    }
  }
  for (double e_av : {-0.3, 0.2}) {
    const Polytope p(generate_gaussian(6, 1.0), e_av);
    const auto rb = r_box(p);
    const auto nb = nr_box(p);
    const auto a = sample(rb, p, 4'000'000, 8);
    const auto b = sample(nb, p, 4'000'000, 9);
    const double z = stats::z_score(a.rate * rb.volume, a.rate_stderr * rb.volume, b.rate * nb.volume,
                                    b.rate_stderr * nb.volume);
    o.expect(z < 3.0, str("N=6 E_av=", e_av, ": r_R V_R = ", a.rate * rb.volume, ", r_NR V_NR = ",
                          b.rate * nb.volume, " (", z, " sigma)"));
  }
  return o;
}

// 7 ---------------------------------------------------------------------------
Outcome lambda_and_occupations() {
  Outcome o;
  const auto s = reference_spectrum10();
  o.expect(solve_lambda(s, 0.0) == 0.0, "lambda = 0 at the spectrum mean");
  const Spectrum two({-1.0, 1.0});
  const double l2 = solve_lambda(two, -0.5);
  const auto p2 = predicted_occupations(two, -0.5, l2);
  o.expect(std::abs(l2 - 2.0 / 3.0) < 1e-12 && std::abs(p2[0] - 0.75) < 1e-12 && std::abs(p2[1] - 0.25) < 1e-12,
           str("two levels: lambda = ", l2, ", <p> = (", p2[0], ", ", p2[1], ")"));
  const auto two_run = sample(nr_box(Polytope(two, -0.5)), Polytope(two, -0.5), 1000, 1, 1000);
  const auto two_rep = occupation_report(two_run, two, -0.5);
  o.expect(std::abs(two_rep.rows[0].mean - 0.75) < 1e-12 && std::abs(two_rep.rows[1].mean - 0.25) < 1e-12,
           "two levels: sampled point equals the prediction");

  double worst = 0.0;
  for (double e_av = -0.92; e_av < 0.92; e_av += 0.01) {
    const auto pred = predicted_occupations(s, e_av, solve_lambda(s, e_av));
    double norm = 0.0;
    double energy = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      norm += pred[k];
      energy += pred[k] * s[k];
    }
    worst = std::max({worst, std::abs(norm - 1.0), std::abs(energy - e_av)});
  }
  o.expect(worst < 1e-9, str("constraint residuals over an E_av grid: worst ", worst));

  {
    const Polytope p(s, 0.0);
    const auto res = sample(nr_box(p), p, 50'000'000, 70, 1'000'000);
    // p_k and p_{N+1-k} come from the same points, so test the paired
    // difference rather than two independent means.
    double worst_z = 0.0;
    for (Eigen::Index k = 0; k < 5; ++k) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (const auto& x : res.points) {
        const double d = x[k] - x[9 - k];
        sum += d;
        sum_sq += d * d;
      }
      const double n = static_cast<double>(res.points.size());
      const double mean = sum / n;
      const double se = std::sqrt((sum_sq / n - mean * mean) / n);
      worst_z = std::max(worst_z, std::abs(mean) / se);
    }
    o.expect(worst_z < 3.0,
             str("E_av = 0: pair symmetry, worst ", worst_z, " sigma over ", res.points.size(), " points"));
  }
  {
    const Polytope p(s, -0.3);
    const auto rep = occupation_report(sample(nr_box(p), p, 100'000'000, 71, 1'000'000), s, -0.3);
    bool decreasing = true;
    std::string means;
    for (std::size_t k = 0; k < 10; ++k) {
      if (k > 0 && !(rep.rows[k].mean < rep.rows[k - 1].mean)) decreasing = false;
      means += str(" ", rep.rows[k].mean);
    }
    o.expect(decreasing, "E_av = -0.3: sampled <p_i> strictly decreasing:" + means);
    o.info(str("lambda(-0.3) = ", rep.lambda, ", pole at ", rep.pole_energy.value_or(NAN),
               ", rel. deviation from the mean-occupation formula at level 1: ", rep.rows[0].rel_dev));
  }
  return o;
}

// 8 ---------------------------------------------------------------------------
Outcome fig1() {
  Outcome o;
  const auto s = reference_spectrum10();
  constexpr std::uint64_t kDraws = 10'000'000;
  const auto h = eav_histogram(s, kDraws, 101, 88);
  const auto mode = static_cast<std::size_t>(std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
  o.expect(h.bin_lo(mode) <= 0.0 && 0.0 <= h.bin_hi(mode),
           str("peak bin [", h.bin_lo(mode), ", ", h.bin_hi(mode), "]"));
  std::vector<double> obs;
  std::vector<double> expc;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    obs.push_back(static_cast<double>(h.counts[k]));
    expc.push_back(static_cast<double>(kDraws) * eav_density_integral(s, h.bin_lo(k), h.bin_hi(k)));
  }
  const auto chi = stats::chi_square_gof(obs, expc);
  o.expect(chi.p_value > 0.01, str("chi2 vs B-spline density: ", chi.statistic, " on ", chi.dof, " dof, p = ", chi.p_value));
  o.expect(std::abs(eav_density_integral(s, s.lowest(), s.highest()) - 1.0) < 1e-8, "density integrates to 1");
  return o;
}

// 9 ---------------------------------------------------------------------------
Outcome fig6_flatness() {
  Outcome o;
  const auto s = reference_spectrum10();
  constexpr std::uint64_t kTrials = 40'000'000;
  for (const bool rect : {true, false}) {
    std::vector<double> accepted;
    std::string rates;
    for (int g = 1; g <= 5; ++g) {
      const double e_av = s[0] + (s[1] - s[0]) * g / 6.0;
      const Polytope p(s, e_av);
      const auto res = sample(rect ? r_box(p) : nr_box(p), p, kTrials, 900 + static_cast<std::uint64_t>(g));
      accepted.push_back(static_cast<double>(res.accepted));
      rates += str(" ", res.rate);
    }
    double mean = 0.0;
    for (double a : accepted) mean += a / 5.0;
    const auto chi = stats::chi_square_gof(accepted, std::vector<double>(5, mean));
    o.expect(chi.p_value > 0.01, str(rect ? "R" : "NR", " rates", rates, ": homogeneity p = ", chi.p_value));
  }
  return o;
}

// 10 --------------------------------------------------------------------------
Outcome degeneracy_law() {
  Outcome o;
  for (std::size_t n : {5u, 6u}) {
    const auto s = generate_gaussian(n, 1.0 / std::sqrt(2.0));
    // Middle gap for even N, the gap just below the central level for odd N.
    const std::size_t gap = n / 2 - 1;
    const double e_av = 0.5 * (s[gap] + s[gap + 1]);
    const Polytope p(s, e_av);
    const auto report = sequence_search_exhaustive(p);
    const std::uint64_t law = 3 * static_cast<std::uint64_t>(std::tgamma(static_cast<double>(n - 2)));
    const double vmin = report.global_min;

    o.expect(report.groups.front().min_volume > vmin * (1 + 1e-9) &&
                 report.groups.back().min_volume > vmin * (1 + 1e-9),
             str("N=", n, " E_av=", e_av, ": groups 1 and N miss the global minimum"));
    for (std::size_t g = 1; g + 1 < n; ++g) {
      const auto& gm = report.groups[g];
      const bool at_min = std::abs(gm.min_volume - vmin) <= 1e-9 * vmin;
      o.expect(at_min && gm.degeneracy == law,
               str("N=", n, " group ", g + 1, ": at global minimum ", at_min, ", degeneracy ", gm.degeneracy,
                   " vs 3(N-3)! = ", law));
    }

    // (i) last input irrelevant; (ii) prefixes free of e_1, e_N are optimal.
    std::vector<std::size_t> seq(n - 2);
    bool last_irrelevant = true;
    bool interior_optimal = true;
    std::function<void(std::size_t, std::uint32_t)> walk = [&](std::size_t depth, std::uint32_t used) {
      if (depth + 1 == n - 2) {
        double first = NAN;
        for (std::size_t last = 0; last < n; ++last) {
          if (used & (1u << last)) continue;
          seq[depth] = last;
          const double v = build_rect_box(p, unit_inputs(n, seq)).volume;
          if (std::isnan(first)) first = v;
          if (std::abs(v - first) > 1e-9 * first) last_irrelevant = false;
          const bool interior = std::none_of(seq.begin(), seq.end() - 1,
                                             [&](std::size_t i) { return i == 0 || i == n - 1; });
          if (interior && std::abs(v - vmin) > 1e-9 * vmin) interior_optimal = false;
        }
        return;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (used & (1u << i)) continue;
        seq[depth] = i;
        walk(depth + 1, used | (1u << i));
      }
    };
    walk(0, 0);
    o.expect(last_irrelevant, str("N=", n, ": the last input never changes the volume"));
    o.expect(interior_optimal, str("N=", n, ": every sequence whose first N-3 inputs avoid e_1, e_N is optimal"));
  }

  // Asymmetric spectrum: reported, not judged.
  const Polytope asym(Spectrum({-1.0, -0.6, -0.1, 0.2, 0.7, 1.3}), 0.05);
  const auto report = sequence_search_exhaustive(asym);
  std::string line = "asymmetric N=6 E_av=0.05 group degeneracies (* = at global minimum):";
  for (const auto& g : report.groups) {
    line += str(" ", std::abs(g.min_volume - report.global_min) <= 1e-9 * report.global_min ? "*" : "", g.degeneracy);
  }
  o.info(line);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool long_run = false;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--long") == 0) long_run = true;
  }
  if (const char* env = std::getenv("QMCBOX_LONG"); env && std::strcmp(env, "0") != 0 && *env) long_run = true;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"R-box group minima and degeneracy factors at E_av = -0.3", table1_golden},
      {"NR vertex-scan volumes and ratios", table2_golden},
      {"acceptance rates of baseline, R and NR boxes", [&] { return table3_rates(long_run); }},
      {"simplex identity r = 1/(N-2)! for K = 1", simplex_identity},
      {"heights volume equals Gram volume", volume_oracle},
      {"uniformity on M and box independence of r V_B", uniformity},
      {"lambda and occupation statistics", lambda_and_occupations},
      {"unconstrained E_av histogram vs B-spline density", fig1},
      {"rate flat for E_1 < E_av < E_2", fig6_flatness},
      {"degeneracy law 3(N-3)! at N = 5, 6", degeneracy_law},
  };

  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome out;
    try {
      out = criteria[c].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.details.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << c + 1 << ": " << criteria[c].first << '\n';
    for (const auto& d : out.details) std::cout << "    " << d << '\n';
    std::cout.flush();
    if (!out.pass) ++failed;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << " of " << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
