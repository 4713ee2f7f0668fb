#include "qmcbox/sampler.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace qmcbox {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Affine map from the unit cube to standard coordinates:
/// p = base + sum_k u_k * step_k, stored coordinate-major for the inner loop.
struct BoxMap {
  std::size_t levels = 0;
  std::size_t dims = 0;
  std::vector<double> base;
  std::vector<double> steps;  // steps[i * dims + k] = width_k * axis_k[i]

  BoxMap(const EnclosingBox& box) : levels(box.frame.levels()), dims(box.frame.dimension()) {
    Eigen::VectorXd b = box.frame.origin();
    for (std::size_t k = 0; k < dims; ++k) b += box.extents[k].lo * box.frame.axes()[k];
    base.assign(b.data(), b.data() + b.size());
    steps.resize(levels * dims);
    for (std::size_t i = 0; i < levels; ++i) {
      for (std::size_t k = 0; k < dims; ++k) {
        steps[i * dims + k] = box.extents[k].width() * box.frame.axes()[k][static_cast<Eigen::Index>(i)];
      }
    }
  }
};

struct WorkerOutput {
  std::uint64_t accepted = 0;
  std::vector<PointStd> points;
  bool truncated = false;
};

void run_worker(const BoxMap& map, std::uint64_t trials, std::mt19937_64 rng, std::size_t cap,
                WorkerOutput& out) {
  const std::size_t m = map.dims;
  const std::size_t n = map.levels;
  std::vector<double> u(m);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::size_t k = 0; k < m; ++k) u[k] = unit_uniform(rng);
    bool inside = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = map.steps.data() + i * m;
      double p = map.base[i];
      for (std::size_t k = 0; k < m; ++k) p += u[k] * row[k];
      if (p < 0.0) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    ++out.accepted;
    if (out.points.size() < cap) {
      PointStd p(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const double* row = map.steps.data() + i * m;
        double x = map.base[i];
        for (std::size_t k = 0; k < m; ++k) x += u[k] * row[k];
        p[static_cast<Eigen::Index>(i)] = x;
      }
      out.points.push_back(std::move(p));
    } else {
      out.truncated = true;
    }
  }
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

RunResult run(const EnclosingBox& box, const Polytope& polytope, const RunOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("run: trial count must be positive");
  if (options.workers == 0) throw std::invalid_argument("run: need at least one worker");
  if (box.frame.levels() != polytope.levels()) {
    throw std::invalid_argument("run: box and polytope have different level counts");
  }

  const auto start = std::chrono::steady_clock::now();
  const BoxMap map(box);
  const unsigned workers = options.workers;
  std::vector<WorkerOutput> outputs(workers);
  auto share = [&](unsigned w) {
    return options.trials / workers + (w < options.trials % workers ? 1 : 0);
  };

  if (workers == 1) {
    run_worker(map, share(0), substream(options.seed, 0), options.store_cap, outputs[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back(run_worker, std::cref(map), share(w), substream(options.seed, w),
                           options.store_cap, std::ref(outputs[w]));
    }
    for (auto& t : threads) t.join();
  }

  RunResult result;
  result.trials = options.trials;
  result.seed = options.seed;
  result.workers = workers;
  for (auto& o : outputs) {
    result.accepted += o.accepted;
    result.storage_truncated = result.storage_truncated || o.truncated;
    for (auto& p : o.points) {
      if (result.points.size() < options.store_cap) {
        result.points.push_back(std::move(p));
      } else {
        result.storage_truncated = true;
      }
    }
  }
  const double ns = static_cast<double>(result.trials);
  result.rate = static_cast<double>(result.accepted) / ns;
  result.rate_stderr = std::sqrt(result.rate * (1.0 - result.rate) / ns);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Amplitudes attach_phases(const PointStd& point, std::mt19937_64& rng) {
  Amplitudes a;
  a.c.reserve(static_cast<std::size_t>(point.size()));
  for (Eigen::Index k = 0; k < point.size(); ++k) {
    if (point[k] < 0.0) {
      throw std::invalid_argument("attach_phases: occupation " + std::to_string(k + 1) + " is negative");
    }
    const double phase = 2.0 * std::numbers::pi * unit_uniform(rng);
    a.c.push_back(std::polar(std::sqrt(point[k]), phase));
  }
  return a;
}

PointStd simplex_sample(std::size_t n, std::mt19937_64& rng) {
  if (n < 2) throw std::invalid_argument("simplex_sample: n must be >= 2");
  PointStd p(static_cast<Eigen::Index>(n));
  double sum = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    // 1 - u lies in (0, 1], so the logarithm is finite.
    p[k] = -std::log(1.0 - unit_uniform(rng));
    sum += p[k];
  }
  return p / sum;
}

void write_points_csv(const RunResult& result, std::size_t levels, std::ostream& out) {
  for (std::size_t k = 0; k < levels; ++k) out << (k ? "," : "") << "p_" << k + 1;
  out << '\n' << std::setprecision(17);
  for (const auto& p : result.points) {
    for (Eigen::Index k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
    out << '\n';
  }
}

}  // namespace qmcbox
