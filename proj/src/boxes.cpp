#include "qmcbox/boxes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qmcbox {

const char* to_string(BoxKind kind) {
  return kind == BoxKind::rectangular ? "rectangular" : "oblique";
}

bool EnclosingBox::contains_modified(const PointMod& c, double slack) const {
  if (static_cast<std::size_t>(c.size()) != extents.size()) return false;
  for (std::size_t k = 0; k < extents.size(); ++k) {
    const double x = c[static_cast<Eigen::Index>(k)];
    if (x < extents[k].lo - slack || x > extents[k].hi + slack) return false;
  }
  return true;
}

EnclosingBox build_rect_box(const Polytope& polytope, std::span<const Eigen::VectorXd> inputs) {
  const Vertex& anchor = polytope.vertex(0, polytope.levels() - 1);
  Frame frame = Frame::orthonormal(polytope.spectrum(), polytope.embed(anchor), inputs);

  const std::size_t m = frame.dimension();
  std::vector<Interval> extents(m, Interval{std::numeric_limits<double>::infinity(),
                                            -std::numeric_limits<double>::infinity()});
  for (const auto& v : polytope.vertices()) {
    const PointMod c = frame.to_modified(polytope.embed(v));
    for (std::size_t k = 0; k < m; ++k) {
      extents[k].lo = std::min(extents[k].lo, c[static_cast<Eigen::Index>(k)]);
      extents[k].hi = std::max(extents[k].hi, c[static_cast<Eigen::Index>(k)]);
    }
  }
  double volume = 1.0;
  for (const auto& e : extents) volume *= e.width();
  return EnclosingBox{std::move(frame), std::move(extents), BoxKind::rectangular, volume};
}

EnclosingBox build_nr_box(const Polytope& polytope, const Vertex& origin) {
  const Vertex& o = polytope.vertex(origin.i, origin.j);
  const PointStd p0 = polytope.embed(o);
  std::vector<Eigen::VectorXd> edges;
  for (const auto& n : polytope.neighbors(o)) edges.push_back(polytope.embed(n) - p0);
  const double edge_volume = parallelotope_volume_gram(edges);
  Frame frame = Frame::oblique(polytope.spectrum(), p0, std::move(edges));

  const std::size_t m = frame.dimension();
  std::vector<Interval> extents(m, Interval{0.0, 0.0});
  for (const auto& v : polytope.vertices()) {
    const PointMod c = frame.to_modified(polytope.embed(v));
    for (std::size_t k = 0; k < m; ++k) {
      const double x = c[static_cast<Eigen::Index>(k)];
      if (x < -1e-9) {
        std::ostringstream msg;
        msg << "vertex " << v.label() << " has oblique coordinate " << x << " relative to "
            << o.label() << "; the edge cone does not contain the polytope";
        throw std::logic_error(msg.str());
      }
      extents[k].hi = std::max(extents[k].hi, x);
    }
  }
  double volume = edge_volume;
  for (const auto& e : extents) volume *= e.width();
  return EnclosingBox{std::move(frame), std::move(extents), BoxKind::oblique, volume};
}

std::vector<Eigen::VectorXd> unit_inputs(std::size_t levels, std::span<const std::size_t> indices) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(indices.size());
  for (std::size_t k : indices) {
    if (k >= levels) throw std::invalid_argument("unit vector index out of range");
    out.push_back(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(levels), static_cast<Eigen::Index>(k)));
  }
  return out;
}

std::vector<Eigen::VectorXd> random_sphere_inputs(std::size_t levels, std::size_t count,
                                                  std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(levels));
    for (Eigen::Index n = 0; n < g.size(); ++n) g[n] = gauss(rng);
    out.push_back(g.normalized());
  }
  return out;
}

std::vector<std::size_t> r_prescription(const Polytope& polytope) {
  const Spectrum& s = polytope.spectrum();
  const double centre = s.mean();
  std::vector<std::size_t> order;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) order.push_back(k);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(s[a] - centre) < std::abs(s[b] - centre);
  });
  return order;
}

Vertex nr_prescription(const Polytope& polytope) {
  return polytope.vertex(0, polytope.levels() - 1);
}

namespace {

/// Incremental rectangular-box volume for unit-vector input sequences. Each
/// pushed level adds one Gram-Schmidt axis and the width of the vertex
/// projections along it; vertices are sparse (two non-zeros).
class SequenceEvaluator {
 public:
  explicit SequenceEvaluator(const Polytope& polytope) : n_(polytope.levels()) {
    const HyperplaneNormals normals = hyperplane_normals(polytope.spectrum());
    pre_ = {normals.nrm, normals.energy};
    for (const auto& v : polytope.vertices()) verts_.push_back(v);
    axes_.reserve(n_);
    widths_.push_back(1.0);
  }

  std::size_t depth() const noexcept { return axes_.size(); }
  double volume() const noexcept { return widths_.back(); }

  void push(std::size_t level) {
    Eigen::VectorXd g = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n_),
                                              static_cast<Eigen::Index>(level));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : pre_) g -= g.dot(b) * b;
      for (const auto& b : axes_) g -= g.dot(b) * b;
    }
    const double norm = g.norm();
    if (norm <= 1e-10) {
      throw LinearDependenceError(depth(), "unit vector e_" + std::to_string(level + 1) +
                                               " is dependent on the preceding inputs");
    }
    g /= norm;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : verts_) {
      const double x = g[static_cast<Eigen::Index>(v.i)] * v.p_i + g[static_cast<Eigen::Index>(v.j)] * v.p_j;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    axes_.push_back(std::move(g));
    widths_.push_back(widths_.back() * (hi - lo));
  }

  void pop() {
    axes_.pop_back();
    widths_.pop_back();
  }

 private:
  std::size_t n_;
  std::array<Eigen::VectorXd, 2> pre_;
  std::vector<Vertex> verts_;
  std::vector<Eigen::VectorXd> axes_;
  std::vector<double> widths_;
};

constexpr int kPackBits = 5;

std::uint64_t pack(std::span<const std::size_t> seq) {
  std::uint64_t code = 0;
  for (std::size_t k = 0; k < seq.size(); ++k) code |= static_cast<std::uint64_t>(seq[k]) << (kPackBits * k);
  return code;
}

std::vector<std::size_t> unpack(std::uint64_t code, std::size_t length) {
  std::vector<std::size_t> seq(length);
  for (std::size_t k = 0; k < length; ++k) seq[k] = (code >> (kPackBits * k)) & ((1U << kPackBits) - 1);
  return seq;
}

struct GroupSamples {
  std::vector<double> volumes;
  std::vector<std::uint64_t> codes;
};

SequenceSearchReport summarise(std::vector<GroupSamples>& groups, std::size_t length,
                               double rel_tolerance) {
  SequenceSearchReport report;
  report.rel_tolerance = rel_tolerance;
  report.global_min = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    GroupMinimum gm;
    gm.first_index = g;
    gm.sequences = groups[g].volumes.size();
    if (groups[g].volumes.empty()) {
      gm.min_volume = std::numeric_limits<double>::quiet_NaN();
      report.groups.push_back(std::move(gm));
      continue;
    }
    gm.min_volume = *std::min_element(groups[g].volumes.begin(), groups[g].volumes.end());
    const double threshold = gm.min_volume * (1.0 + rel_tolerance);
    std::vector<std::size_t> best;
    for (std::size_t s = 0; s < groups[g].volumes.size(); ++s) {
      if (groups[g].volumes[s] <= threshold) {
        ++gm.degeneracy;
        auto seq = unpack(groups[g].codes[s], length);
        if (best.empty() || std::lexicographical_compare(seq.begin(), seq.end(), best.begin(), best.end())) {
          best = std::move(seq);
        }
      }
    }
    gm.best_sequence = std::move(best);
    if (gm.min_volume < report.global_min) {
      report.global_min = gm.min_volume;
      report.best_sequence = gm.best_sequence;
    }
    report.groups.push_back(std::move(gm));
  }
  return report;
}

void dfs(SequenceEvaluator& eval, std::vector<std::size_t>& seq, std::vector<bool>& used,
         std::size_t length, GroupSamples& out) {
  if (seq.size() == length) {
    out.volumes.push_back(eval.volume());
    out.codes.push_back(pack(seq));
    return;
  }
  for (std::size_t k = 0; k < used.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    seq.push_back(k);
    eval.push(k);
    dfs(eval, seq, used, length, out);
    eval.pop();
    seq.pop_back();
    used[k] = false;
  }
}

}  // namespace

SequenceSearchReport sequence_search_exhaustive(const Polytope& polytope, double rel_tolerance) {
  const std::size_t n = polytope.levels();
  if (n > 10) {
    throw std::invalid_argument("exhaustive sequence search is limited to N <= 10 (N = " +
                                std::to_string(n) + " gives " + std::to_string(n) +
                                "!/2 sequences); use random mode instead");
  }
  const std::size_t length = n - 2;
  std::vector<GroupSamples> groups(n);
  if (length == 0) return summarise(groups, length, rel_tolerance);

  SequenceEvaluator eval(polytope);
  std::vector<std::size_t> seq;
  std::vector<bool> used(n, false);
  for (std::size_t first = 0; first < n; ++first) {
    used[first] = true;
    seq.push_back(first);
    eval.push(first);
    dfs(eval, seq, used, length, groups[first]);
    eval.pop();
    seq.pop_back();
    used[first] = false;
  }
  return summarise(groups, length, rel_tolerance);
}

SequenceSearchReport sequence_search_random(const Polytope& polytope, std::uint64_t draws,
                                            std::uint64_t seed, double rel_tolerance) {
  const std::size_t n = polytope.levels();
  const std::size_t length = n - 2;
  std::vector<GroupSamples> groups(n);
  if (length == 0) return summarise(groups, length, rel_tolerance);
  if (n > 64 / kPackBits + 2) throw std::invalid_argument("random sequence search supports N <= 14");

  std::mt19937_64 rng(seed);
  SequenceEvaluator eval(polytope);
  std::vector<std::size_t> perm(n);
  for (std::uint64_t d = 0; d < draws; ++d) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t k = 0; k < length; ++k) eval.push(perm[k]);
    auto& g = groups[perm[0]];
    g.volumes.push_back(eval.volume());
    g.codes.push_back(pack(std::span<const std::size_t>(perm.data(), length)));
    for (std::size_t k = 0; k < length; ++k) eval.pop();
  }
  return summarise(groups, length, rel_tolerance);
}

VertexScanReport nr_vertex_scan(const Polytope& polytope, double rel_tolerance) {
  VertexScanReport report;
  for (const auto& v : polytope.vertices()) {
    report.origins.push_back(v);
    report.volumes.push_back(build_nr_box(polytope, v).volume);
  }
  report.v_min = *std::min_element(report.volumes.begin(), report.volumes.end());
  report.v_max = *std::max_element(report.volumes.begin(), report.volumes.end());
  report.ratio = report.v_max / report.v_min;
  for (std::size_t k = 0; k < report.origins.size(); ++k) {
    if (report.volumes[k] <= report.v_min * (1.0 + rel_tolerance)) report.argmin.push_back(report.origins[k]);
    if (report.volumes[k] >= report.v_max * (1.0 - rel_tolerance)) report.argmax.push_back(report.origins[k]);
  }
  return report;
}

void write_sequence_report_csv(const SequenceSearchReport& report, std::ostream& out) {
  out << "group,min_volume,degeneracy\n" << std::setprecision(12);
  for (const auto& g : report.groups) {
    out << g.first_index + 1 << ',' << g.min_volume << ',' << g.degeneracy << '\n';
  }
}

void write_vertex_scan_csv(const VertexScanReport& report, std::ostream& out) {
  out << "i,j,volume\n" << std::setprecision(12);
  for (std::size_t k = 0; k < report.origins.size(); ++k) {
    out << report.origins[k].i + 1 << ',' << report.origins[k].j + 1 << ',' << report.volumes[k] << '\n';
  }
}

}  // namespace qmcbox
