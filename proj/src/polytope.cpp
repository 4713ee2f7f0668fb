#include "qmcbox/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qmcbox {

std::string Vertex::label() const {
  return "v(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Polytope::Polytope(Spectrum spectrum, double e_av) : spectrum_(std::move(spectrum)), e_av_(e_av) {
  const auto& e = spectrum_.energies();
  if (!std::isfinite(e_av) || !(e.front() < e_av && e_av < e.back())) {
    std::ostringstream msg;
    msg << "E_av = " << e_av << " must lie strictly inside (" << e.front() << ", " << e.back()
        << ")";
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t n = 0; n < e.size(); ++n) {
    if (e[n] == e_av) {
      std::ostringstream msg;
      msg << "E_av = " << e_av << " coincides with level E_" << n + 1
          << "; vertices would degenerate";
      throw std::invalid_argument(msg.str());
    }
    if (e[n] < e_av) ++k_;
  }

  vertices_.reserve(k_ * l());
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = k_; j < e.size(); ++j) {
      Vertex v;
      v.i = i;
      v.j = j;
      v.p_i = (e_av - e[j]) / (e[i] - e[j]);
      v.p_j = (e_av - e[i]) / (e[j] - e[i]);
      vertices_.push_back(v);
    }
  }
}

std::size_t Polytope::vertex_index(std::size_t i, std::size_t j) const {
  if (i >= k_ || j < k_ || j >= levels()) {
    throw std::invalid_argument("no vertex v(" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") in this polytope");
  }
  return i * l() + (j - k_);
}

std::vector<Vertex> Polytope::neighbors(const Vertex& v) const {
  vertex_index(v.i, v.j);  // throws for a vertex of another polytope
  std::vector<Vertex> out;
  out.reserve(dimension());
  for (std::size_t j = k_; j < levels(); ++j) {
    if (j != v.j) out.push_back(vertices_[vertex_index(v.i, j)]);
  }
  for (std::size_t i = 0; i < k_; ++i) {
    if (i != v.i) out.push_back(vertices_[vertex_index(i, v.j)]);
  }
  return out;
}

PointStd Polytope::embed(const Vertex& v) const {
  PointStd p = PointStd::Zero(static_cast<Eigen::Index>(levels()));
  p[static_cast<Eigen::Index>(v.i)] = v.p_i;
  p[static_cast<Eigen::Index>(v.j)] = v.p_j;
  return p;
}

void Polytope::check_length(const PointStd& p) const {
  if (static_cast<std::size_t>(p.size()) != levels()) {
    throw std::invalid_argument("point has " + std::to_string(p.size()) + " coordinates, expected " +
                                std::to_string(levels()));
  }
}

bool Polytope::contains(const PointStd& p, double tol) const {
  check_length(p);
  return (p.array() >= -tol).all();
}

double Polytope::normalization_residual(const PointStd& p) const {
  check_length(p);
  return p.sum() - 1.0;
}

double Polytope::energy_residual(const PointStd& p) const {
  check_length(p);
  double s = 0.0;
  for (std::size_t n = 0; n < levels(); ++n) s += spectrum_[n] * p[static_cast<Eigen::Index>(n)];
  return s - e_av_;
}

bool Polytope::contains_strict(const PointStd& p, double residual_tol) const {
  return contains(p, 0.0) && std::abs(normalization_residual(p)) <= residual_tol &&
         std::abs(energy_residual(p)) <= residual_tol;
}

namespace {

EdgeGroupStats group_stats(const Polytope& polytope, const PointStd& origin,
                           std::vector<Vertex> members, std::size_t unit_index) {
  EdgeGroupStats g;
  g.members = std::move(members);
  std::vector<Eigen::VectorXd> dirs;
  for (const auto& m : g.members) {
    Eigen::VectorXd d = polytope.embed(m) - origin;
    dirs.push_back(d.normalized());
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(origin.size());
    unit[static_cast<Eigen::Index>(unit_index)] = 1.0;
    g.distance_to_unit_point.push_back((polytope.embed(m) - unit).norm());
  }
  for (std::size_t a = 0; a < dirs.size(); ++a) {
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      const double c = std::clamp(dirs[a].dot(dirs[b]), -1.0, 1.0);
      g.pairwise_angles.push_back(std::acos(c));
    }
  }
  if (!g.pairwise_angles.empty()) {
    double sum = 0.0;
    for (double a : g.pairwise_angles) sum += a;
    g.mean_angle = sum / static_cast<double>(g.pairwise_angles.size());
    g.max_angle = *std::max_element(g.pairwise_angles.begin(), g.pairwise_angles.end());
  }
  return g;
}

}  // namespace

EdgeAngleReport edge_angle_report(const Polytope& polytope, const Vertex& origin) {
  const Vertex& o = polytope.vertex(origin.i, origin.j);
  std::vector<Vertex> lower;
  std::vector<Vertex> upper;
  for (const auto& n : polytope.neighbors(o)) {
    (n.i == o.i ? lower : upper).push_back(n);
  }
  const PointStd p0 = polytope.embed(o);
  EdgeAngleReport report;
  report.origin = o;
  report.shared_lower = group_stats(polytope, p0, std::move(lower), o.i);
  report.shared_upper = group_stats(polytope, p0, std::move(upper), o.j);
  return report;
}

void write_vertices_csv(const Polytope& polytope, std::ostream& out) {
  out << "i,j,p_i,p_j\n" << std::setprecision(17);
  for (const auto& v : polytope.vertices()) {
    out << v.i + 1 << ',' << v.j + 1 << ',' << v.p_i << ',' << v.p_j << '\n';
  }
}

}  // namespace qmcbox
