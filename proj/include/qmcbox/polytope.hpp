#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmcbox/spectrum.hpp"

namespace qmcbox {

/// Occupation vector p = (p_1, ..., p_N) in standard coordinates.
using PointStd = Eigen::VectorXd;

/// Vertex v_{i,j} of the energy-constrained occupation polytope. Exactly two
/// occupations are non-zero; `i` indexes the level below E_av and `j` the
/// level above it (0-based).
struct Vertex {
  std::size_t i = 0;
  std::size_t j = 0;
  double p_i = 0.0;
  double p_j = 0.0;

  /// 1-based label, e.g. "v(1,10)".
  std::string label() const;
  friend bool operator==(const Vertex& a, const Vertex& b) { return a.i == b.i && a.j == b.j; }
};

/// The set {p : sum p_i = 1, sum E_i p_i = E_av, p_i >= 0} for a spectrum and
/// an energy expectation value strictly inside (E_1, E_N) and different from
/// every level.
class Polytope {
 public:
  Polytope(Spectrum spectrum, double e_av);

  const Spectrum& spectrum() const noexcept { return spectrum_; }
  double e_av() const noexcept { return e_av_; }
  /// Number of levels N.
  std::size_t levels() const noexcept { return spectrum_.size(); }
  /// Dimension of the polytope, N - 2.
  std::size_t dimension() const noexcept { return spectrum_.size() - 2; }
  /// Levels strictly below E_av.
  std::size_t k() const noexcept { return k_; }
  /// Levels strictly above E_av.
  std::size_t l() const noexcept { return spectrum_.size() - k_; }

  /// All K*L vertices in lexicographic (i, j) order.
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  std::size_t vertex_index(std::size_t i, std::size_t j) const;
  const Vertex& vertex(std::size_t i, std::size_t j) const { return vertices_[vertex_index(i, j)]; }

  /// Vertices joined to `v` by an edge: shared lower index or shared upper
  /// index. Always N - 2 of them, ordered (shared-i group, then shared-j).
  std::vector<Vertex> neighbors(const Vertex& v) const;

  PointStd embed(const Vertex& v) const;

  /// Positivity test only: every coordinate >= -tol.
  bool contains(const PointStd& p, double tol = 0.0) const;
  /// Positivity plus normalisation and energy residuals within `residual_tol`.
  bool contains_strict(const PointStd& p, double residual_tol = 1e-9) const;

  double normalization_residual(const PointStd& p) const;
  double energy_residual(const PointStd& p) const;

 private:
  void check_length(const PointStd& p) const;

  Spectrum spectrum_;
  double e_av_;
  std::size_t k_ = 0;
  std::vector<Vertex> vertices_;
};

struct EdgeGroupStats {
  std::vector<Vertex> members;
  /// Angles (radians) between every pair of edge directions in the group.
  std::vector<double> pairwise_angles;
  double mean_angle = 0.0;
  double max_angle = 0.0;
  /// Distance of each member to the unit point e_i (lower group) or e_j
  /// (upper group) of the origin vertex.
  std::vector<double> distance_to_unit_point;
};

/// Clustering diagnostic for the edges leaving `origin`: edges that keep the
/// lower index form one group, edges that keep the upper index the other.
struct EdgeAngleReport {
  Vertex origin;
  EdgeGroupStats shared_lower;
  EdgeGroupStats shared_upper;
};

EdgeAngleReport edge_angle_report(const Polytope& polytope, const Vertex& origin);

/// CSV with columns i,j,p_i,p_j (1-based indices).
void write_vertices_csv(const Polytope& polytope, std::ostream& out);

}  // namespace qmcbox
