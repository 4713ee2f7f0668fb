#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qmcbox/frames.hpp"
#include "qmcbox/polytope.hpp"

namespace qmcbox {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
};

enum class BoxKind { rectangular, oblique };

const char* to_string(BoxKind kind);

/// Box in modified coordinates that encloses every vertex of a polytope
/// (hence, by convexity, the whole polytope). Each extent is attained by at
/// least one vertex.
struct EnclosingBox {
  Frame frame;
  std::vector<Interval> extents;
  BoxKind kind;
  /// (N-2)-dimensional Euclidean volume inside plane A.
  double volume;

  bool contains_modified(const PointMod& c, double slack = 1e-10) const;
};

/// Rectangular box with axes from Gram-Schmidt applied to `inputs`, anchored
/// at v(1,N). Extents are min/max of the vertex projections.
EnclosingBox build_rect_box(const Polytope& polytope, std::span<const Eigen::VectorXd> inputs);

/// Parallelotope whose axes are the N-2 edges leaving `origin`. Oblique
/// coordinates of all vertices are non-negative, so extents are [0, max].
EnclosingBox build_nr_box(const Polytope& polytope, const Vertex& origin);

/// Unit vectors e_{k} for the given 0-based level indices.
std::vector<Eigen::VectorXd> unit_inputs(std::size_t levels, std::span<const std::size_t> indices);

/// Input vectors drawn uniformly on the unit sphere of R^N.
std::vector<Eigen::VectorXd> random_sphere_inputs(std::size_t levels, std::size_t count,
                                                  std::mt19937_64& rng);

/// Gram-Schmidt input order for the optimised rectangular box: interior
/// levels only (no e_1, no e_N), by ascending |E_k - mean(E)|, ties to the
/// lower index. Returns 0-based level indices.
std::vector<std::size_t> r_prescription(const Polytope& polytope);

/// Origin vertex for the optimised parallelotope box: v(1,N).
Vertex nr_prescription(const Polytope& polytope);

struct GroupMinimum {
  std::size_t first_index = 0;  // 0-based level of g_1
  std::uint64_t sequences = 0;  // sequences evaluated in the group
  double min_volume = 0.0;      // NaN when the group received no sequence
  std::uint64_t degeneracy = 0;
  std::vector<std::size_t> best_sequence;  // lexicographically first minimiser
};

struct SequenceSearchReport {
  std::vector<GroupMinimum> groups;  // one per level, ordered by first index
  double global_min = 0.0;
  std::vector<std::size_t> best_sequence;
  double rel_tolerance = 1e-9;
};

/// Every ordered choice of N-2 distinct unit vectors as Gram-Schmidt input.
/// Refused for N > 10.
SequenceSearchReport sequence_search_exhaustive(const Polytope& polytope,
                                                double rel_tolerance = 1e-9);

/// `draws` uniformly random ordered sequences (prefixes of random permutations).
SequenceSearchReport sequence_search_random(const Polytope& polytope, std::uint64_t draws,
                                            std::uint64_t seed, double rel_tolerance = 1e-9);

struct VertexScanReport {
  std::vector<Vertex> origins;   // polytope vertex order
  std::vector<double> volumes;   // parallel to origins
  double v_min = 0.0;
  double v_max = 0.0;
  double ratio = 1.0;            // v_max / v_min
  std::vector<Vertex> argmin;
  std::vector<Vertex> argmax;
};

VertexScanReport nr_vertex_scan(const Polytope& polytope, double rel_tolerance = 1e-9);

/// group,min_volume,degeneracy (1-based group index).
void write_sequence_report_csv(const SequenceSearchReport& report, std::ostream& out);
/// i,j,volume (1-based indices).
void write_vertex_scan_csv(const VertexScanReport& report, std::ostream& out);

}  // namespace qmcbox
