#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmcbox/polytope.hpp"
#include "qmcbox/spectrum.hpp"

namespace qmcbox {

/// Coordinates along the in-plane axes of a Frame.
using PointMod = Eigen::VectorXd;

/// Raised when an input vector has no component left after projection onto
/// the orthogonal complement of everything processed before it.
class LinearDependenceError : public std::runtime_error {
 public:
  LinearDependenceError(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  /// 0-based position of the offending vector in the input sequence.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Unit normals of the normalisation and energy hyperplanes. Their common
/// orthogonal complement is the (N-2)-dimensional plane A holding the polytope.
struct HyperplaneNormals {
  Eigen::VectorXd nrm;     // (1, ..., 1) / sqrt(N)
  Eigen::VectorXd energy;  // (E_1, ..., E_N) orthonormalised against nrm
};

HyperplaneNormals hyperplane_normals(const Spectrum& spectrum);

/// Classical Gram-Schmidt with one re-orthogonalisation pass. Each input is
/// projected against `pre_basis`, then against the outputs produced so far.
/// Throws LinearDependenceError when a projected input is numerically null.
std::vector<Eigen::VectorXd> gram_schmidt(std::span<const Eigen::VectorXd> inputs,
                                          std::span<const Eigen::VectorXd> pre_basis);

/// Volume of the parallelotope spanned by `basis`, built from successive
/// heights: s_t is the unit vector of span(basis) orthogonal to
/// {b_{t+1}, ..., b_m, s_1, ..., s_{t-1}}, h_t = |b_t . s_t|, and
/// V = |b_m| * prod h_t.
double parallelotope_volume_heights(std::span<const Eigen::VectorXd> basis);

/// sqrt(det G) with G_ab = b_a . b_b. An empty basis has volume 1.
double parallelotope_volume_gram(std::span<const Eigen::VectorXd> basis);

enum class FrameKind { orthonormal, oblique };

/// Modified coordinate system: an origin on the polytope and N-2 axes lying
/// in plane A. Orthonormal frames come from Gram-Schmidt; oblique frames use
/// raw edge vectors, so a neighbour vertex sits at a unit coordinate.
class Frame {
 public:
  static Frame orthonormal(const Spectrum& spectrum, PointStd origin,
                           std::span<const Eigen::VectorXd> inputs);
  static Frame oblique(const Spectrum& spectrum, PointStd origin,
                       std::vector<Eigen::VectorXd> axes);

  FrameKind kind() const noexcept { return kind_; }
  const PointStd& origin() const noexcept { return origin_; }
  const HyperplaneNormals& normals() const noexcept { return normals_; }
  const std::vector<Eigen::VectorXd>& axes() const noexcept { return axes_; }
  std::size_t dimension() const noexcept { return axes_.size(); }
  std::size_t levels() const noexcept { return static_cast<std::size_t>(origin_.size()); }

  /// Coordinates of the in-plane component of p - origin. For oblique
  /// frames this solves the Gram system of the axes.
  PointMod to_modified(const PointStd& p) const;
  PointStd to_standard(const PointMod& c) const;

 private:
  Frame(FrameKind kind, PointStd origin, HyperplaneNormals normals,
        std::vector<Eigen::VectorXd> axes);

  FrameKind kind_;
  PointStd origin_;
  HyperplaneNormals normals_;
  std::vector<Eigen::VectorXd> axes_;
  Eigen::MatrixXd dual_;  // dimension x N; c = dual_ * (p - origin)
};

}  // namespace qmcbox
