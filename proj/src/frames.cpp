#include "qmcbox/frames.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace qmcbox {

namespace {

constexpr double kNullTolerance = 1e-10;
constexpr double kInPlaneTolerance = 1e-10;

Eigen::MatrixXd as_columns(std::span<const Eigen::VectorXd> vectors) {
  if (vectors.empty()) return {};
  Eigen::MatrixXd m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != m.rows()) throw std::invalid_argument("vectors differ in length");
    m.col(static_cast<Eigen::Index>(k)) = vectors[k];
  }
  return m;
}

}  // namespace

HyperplaneNormals hyperplane_normals(const Spectrum& spectrum) {
  const auto n = static_cast<Eigen::Index>(spectrum.size());
  HyperplaneNormals out;
  out.nrm = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(spectrum.energies().data(), n);
  e -= e.dot(out.nrm) * out.nrm;
  e -= e.dot(out.nrm) * out.nrm;
  out.energy = e.normalized();
  return out;
}

std::vector<Eigen::VectorXd> gram_schmidt(std::span<const Eigen::VectorXd> inputs,
                                          std::span<const Eigen::VectorXd> pre_basis) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    Eigen::VectorXd g = inputs[k];
    const double scale = g.norm();
    if (!(scale > 0.0)) {
      throw LinearDependenceError(k, "Gram-Schmidt input " + std::to_string(k + 1) + " is zero");
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : pre_basis) g -= g.dot(b) * b;
      for (const auto& b : out) g -= g.dot(b) * b;
    }
    const double residual = g.norm();
    if (residual <= kNullTolerance * scale) {
      std::ostringstream msg;
      msg << "Gram-Schmidt input " << k + 1
          << " lies in the span of the preceding vectors (residual " << residual / scale << ")";
      throw LinearDependenceError(k, msg.str());
    }
    out.push_back(g / residual);
  }
  return out;
}

double parallelotope_volume_heights(std::span<const Eigen::VectorXd> basis) {
  if (basis.empty()) throw std::invalid_argument("parallelotope_volume_heights: empty basis");
  const Eigen::MatrixXd b = as_columns(basis);
  const Eigen::Index m = b.cols();
  const double last = b.col(m - 1).norm();
  if (!(last > 0.0)) throw std::invalid_argument("parallelotope_volume_heights: zero vector");

  // Work in an orthonormal coordinate system of span(b): b = q r, s = q y.
  // The orthogonality conditions are then linear equations in y.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  double largest = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) largest = std::max(largest, b.col(k).norm());
  for (Eigen::Index k = 0; k < m; ++k) {
    if (std::abs(r(k, k)) <= kNullTolerance * largest) {
      throw std::invalid_argument("parallelotope_volume_heights: dependent basis");
    }
  }

  double volume = last;
  std::vector<Eigen::VectorXd> dirs;  // s_1..s_{t-1} in q coordinates
  for (Eigen::Index t = 0; t + 1 < m; ++t) {
    // Orthogonal to b_{t+1..m} and the earlier s: m - 1 equations in m
    // unknowns with a one-dimensional kernel.
    Eigen::MatrixXd system(m - 1, m);
    Eigen::Index row = 0;
    for (Eigen::Index c = t + 1; c < m; ++c) system.row(row++) = r.col(c).transpose();
    for (const auto& y : dirs) system.row(row++) = y.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
    Eigen::VectorXd y = svd.matrixV().col(m - 1);
    y /= y.norm();
    const double h = std::abs(r.col(t).dot(y));
    if (h <= kNullTolerance * b.col(t).norm()) {
      throw std::invalid_argument("parallelotope_volume_heights: vector " + std::to_string(t + 1) +
                                  " depends on the later ones");
    }
    volume *= h;
    dirs.push_back(std::move(y));
  }
  return volume;
}

double parallelotope_volume_gram(std::span<const Eigen::VectorXd> basis) {
  if (basis.empty()) return 1.0;
  const Eigen::MatrixXd b = as_columns(basis);
  // det(B^T B) squares the condition number; extended precision keeps the
  // result within ~1e-12 for the bases we see.
  using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixXld bl = b.cast<long double>();
  const MatrixXld gram = bl.transpose() * bl;
  double scale = 1.0;
  for (Eigen::Index k = 0; k < b.cols(); ++k) scale *= b.col(k).norm();
  const double det = static_cast<double>(gram.partialPivLu().determinant());
  if (!(det > 0.0) || std::sqrt(det) <= 1e-12 * scale) {
    throw std::invalid_argument("parallelotope_volume_gram: linearly dependent basis");
  }
  return std::sqrt(det);
}

Frame::Frame(FrameKind kind, PointStd origin, HyperplaneNormals normals,
             std::vector<Eigen::VectorXd> axes)
    : kind_(kind), origin_(std::move(origin)), normals_(std::move(normals)), axes_(std::move(axes)) {
  const auto n = origin_.size();
  const auto m = static_cast<Eigen::Index>(axes_.size());
  if (m != n - 2) {
    throw std::invalid_argument("frame needs " + std::to_string(n - 2) + " axes, got " +
                                std::to_string(m));
  }
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    const auto& a = axes_[k];
    if (a.size() != n) throw std::invalid_argument("frame axis has wrong length");
    const double len = a.norm();
    if (std::abs(a.dot(normals_.nrm)) > kInPlaneTolerance * std::max(1.0, len) ||
        std::abs(a.dot(normals_.energy)) > kInPlaneTolerance * std::max(1.0, len)) {
      throw std::invalid_argument("frame axis " + std::to_string(k + 1) +
                                  " leaves the constraint plane");
    }
  }
  if (m == 0) {
    dual_.resize(0, n);
    return;
  }
  const Eigen::MatrixXd a = as_columns(axes_);
  if (kind_ == FrameKind::orthonormal) {
    dual_ = a.transpose();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(m - 1) <= 1e-10 * sv(0)) throw std::invalid_argument("oblique frame axes are dependent");
    dual_ = (a.transpose() * a).ldlt().solve(a.transpose());
  }
}

Frame Frame::orthonormal(const Spectrum& spectrum, PointStd origin,
                         std::span<const Eigen::VectorXd> inputs) {
  HyperplaneNormals normals = hyperplane_normals(spectrum);
  const std::array<Eigen::VectorXd, 2> pre{normals.nrm, normals.energy};
  auto axes = gram_schmidt(inputs, pre);
  return Frame(FrameKind::orthonormal, std::move(origin), std::move(normals), std::move(axes));
}

Frame Frame::oblique(const Spectrum& spectrum, PointStd origin, std::vector<Eigen::VectorXd> axes) {
  return Frame(FrameKind::oblique, std::move(origin), hyperplane_normals(spectrum), std::move(axes));
}

PointMod Frame::to_modified(const PointStd& p) const {
  if (p.size() != origin_.size()) throw std::invalid_argument("point has wrong length");
  return dual_ * (p - origin_);
}

PointStd Frame::to_standard(const PointMod& c) const {
  if (static_cast<std::size_t>(c.size()) != axes_.size()) {
    throw std::invalid_argument("modified coordinates have wrong length");
  }
  PointStd p = origin_;
  for (std::size_t k = 0; k < axes_.size(); ++k) p += c[static_cast<Eigen::Index>(k)] * axes_[k];
  return p;
}

}  // namespace qmcbox
