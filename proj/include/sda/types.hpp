#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace sda {

using Real = double;

using Vec2 = Eigen::Matrix<Real, 2, 1>;
using Vec3 = Eigen::Matrix<Real, 3, 1>;
using Mat2 = Eigen::Matrix<Real, 2, 2>;
using VectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using MatrixX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using SparseMatrix = Eigen::SparseMatrix<Real>;
using Triplet = Eigen::Triplet<Real>;

/// Counter-clockwise perpendicular: rotates v by +90 degrees.
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

/// Tangent associated with an edge normal, tau = perp(n).
inline Vec2 tangent_of(const Vec2& n) { return perp(n); }

/// Error type for contract violations detected by library code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sda
