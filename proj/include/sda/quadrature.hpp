#pragma once

#include <vector>

#include "sda/types.hpp"

namespace sda {

enum class QuadKind { Triangle, Edge };

/// Quadrature rule on the reference triangle or reference edge.
///
/// Triangle rules store barycentric points (l0, l1, l2); weights sum to the
/// reference triangle area 1/2, so that for an affine triangle K
///   int_K f = 2|K| * sum_i w_i f(x_i).
/// Edge rules store a single coordinate s in [0,1]; weights sum to 1, so that
///   int_E f = |E| * sum_i w_i f(a + s_i (b - a)).
struct QuadratureRule {
  QuadKind kind = QuadKind::Triangle;
  int degree = 0;
  std::vector<Vec3> tri_points;    // barycentric, triangle rules only
  std::vector<Real> edge_points;   // s in [0,1], edge rules only
  std::vector<Real> weights;

  std::size_t size() const { return weights.size(); }
};

/// Returns a rule exact for polynomials up to `degree` (1 <= degree <= 6).
/// Throws Error for unsupported degrees.
QuadratureRule make_quadrature(QuadKind kind, int degree);

/// Exact integral of l0^a l1^b l2^c over a triangle of area `area`.
Real monomial_integral(int a, int b, int c, Real area);

}  // namespace sda
