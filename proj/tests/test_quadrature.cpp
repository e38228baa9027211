#include <cmath>

#include <doctest.h>

#include "oracle.hpp"
#include "sda/quadrature.hpp"
#include "sda/types.hpp"

using namespace sda;

TEST_CASE("triangle rules integrate barycentric monomials exactly") {
  for (int degree = 1; degree <= 6; ++degree) {
    const QuadratureRule rule = make_quadrature(QuadKind::Triangle, degree);
    Real wsum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      wsum += rule.weights[i];
      CHECK(rule.weights[i] > 0.0);
      const Vec3& l = rule.tri_points[i];
      CHECK(l.minCoeff() >= -1e-14);
      CHECK(std::abs(l.sum() - 1.0) <= 1e-14);
    }
    CHECK(std::abs(wsum - 0.5) <= 1e-14);

    for (int p = 0; p <= degree; ++p) {
      for (int q = 0; p + q <= degree; ++q) {
        const int r = degree - p - q;
        Real sum = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
          const Vec3& l = rule.tri_points[i];
          sum += rule.weights[i] * std::pow(l[0], p) * std::pow(l[1], q) *
                 std::pow(l[2], r);
        }
        CHECK(std::abs(sum - oracle::monomial_ref(p, q, r)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("frozen value: l1^2 l2^2 over the reference triangle is 1/180") {
  const QuadratureRule rule = make_quadrature(QuadKind::Triangle, 4);
  Real sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec3& l = rule.tri_points[i];
    sum += rule.weights[i] * l[1] * l[1] * l[2] * l[2];
  }
  CHECK(std::abs(sum - 1.0 / 180.0) <= 1e-15);
}

TEST_CASE("edge rules integrate powers of the parameter exactly") {
  for (int degree = 1; degree <= 6; ++degree) {
    const QuadratureRule rule = make_quadrature(QuadKind::Edge, degree);
    Real wsum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      wsum += rule.weights[i];
      CHECK(rule.edge_points[i] >= 0.0);
      CHECK(rule.edge_points[i] <= 1.0);
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-14);
    for (int p = 0; p <= degree; ++p) {
      Real sum = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        sum += rule.weights[i] * std::pow(rule.edge_points[i], p);
      }
      CHECK(std::abs(sum - 1.0 / (p + 1)) <= 1e-14);
    }
  }
}

TEST_CASE("unsupported degrees are rejected") {
  CHECK_THROWS_AS(make_quadrature(QuadKind::Triangle, 0), Error);
  CHECK_THROWS_AS(make_quadrature(QuadKind::Triangle, 7), Error);
  CHECK_THROWS_AS(make_quadrature(QuadKind::Edge, 9), Error);
}

TEST_CASE("monomial_integral matches the factorial formula") {
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      for (int c = 0; c <= 3; ++c) {
        const Real expected = 2.0 * 0.37 * oracle::monomial_ref(a, b, c);
        CHECK(monomial_integral(a, b, c, 0.37) ==
              doctest::Approx(expected).epsilon(1e-14));
      }
    }
  }
}
