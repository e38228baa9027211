#include "sda/params.hpp"

#include <cmath>
#include <string>

namespace sda {

namespace {

void check_spd(const Mat2& K, const std::string& where) {
  const Real scale = K.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw Error("PhysicalParams: " + where + " is zero");
  if (std::abs(K(0, 1) - K(1, 0)) > 1e-12 * scale) {
    throw Error("PhysicalParams: " + where + " is not symmetric");
  }
  if (!(K.trace() > 0.0) || !(K.determinant() > 0.0)) {
    throw Error("PhysicalParams: " + where + " is not positive definite");
  }
}

}  // namespace

Real PhysicalParams::slip_coefficient(int porous_element, const Vec2& tau) const {
  const Real tKt = tau.dot(K_of(porous_element) * tau);
  return alpha / std::sqrt(tKt);
}

void PhysicalParams::validate(int n_triangles) const {
  if (!(nu > 0.0)) throw Error("PhysicalParams: nu must be positive");
  if (!(rho * g > 0.0)) throw Error("PhysicalParams: rho*g must be positive");
  if (!(alpha >= 0.0)) throw Error("PhysicalParams: alpha must be nonnegative");
  if (!(delta > 0.0)) throw Error("PhysicalParams: delta must be positive");
  check_spd(K, "K");
  if (!K_per_element.empty()) {
    if (n_triangles >= 0 &&
        static_cast<int>(K_per_element.size()) != n_triangles) {
      throw Error("PhysicalParams: K_per_element size does not match the mesh");
    }
    for (std::size_t t = 0; t < K_per_element.size(); ++t) {
      check_spd(K_per_element[t], "K_per_element[" + std::to_string(t) + "]");
    }
  }
}

}  // namespace sda
