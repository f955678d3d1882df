#pragma once

#include <vector>

#include "sohp/errors.hpp"
#include "sohp/vec3.hpp"

namespace sohp {

/// Unit-vector field Omega (plus a density rho) on a periodic uniform grid;
/// 1-D when ny == 1, 2-D otherwise. Grid axes map to the x and y components
/// of the spatial gradient.
struct OrientationField {
  int nx = 0;
  int ny = 1;
  double dx = 0.0;
  std::vector<Vec3> omega;
  std::vector<double> rho;
  double time = 0.0;

  bool two_d() const { return ny > 1; }
  int dim() const { return two_d() ? 2 : 1; }
  std::size_t size() const { return omega.size(); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }

  static OrientationField make(int nx, int ny, double dx);

  void validate() const {
    if (nx < 3 || ny < 1 || (ny > 1 && ny < 3)) {
      throw DomainError("OrientationField: each active dimension needs >= 3 nodes");
    }
    if (!(dx > 0.0)) throw DomainError("OrientationField: dx must be positive");
    if (omega.size() != static_cast<std::size_t>(nx) * ny || rho.size() != omega.size()) {
      throw DomainError("OrientationField: inconsistent array sizes");
    }
  }

  /// Renormalize every node; returns the largest |.|Omega|.| - 1| seen before
  /// projection.
  double renormalize();

  /// max over nodes of | |Omega| - 1 |.
  double max_norm_deviation() const;

  /// Total mass sum(rho_i) dx^dim (compensated summation).
  double mass() const;
};

}  // namespace sohp
