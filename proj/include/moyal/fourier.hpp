#pragma once

#include <vector>

#include "moyal/field.hpp"
#include "moyal/quadrature.hpp"

namespace moyal {

// Samples on the uniform grid [-L, L]^2 (dim 2 only); samples(i, j) is the value at
// (axis[i], axis[j]) with axis[i] = -L + i h, h = 2L / (resolution - 1).
struct GridField {
  MoyalParams params;
  double extent = 1.0;
  int resolution = 2;
  Eigen::MatrixXcd samples;

  double spacing() const { return 2.0 * extent / (resolution - 1); }
  double coord(int i) const { return -extent + i * spacing(); }
  std::vector<double> axis() const;
  void validate() const;
};

GridField sample_grid(const PointFunction& g, const MoyalParams& p, double extent, int resolution);
GridField grid_from_field(const Field& f, double extent, int resolution);

// Trapezoid-rule integral of conj(f) g over the grid.
cplx grid_inner(const GridField& f, const GridField& g);

struct FourierOptions {
  int sign = 1;                  // exponent e^{-i sign k^x}
  double boundary_tolerance = 1e-10;  // allowed max |g| on the grid edge relative to max |g|
};

// g^(k) = (pi theta)^{-1} int g(x) e^{-i sign k^x} dx with k^x = 2 k Theta^{-1} x
// = (2/theta)(k_2 x_1 - k_1 x_2), evaluated on the tensor-product targets k1s x k2s.
// The transform with a fixed sign is an involution; composing opposite signs gives g(-x).
Eigen::MatrixXcd symplectic_fourier_at(const GridField& g, const std::vector<double>& k1s,
                                       const std::vector<double>& k2s, const FourierOptions& opt = {});

// Same transform, evaluated on the input grid.
GridField symplectic_fourier(const GridField& g, const FourierOptions& opt = {});

}  // namespace moyal
