#pragma once

#include <functional>
#include <vector>

#include "orlab/grid.hpp"

namespace orlab {

/// Power-law model A |t|^{-gamma} of each part of f beyond the grid, fitted
/// from the samples at 0.75 L and 0.875 L on each side. Only rational_decay
/// functions get an active model; everything else is treated as zero outside.
struct TailModel {
  struct Side {
    double A_re = 0, g_re = 2, A_im = 0, g_im = 2;
  };
  bool active = false;
  Side right, left;  // left stores the coefficient of |t|^{-gamma} for t < 0
  double a = 0, b = 0;  // cell boundaries x_0 - h/2 and x_{N-1} + h/2

  // quadrature nodes t_i beyond the grid with weight-times-tail coefficients
  std::vector<double> t_nodes;
  std::vector<cplx> coef;

  static TailModel fit(const GridFunction& f);

  /// int_b^inf K(x - t) tail(t) dt + int_-inf^a K(x - t) tail(t) dt for a
  /// real kernel K.
  cplx integral(double x, const std::function<double(double)>& kernel) const;
};

}  // namespace orlab
