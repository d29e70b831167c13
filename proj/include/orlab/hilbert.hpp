#pragma once

#include <string>
#include <vector>

#include "orlab/grid.hpp"

namespace orlab {

struct HilbertMethod {
  enum class Tag { Spectral, PvQuadrature };
  Tag tag = Tag::Spectral;
  /// Truncation radii in units of h for pv_quadrature, strictly decreasing, last >= 1.
  std::vector<double> eps_in_h{8, 4, 2};

  static HilbertMethod spectral() { return {}; }
  static HilbertMethod pv(std::vector<double> eps_in_h = {8, 4, 2}) { return {Tag::PvQuadrature, std::move(eps_in_h)}; }
  /// "spectral" or "pv", with an optional schedule like "8h,4h,2h".
  static HilbertMethod parse(const std::string& method, const std::string& eps = "");
  std::string name() const;
};

GridFunction hilbert_transform(const GridFunction& f, const HilbertMethod& method = {});

/// (1/pi) sum_{|x_j - x_k| > eps} h f_k / (x_j - x_k), plus the model tail
/// beyond the grid at distance > eps.
std::vector<cplx> truncated_hilbert(const GridFunction& f, double eps);

/// Default schedule: eps = h 2^{k/2} from h up to L, decreasing.
std::vector<double> default_eps_schedule(const GridSpec& spec);

/// Pointwise max over eps of |truncated_hilbert(f, eps)|, and of the
/// extrapolated limit |H f| (the sup includes eps -> 0).
GridFunction hilbert_maximal(const GridFunction& f, const std::vector<double>& eps_schedule);

/// f + i H f for real f.
GridFunction analytic_boundary(const GridFunction& f, const HilbertMethod& method = {});

/// Interior nodes, at least L/8 away from either end.
bool hilbert_reliable(const GridSpec& spec, std::size_t j);

}  // namespace orlab
