#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlab/grid.hpp"

namespace orlab {

enum class KernelKind { Poisson, Conjugate, Cauchy };
enum class FieldKind { Poisson, Conjugate, Cauchy, Measure };

std::string to_string(FieldKind k);

/// Strictly decreasing positive heights; default 2^0 .. 2^-8.
struct HeightLattice {
  std::vector<double> heights;

  static HeightLattice dyadic(int finest_exponent = 8, int coarsest_exponent = 0);
  void validate() const;
};

/// Extension values on grid x height lattice; values[i] is the slice at heights[i].
struct HalfPlaneField {
  GridSpec spec;
  HeightLattice lattice;
  std::vector<std::vector<cplx>> values;
  FieldKind kind = FieldKind::Poisson;
  /// Per height, the largest correction applied for the periodized kernel
  /// images and the model tail beyond the grid.
  std::vector<double> tail_correction;

  GridFunction slice(std::size_t i, DecayClass decay = DecayClass::RationalDecay) const;
  std::size_t height_count() const { return lattice.heights.size(); }
  void write_csv(const std::string& path) const;
};

struct RadonMeasure {
  std::vector<std::pair<double, double>> atoms;  // (location, weight)
  std::optional<GridFunction> density;

  /// int d|mu|(t) / (1 + t^2), computed by quadrature for the density part.
  double weighted_mass() const;
};

/// P_y(x - t), Q_y(x - t), or (1/(i pi)) / (t - (x + i y)).
cplx kernel_eval(KernelKind kind, double y, double x, double t);

double poisson_kernel(double y, double x);
double conjugate_kernel(double y, double x);

/// J_alpha(y) = y^{1-alpha} int_0^inf du / (u^{1/2} (1 + u)^{alpha/2}); empty
/// when alpha <= 1 (the integral diverges).
std::optional<double> j_alpha(double alpha, double y);

/// Spectral evaluation: the continuous-kernel Fourier multiplier on a 4N
/// zero-padded grid, plus the periodization and rational-tail corrections.
HalfPlaneField poisson_extend(const GridFunction& f, const HeightLattice& lattice);
HalfPlaneField conjugate_extend(const GridFunction& f, const HeightLattice& lattice);
/// S(f) = U_f + i V_f.
HalfPlaneField cauchy_transform(const GridFunction& f, const HeightLattice& lattice);

/// Direct O(N) quadrature at chosen points, used as an oracle (accurate for y >= 0.25).
std::vector<cplx> poisson_direct(const GridFunction& f, double y, const std::vector<double>& xs);
std::vector<cplx> conjugate_direct(const GridFunction& f, double y, const std::vector<double>& xs);
/// (1/(i pi)) sum_j h f_j / (t_j - z) plus tails, at z = x + i y.
std::vector<cplx> cauchy_direct(const GridFunction& f, double y, const std::vector<double>& xs);

/// Atoms in closed form plus the density part through poisson_extend. spec is
/// used when there is no density.
HalfPlaneField poisson_extend_measure(const RadonMeasure& mu, const HeightLattice& lattice, const GridSpec& spec);

namespace detail {
/// Grid-node values of P_y * f (conjugate = false) or Q_y * f (conjugate =
/// true) for each height; a zero height with conjugate = true gives the
/// Hilbert transform.
std::vector<std::vector<cplx>> spectral_slices(const GridFunction& f, bool conjugate, const std::vector<double>& heights,
                                               std::vector<double>* correction = nullptr);
}  // namespace detail

}  // namespace orlab
