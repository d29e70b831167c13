#pragma once

#include <span>
#include <vector>

#include "orlab/grid.hpp"
#include "orlab/growth.hpp"

namespace orlab {

struct NormResult {
  double value = 0;
  double lo = 0;
  double hi = 0;
  int iterations = 0;
  double modular_at_value = 0;
};

struct DualNormResult {
  double value = 0;
  double best_k = 0;  // witness g = Phi'(k |f|), normalized in L^Psi
  int evaluations = 0;
};

struct HolderResult {
  double pairing = 0;
  double bound = 0;
  bool ok = true;
};

/// Modular of nonnegative node values with trapezoid weights; +inf on overflow.
double modular(std::span<const double> abs_values, const GridSpec& spec, const GrowthFunction& phi,
               double lambda);
double modular(const GridFunction& f, const GrowthFunction& phi, double lambda);

/// Bracketing root search for modular(lambda) = 1, stopping when the bracket
/// is within 1e-10 relative width. Split points come from a secant step in
/// (ln lambda, ln modular) with a bisection fallback.
NormResult luxemburg_norm(std::span<const double> abs_values, const GridSpec& spec, const GrowthFunction& phi);
NormResult luxemburg_norm(const GridFunction& f, const GrowthFunction& phi);

/// Sup of the pairing over Young-equality witnesses; psi defaults to
/// complementary(phi).
DualNormResult orlicz_dual_norm(std::span<const double> abs_values, const GridSpec& spec,
                                const GrowthFunction& phi, const GrowthFunction& psi);
DualNormResult orlicz_dual_norm(const GridFunction& f, const GrowthFunction& phi);

HolderResult holder_pairing(const GridFunction& f, const GridFunction& g, const GrowthFunction& phi);

/// int_0^inf Phi'(lambda) |{|f| > lambda}| d lambda; independent of modular().
/// lambda_points sets the geometric part of the lambda grid.
double modular_layercake(const GridFunction& f, const GrowthFunction& phi, int lambda_points = 2000);

}  // namespace orlab
