#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlab/growth.hpp"

namespace orlab {

struct IndexReport {
  double a_lower = 0;
  double b_upper = 0;
  double argmin_t = 0;
  double argmax_t = 0;
  double t_min = 0;
  double t_max = 0;
  // plain grid extrema before the edge extrapolation
  double grid_min = 0;
  double grid_max = 0;
};

struct ConditionReport {
  bool satisfied = false;
  std::optional<double> constant;
  std::optional<double> witness;
  std::string probe_grid;
  // largest probe value of the tested ratio, reported even when unbounded
  double observed_max = 0;
};

/// Elasticity t Phi'(t)/Phi(t) over the probe, with each edge extended by a
/// fit e(t) = e_inf + k / ln t so slowly converging families report their limit.
IndexReport estimate_indices(const GrowthFunction& phi, const Probe& probe = {});

ConditionReport check_delta2(const GrowthFunction& phi, const Probe& probe = {});

struct Nabla2Report {
  ConditionReport index_check;
  ConditionReport dini_check;
  bool consistent = true;  // the two criteria agree
  bool satisfied = false;  // both criteria hold
};

/// Throws NotNFunction if phi is not an N-function by family.
Nabla2Report check_nabla2(const GrowthFunction& phi, const Probe& probe = {});

/// ln of the Dini integral int_0^t Phi(s)/s^2 ds at each probe node.
std::vector<double> log_dini_integral(const GrowthFunction& phi, const std::vector<double>& grid);

ConditionReport check_dini_domination(const GrowthFunction& phi1, const GrowthFunction& phi2,
                                      const Probe& probe = {});

enum class TypeKind { Upper, Lower };

ConditionReport check_type_bounds(const GrowthFunction& phi, double exponent, TypeKind kind,
                                  const Probe& probe = {});

ConditionReport check_equivalence(const GrowthFunction& phi1, const GrowthFunction& phi2,
                                  const Probe& probe = {});

/// True if values.back() exceeds 1.05 times the median of the last
/// `window` entries (the series is read toward the edge being tested).
bool edge_growing(const std::vector<double>& toward_edge, std::size_t window);

}  // namespace orlab
