#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orlab/grid.hpp"
#include "orlab/growth.hpp"
#include "orlab/halfplane.hpp"

namespace orlab {

enum class Beta { Zero, Third };

double beta_value(Beta b);
Beta parse_beta(const std::string& s);  // "0" or "1/3"

/// 2^{-j}([0, 1) + k + (-1)^j beta).
struct DyadicInterval {
  Beta beta = Beta::Zero;
  int j = 0;
  std::int64_t k = 0;

  double left() const;
  double right() const;
  double length() const;
  bool contains(double x) const { return left() <= x && x < right(); }
  DyadicInterval parent() const;
  DyadicInterval child(int which) const;  // which = 0 (left) or 1 (right)
  static DyadicInterval containing(Beta beta, int j, double x);
  bool operator==(const DyadicInterval&) const = default;
};

struct DyadicCover {
  DyadicInterval interval;
  double ratio = 0;  // |J| / |I|
};

/// Smallest J over both grids with [a, b) inside J; ties prefer beta = 0, then smaller k.
DyadicCover dyadic_cover(double a, double b);

/// Step function with plateau values sign * exp(log_mag); zero outside [breaks.front(), breaks.back()).
struct PiecewiseConstant {
  std::vector<double> breaks;
  std::vector<double> log_mag;  // -inf for a zero plateau
  std::vector<int> sign;

  static PiecewiseConstant from_values(std::vector<double> breaks, const std::vector<double>& values);
  void validate() const;
  std::size_t pieces() const { return log_mag.size(); }
  /// ln |f(x)|.
  double log_abs_at(double x) const;
  /// ln of int_a^b |f|.
  double log_integral(double a, double b) const;
  /// ln |I|^{-1} int_I |f|.
  double log_average(double a, double b) const { return log_integral(a, b) - std::log(b - a); }
  double max_log_mag() const;
};

// Exact paths on a PiecewiseConstant, returning ln of the maximal function.
double log_hl_maximal(const PiecewiseConstant& f, double x);
double log_dyadic_maximal(const PiecewiseConstant& f, Beta beta, double x);
std::vector<double> hl_maximal(const PiecewiseConstant& f, const std::vector<double>& xs);
std::vector<double> dyadic_maximal(const PiecewiseConstant& f, Beta beta, const std::vector<double>& xs);

// Grid paths. f is read as a step function on the cells [x_j - h/2, x_j + h/2).
GridFunction hl_maximal(const GridFunction& f);
GridFunction dyadic_maximal(const GridFunction& f, Beta beta);

/// Maximal dyadic intervals with average > lambda. The grid path searches
/// lengths in [h, 4L] and throws NotLocalized when an interval of the top
/// length still averages above lambda.
std::vector<DyadicInterval> stopping_intervals(const GridFunction& f, double lambda, Beta beta);
std::vector<DyadicInterval> stopping_intervals(const PiecewiseConstant& f, double lambda, Beta beta);

/// |{x : M_HL f(x) > lambda}|, exact, with lambda given as ln lambda.
double hl_superlevel_measure(const PiecewiseConstant& f, double log_lambda);
/// lambda^{-1} int_{|f| > lambda} |f|, exact.
double weak_type_mass(const PiecewiseConstant& f, double log_lambda);
/// Node count times h.
double superlevel_measure(const GridFunction& g, double lambda);

struct ConeSpec {
  double alpha = 1.0;
};

GridFunction radial_maximal(const HalfPlaneField& field);
GridFunction nontangential_maximal(const HalfPlaneField& field, const ConeSpec& cone);

struct CounterexampleTerm {
  int k = 0;
  double log_t = 0;          // t_k
  double log_height = 0;     // 2^k t_k, the plateau of f_k
  double log_a = 0;          // a_k (left end of I_k)
  double log_length = 0;     // |I_k|
  double log_modular_fk = 0;     // Phi_1(2^k t_k) |I_k|
  double log_modular_12fk = 0;   // Phi_1(12 2^k t_k) |I_k|
  // lower bounds on int Phi_2(M_HL(12 f_k)) from the weak-type chain: the
  // closing line 2^k t_k |I_k| 2^k Phi_1(2^k t_k) / t_k, and the layer-cake
  // value T |I_k| (Phi_2(T)/T + int_0^T Phi_2(s)/s^2 ds) it is derived from
  double log_maximal_lower = 0;
  double log_maximal_lower_sharp = 0;
};

struct CounterexampleReport {
  std::string phi1, phi2;
  int terms = 0;
  std::vector<CounterexampleTerm> records;
  std::vector<double> ratio_trend;  // successive ratios of the maximal lower bounds
};

/// 12 f_k translated to start at 0. The I_k shrink below double spacing
/// around a_k after a few terms, so each term is handled on its own.
PiecewiseConstant counterexample_term(const CounterexampleTerm& term);

/// Requires check_dini_domination(phi1, phi2) to fail (GateFailed otherwise);
/// SearchOverflow when ln(2^k t_k) passes the cap.
CounterexampleReport build_counterexample(const GrowthFunction& phi1, const GrowthFunction& phi2, int terms,
                                          double log_cap = 1e4);

/// ln int_0^{e^u} Phi(s)/s^2 ds.
double log_dini_at_log(const GrowthFunction& phi, double u);

}  // namespace orlab
