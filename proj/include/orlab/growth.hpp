#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace orlab {

enum class Family { Power, PowerLog, QOverLog, ExpLike, TLog, Sampled };

std::string_view to_string(Family f);

/// Knot table for a sampled growth function: cubic Hermite interpolation of
/// ln Phi against ln t, with power-law extrapolation past both ends.
struct LogLogTable {
  std::vector<double> log_t;
  std::vector<double> log_phi;
  std::vector<double> slope;  // d ln Phi / d ln t at each knot
};

/// An immutable growth function Phi : [0, inf) -> [0, inf).
///
/// Every family carries a positive scale c, so power:p=2,c=0.5 is t^2/2.
/// Copies share the underlying state; evaluation is thread-safe.
class GrowthFunction {
 public:
  static GrowthFunction power(double p, double c = 1.0);
  static GrowthFunction power_log(double p, double beta, double c = 1.0);
  static GrowthFunction q_over_log(double q, double c = 1.0);
  static GrowthFunction exp_like(double c = 1.0);
  static GrowthFunction t_log(double c = 1.0);
  /// Builds from a knot table. The table must be strictly increasing in both
  /// coordinates.
  static GrowthFunction sampled(LogLogTable table, std::string label);
  /// Builds from (t, Phi(t)) samples with Phi > 0; slopes come from a
  /// monotone (PCHIP) rule in log-log coordinates.
  static GrowthFunction from_samples(const std::vector<double>& t, const std::vector<double>& phi,
                                     std::string label);
  /// Reads a two-column whitespace or comma separated text file.
  static GrowthFunction load_file(const std::string& path);

  /// Parses `power:p=2`, `powerlog:p=2,beta=1`, `qoverlog:q=2`, `explike`,
  /// `tlog`, `sampled:file=path`; each accepts an optional `c=` scale.
  static GrowthFunction parse(std::string_view spec);

  double eval(double t) const;
  double operator()(double t) const { return eval(t); }
  /// ln Phi(t); finite wherever Phi(t) > 0 even if Phi(t) overflows.
  double log_eval(double t) const;
  /// ln Phi(e^u), usable far past the range of double t (+inf for explike).
  double log_eval_log(double u) const;
  double derivative(double t) const;
  /// t Phi'(t) / Phi(t).
  double elasticity(double t) const;
  /// Phi^{-1}(s) for s >= 0.
  double inverse(double s) const;

  Family family() const;
  double p() const;     // Power / PowerLog exponent, QOverLog q
  double beta() const;  // PowerLog log exponent
  double scale() const;
  const LogLogTable* table() const;

  bool declared_convex() const;
  bool declared_n_function() const;
  std::string spec() const;

  struct Impl;

 private:
  explicit GrowthFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Geometric probe grid used by all "for every t > 0" checks.
struct Probe {
  double t_min = 1e-8;
  double t_max = 1e8;
  int points = 4096;

  std::vector<double> grid() const;
  std::string describe() const;
};

/// Secant-slope monotonicity over consecutive probe nodes.
bool secant_convex(const GrowthFunction& phi, const Probe& probe = {});

enum class ConjugateMethod { Auto, Numeric };

/// Young conjugate Psi(s) = sup_t (s t - Phi(t)). Closed form for Power with
/// p > 1 under Auto; otherwise a sampled table of 2048 knots.
GrowthFunction complementary(const GrowthFunction& phi, ConjugateMethod method = ConjugateMethod::Auto);

}  // namespace orlab
