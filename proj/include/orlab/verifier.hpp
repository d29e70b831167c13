#pragma once

#include <map>
#include <string>
#include <vector>

#include "orlab/grid.hpp"
#include "orlab/growth.hpp"
#include "orlab/halfplane.hpp"
#include "orlab/maximal.hpp"

namespace orlab {

enum class Relation { LessEqual, Close, Flag };

struct Check {
  std::string name;
  std::string anchor;  // the statement being tested
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  Relation relation = Relation::LessEqual;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string theorem;
  std::vector<Check> checks;
  bool overall = true;
  std::map<std::string, std::string> config;  // echo of every resolved setting
  std::vector<std::string> notes;
  /// Set when a precondition gate failed and a degenerate demonstration ran instead.
  std::string gate;

  /// lhs <= rhs + tolerance.
  Check& le(const std::string& name, const std::string& anchor, double lhs, double rhs, double tol);
  /// |lhs - rhs| <= tolerance.
  Check& close(const std::string& name, const std::string& anchor, double lhs, double rhs, double tol);
  /// A boolean outcome, with lhs/rhs kept for evidence.
  Check& flag(const std::string& name, const std::string& anchor, bool ok, double lhs, double rhs);
  void finalize();
};

/// Named tolerances; every entry can be overridden by a scenario.
class Tolerances {
 public:
  Tolerances();
  double operator()(const std::string& key) const;
  /// Throws UnknownKey for names that no check uses.
  void set(const std::string& key, double value);
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct VerifyConfig {
  GridSpec grid{};
  HeightLattice lattice = HeightLattice::dyadic();
  Tolerances tol;
  double alpha = 1.0;
  /// Cauchy check: manufacture the analytic boundary from Re f (off gives the
  /// raw f, which is the negative control when f is real).
  bool analytic_boundary = true;
  /// Partner function for the pairing identities.
  std::string partner = "gauss:s=1,c=0.5";
  int counterexample_terms = 3;
};

/// Grid values of the Luxemburg norm of every slice, finest height last.
std::vector<double> slice_norms(const HalfPlaneField& F, const GrowthFunction& phi);
/// sup over the lattice of slice norms (attained at the finest height when y -> norm is monotone).
double field_norm(const HalfPlaneField& F, const GrowthFunction& phi);

VerificationReport verify_poisson_representation(const GridFunction& f, const GrowthFunction& phi,
                                                 const VerifyConfig& cfg);
VerificationReport verify_measure_representation(const RadonMeasure& mu, const std::vector<GridFunction>& testfns,
                                                 const VerifyConfig& cfg);
VerificationReport verify_cauchy_representation(const GridFunction& f, const GrowthFunction& phi,
                                                const VerifyConfig& cfg);
/// Throws GateFailed when phi is not nabla_2.
VerificationReport verify_riesz_projection(const GridFunction& f, const GrowthFunction& phi, const VerifyConfig& cfg);
/// Throws GateFailed when phi is not nabla_2.
VerificationReport verify_maximal_equivalences(const GridFunction& f, const GrowthFunction& phi,
                                               const VerifyConfig& cfg);
/// Throws ConjugateUnavailable when Psi cannot be formed.
VerificationReport verify_duality(const GridFunction& f, const GridFunction& g, const GrowthFunction& phi,
                                  const VerifyConfig& cfg);

/// What runs instead of the Riesz or maximal checks when the nabla_2 gate
/// fails: the gate evidence plus the counterexample ratio trend when Dini
/// domination of phi over itself fails.
VerificationReport degenerate_demonstration(const std::string& theorem, const GrowthFunction& phi,
                                            const VerifyConfig& cfg);

/// Samples on radius x angle, angles uniform on [-pi, pi).
struct DiskField {
  std::vector<double> radii;
  std::size_t M = 0;
  std::vector<std::vector<cplx>> values;
  std::vector<std::vector<bool>> covered;  // false where the mapped point left the stored panel
};

struct CayleyResult {
  DiskField disk;
  VerificationReport report;
};

/// G(w) = F(i (1 - w)/(1 + w)) by bilinear interpolation in (x, ln y).
/// CoverageTooLow if more than 20% of a circle maps outside the panel.
CayleyResult cayley_transfer(const HalfPlaneField& field, const GrowthFunction& phi, const std::vector<double>& radii,
                             std::size_t angles = 1024, const Tolerances& tol = {});

/// Bilinear value of the field at x + i y; nullopt outside the stored panel.
std::optional<cplx> field_at(const HalfPlaneField& field, double x, double y);

}  // namespace orlab
