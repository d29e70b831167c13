#include "orlab/growth_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlab/errors.hpp"

namespace orlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  if (m == kInf) return kInf;
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

std::size_t decade_window(const Probe& probe) {
  const double decades = std::log10(probe.t_max / probe.t_min);
  const auto per = static_cast<std::size_t>(std::lround((probe.points - 1) / std::max(decades, 1e-9)));
  return std::clamp<std::size_t>(per, 8, static_cast<std::size_t>(probe.points));
}

// e(t) = e_inf + k/ln t through (t1, e1), (t2, e2); t2 is the edge node
double edge_extrapolate(double t1, double e1, double t2, double e2) {
  const double l1 = std::log(t1), l2 = std::log(t2);
  if (std::abs(l1) < 1 || std::abs(l2) < 1 || !std::isfinite(e1) || !std::isfinite(e2)) return e2;
  const double x1 = 1 / l1, x2 = 1 / l2;
  return e2 - (e1 - e2) / (x1 - x2) * x2;
}

// Classifies a ratio series over the probe; index 0 is t_min.
ConditionReport classify(const std::vector<double>& grid, const std::vector<double>& ratio,
                         const Probe& probe, bool test_low_edge, bool test_high_edge) {
  ConditionReport rep;
  rep.probe_grid = probe.describe();
  const auto it = std::max_element(ratio.begin(), ratio.end());
  rep.observed_max = *it;
  const std::size_t w = decade_window(probe);
  std::vector<double> rev(ratio.rbegin(), ratio.rend());
  const bool grow_hi = test_high_edge && edge_growing(ratio, w);
  const bool grow_lo = test_low_edge && edge_growing(rev, w);
  const bool finite = std::isfinite(rep.observed_max);
  rep.satisfied = finite && !grow_hi && !grow_lo;
  if (rep.satisfied) {
    rep.constant = rep.observed_max;
  } else if (grow_hi) {
    rep.witness = grid.back();
  } else if (grow_lo) {
    rep.witness = grid.front();
  } else {
    rep.witness = grid[static_cast<std::size_t>(it - ratio.begin())];
  }
  return rep;
}

void require_positive(const GrowthFunction& phi, const std::vector<double>& grid) {
  for (double t : grid) {
    if (!(phi.log_eval(t) > -kInf))
      throw Error(ErrorKind::DomainError, phi.spec() + " vanishes at t = " + std::to_string(t));
  }
}

}  // namespace

bool edge_growing(const std::vector<double>& toward_edge, std::size_t window) {
  if (toward_edge.empty()) return false;
  window = std::min(window, toward_edge.size());
  std::vector<double> tail(toward_edge.end() - static_cast<std::ptrdiff_t>(window), toward_edge.end());
  const double edge = tail.back();
  auto mid = tail.begin() + static_cast<std::ptrdiff_t>(tail.size() / 2);
  std::nth_element(tail.begin(), mid, tail.end());
  const double median = *mid;
  if (std::isnan(edge)) return true;
  if (edge == kInf) return true;
  return edge > 1.05 * median;
}

IndexReport estimate_indices(const GrowthFunction& phi, const Probe& probe) {
  const auto grid = probe.grid();
  require_positive(phi, grid);
  IndexReport rep;
  rep.t_min = probe.t_min;
  rep.t_max = probe.t_max;
  std::vector<double> e(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) e[i] = phi.elasticity(grid[i]);
  auto [mn, mx] = std::minmax_element(e.begin(), e.end());
  rep.grid_min = rep.a_lower = *mn;
  rep.grid_max = rep.b_upper = *mx;
  rep.argmin_t = grid[static_cast<std::size_t>(mn - e.begin())];
  rep.argmax_t = grid[static_cast<std::size_t>(mx - e.begin())];

  struct Edge {
    double t, value, extrapolated;
  };
  const double t_hi1 = probe.t_max / 10, t_lo1 = probe.t_min * 10;
  Edge edges[2] = {
      {probe.t_max, e.back(), edge_extrapolate(t_hi1, phi.elasticity(t_hi1), probe.t_max, e.back())},
      {probe.t_min, e.front(), edge_extrapolate(t_lo1, phi.elasticity(t_lo1), probe.t_min, e.front())},
  };
  for (const auto& ed : edges) {
    if (ed.extrapolated > 1.5 * ed.value) {
      rep.b_upper = kInf;
      rep.argmax_t = ed.t;
      continue;
    }
    if (ed.extrapolated < rep.a_lower) {
      rep.a_lower = ed.extrapolated;
      rep.argmin_t = ed.t;
    }
    if (ed.extrapolated > rep.b_upper) {
      rep.b_upper = ed.extrapolated;
      rep.argmax_t = ed.t;
    }
  }
  return rep;
}

ConditionReport check_delta2(const GrowthFunction& phi, const Probe& probe) {
  const auto grid = probe.grid();
  require_positive(phi, grid);
  std::vector<double> r(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) r[i] = std::exp(phi.log_eval(2 * grid[i]) - phi.log_eval(grid[i]));
  return classify(grid, r, probe, true, true);
}

std::vector<double> log_dini_integral(const GrowthFunction& phi, const std::vector<double>& grid) {
  std::vector<double> out(grid.size(), kInf);
  if (grid.empty()) return out;
  const double s0 = std::min(1e-12, grid.front());
  const double e0 = phi.elasticity(s0);
  if (!(e0 > 1)) return out;  // Phi(s)/s^2 not integrable at 0
  // power-law remainder over (0, s0]
  double acc = phi.log_eval(s0) - std::log(s0) - std::log(e0 - 1);
  auto g = [&](double u) { return phi.log_eval(std::exp(u)) - u; };
  auto simpson = [&](double ua, double ub, int n) {
    const double du = (ub - ua) / n;
    double lsum = -kInf;
    for (int k = 0; k < n; ++k) {
      const double a = ua + k * du, b = a + du;
      double seg = logaddexp(logaddexp(g(a), std::log(4.0) + g(0.5 * (a + b))), g(b));
      lsum = logaddexp(lsum, seg + std::log(du / 6));
    }
    return lsum;
  };
  double u_prev = std::log(s0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = std::log(grid[i]);
    if (u > u_prev) {
      const int n = std::max(1, static_cast<int>(std::ceil((u - u_prev) / 0.01)));
      acc = logaddexp(acc, simpson(u_prev, u, n));
    }
    out[i] = acc;
    u_prev = std::max(u_prev, u);
  }
  return out;
}

ConditionReport check_dini_domination(const GrowthFunction& phi1, const GrowthFunction& phi2,
                                      const Probe& probe) {
  const auto grid = probe.grid();
  require_positive(phi1, grid);
  require_positive(phi2, grid);
  const auto ld = log_dini_integral(phi2, grid);
  std::vector<double> r(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) r[i] = std::exp(std::log(grid[i]) - phi1.log_eval(grid[i]) + ld[i]);
  return classify(grid, r, probe, true, true);
}

Nabla2Report check_nabla2(const GrowthFunction& phi, const Probe& probe) {
  if (!phi.declared_n_function())
    throw Error(ErrorKind::NotNFunction, phi.spec() + " is not an N-function");
  Nabla2Report rep;
  const auto idx = estimate_indices(phi, probe);
  rep.index_check.probe_grid = probe.describe();
  rep.index_check.observed_max = idx.a_lower;
  rep.index_check.satisfied = idx.a_lower > 1 + 1e-3;
  if (rep.index_check.satisfied)
    rep.index_check.constant = idx.a_lower;
  else
    rep.index_check.witness = idx.argmin_t;
  rep.dini_check = check_dini_domination(phi, phi, probe);
  rep.consistent = rep.index_check.satisfied == rep.dini_check.satisfied;
  rep.satisfied = rep.index_check.satisfied && rep.dini_check.satisfied;
  return rep;
}

ConditionReport check_type_bounds(const GrowthFunction& phi, double exponent, TypeKind kind,
                                  const Probe& probe) {
  if (!(exponent > 0)) throw Error(ErrorKind::DomainError, "type exponent must be positive");
  constexpr int kPairs = 257;
  // s reaches far enough that s*t still covers the whole probe range
  Probe tp = kind == TypeKind::Upper ? Probe{1.0, std::max(probe.t_max, 10.0), kPairs}
                                     : Probe{std::min(probe.t_min, 0.1), 1.0, kPairs};
  Probe sp = kind == TypeKind::Upper ? Probe{probe.t_min / tp.t_max, probe.t_max, 2 * kPairs - 1}
                                     : Probe{probe.t_min, probe.t_max / tp.t_min, 2 * kPairs - 1};
  const auto sg = sp.grid();
  const auto tg = tp.grid();
  std::vector<double> ls(sg.size());
  for (std::size_t i = 0; i < sg.size(); ++i) ls[i] = phi.log_eval(sg[i]);
  for (double v : ls)
    if (!(v > -kInf)) throw Error(ErrorKind::DomainError, phi.spec() + " vanishes on the probe");
  std::vector<double> m(tg.size(), -kInf);
  for (std::size_t j = 0; j < tg.size(); ++j) {
    const double lt = std::log(tg[j]);
    for (std::size_t i = 0; i < sg.size(); ++i) {
      m[j] = std::max(m[j], phi.log_eval(sg[i] * tg[j]) - exponent * lt - ls[i]);
    }
    m[j] = std::exp(m[j]);
  }
  ConditionReport rep = kind == TypeKind::Upper ? classify(tg, m, tp, false, true) : classify(tg, m, tp, true, false);
  rep.probe_grid = "s: " + sp.describe() + "; t: " + tp.describe();
  return rep;
}

ConditionReport check_equivalence(const GrowthFunction& phi1, const GrowthFunction& phi2, const Probe& probe) {
  const auto grid = probe.grid();
  require_positive(phi1, grid);
  require_positive(phi2, grid);
  constexpr double kMaxLogC = 60.0;
  std::vector<double> need(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double l2 = phi2.log_eval(t);
    auto holds = [&](double lc) {
      const double c = std::exp(lc);
      const bool upper = l2 <= lc + phi1.log_eval(c * t);
      const bool lower = -lc + phi1.log_eval(t / c) <= l2;
      return upper && lower;
    };
    if (holds(0.0)) {
      need[i] = 1.0;
      continue;
    }
    if (!holds(kMaxLogC)) {
      need[i] = kInf;
      continue;
    }
    double lo = 0, hi = kMaxLogC;
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? hi : lo) = mid;
    }
    need[i] = std::exp(hi);
  }
  return classify(grid, need, probe, true, true);
}

}  // namespace orlab
