#include "orlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orlab/errors.hpp"

namespace orlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBracketTol = 1e-10;

}  // namespace

double modular(std::span<const double> a, const GridSpec& spec, const GrowthFunction& phi, double lambda) {
  if (!(lambda > 0)) throw Error(ErrorKind::DomainError, "modular needs lambda > 0");
  const double inv = 1.0 / lambda;
  const double h = spec.h();
  double acc = 0;
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j] == 0) continue;
    const double w = (j == 0 || j + 1 == n) ? 0.5 * h : h;
    acc += w * phi.eval(a[j] * inv);
  }
  return std::isnan(acc) ? kInf : acc;
}

double modular(const GridFunction& f, const GrowthFunction& phi, double lambda) {
  const auto a = f.abs_values();
  return modular(a, f.spec(), phi, lambda);
}

NormResult luxemburg_norm(std::span<const double> a, const GridSpec& spec, const GrowthFunction& phi) {
  NormResult res;
  double l1 = 0;
  for (std::size_t j = 0; j < a.size(); ++j) l1 += spec.weight(j) * a[j];
  if (l1 == 0) return res;

  auto m = [&](double lam) {
    ++res.iterations;
    return modular(a, spec, phi, lam);
  };
  double lo = l1, hi = l1;
  double mlo = m(l1), mhi = mlo;
  if (mlo > 1) {
    for (int k = 0; mhi > 1; ++k) {
      if (k > 2000) throw Error(ErrorKind::NonFinite, "modular stays above 1 for every probed lambda");
      lo = hi, mlo = mhi;
      hi *= 2;
      mhi = m(hi);
    }
  } else {
    for (int k = 0; mlo <= 1; ++k) {
      if (k > 2000) throw Error(ErrorKind::NonFinite, "modular bracket search underflowed");
      hi = lo, mhi = mlo;
      lo *= 0.5;
      mlo = m(lo);
    }
  }

  int steps = 0;
  auto update = [&](double x) {
    const double mx = m(x);
    if (mx > 1) {
      lo = x, mlo = mx;
      return true;
    }
    hi = x, mhi = mx;
    return false;
  };
  while (hi - lo > kBracketTol * hi) {
    ++steps;
    double x = std::sqrt(lo * hi);
    if (steps < 60 && std::isfinite(mlo) && mhi > 0) {
      const double ulo = std::log(lo), uhi = std::log(hi);
      const double vlo = std::log(mlo), vhi = std::log(mhi);
      const double cand = std::exp(ulo + (0 - vlo) * (uhi - ulo) / (vhi - vlo));
      if (cand > lo && cand < hi) x = cand;
    }
    const bool moved_lo = update(x);
    // a secant step lands next to the root; probe just across it to collapse the stale side
    const double y = moved_lo ? x * (1 + 0.5 * kBracketTol) : x * (1 - 0.5 * kBracketTol);
    if (y > lo && y < hi) update(y);
  }
  res.value = hi;
  res.lo = lo;
  res.hi = hi;
  res.modular_at_value = mhi;
  return res;
}

NormResult luxemburg_norm(const GridFunction& f, const GrowthFunction& phi) {
  const auto a = f.abs_values();
  return luxemburg_norm(a, f.spec(), phi);
}

DualNormResult orlicz_dual_norm(std::span<const double> a, const GridSpec& spec, const GrowthFunction& phi,
                                const GrowthFunction& psi) {
  DualNormResult res;
  const double nf = luxemburg_norm(a, spec, phi).value;
  if (nf == 0) return res;

  std::vector<double> g(a.size());
  auto ratio = [&](double lk) {
    ++res.evaluations;
    const double k = std::exp(lk);
    double pairing = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      g[j] = a[j] == 0 ? 0.0 : phi.derivative(k * a[j]);
      if (!std::isfinite(g[j])) return -kInf;
      pairing += spec.weight(j) * a[j] * g[j];
    }
    const double ng = luxemburg_norm(g, spec, psi).value;
    return ng > 0 ? pairing / ng : -kInf;
  };

  constexpr int kGrid = 25;
  const double l0 = std::log(1e-2 / nf), l1 = std::log(1e2 / nf);
  std::vector<double> lk(kGrid), val(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    lk[i] = l0 + (l1 - l0) * i / (kGrid - 1);
    val[i] = ratio(lk[i]);
  }
  const auto best = static_cast<int>(std::max_element(val.begin(), val.end()) - val.begin());
  double a_ = lk[std::max(best - 1, 0)], b_ = lk[std::min(best + 1, kGrid - 1)];
  double best_l = lk[best], best_v = val[best];
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double c = b_ - gr * (b_ - a_), d = a_ + gr * (b_ - a_);
  double fc = ratio(c), fd = ratio(d);
  for (int it = 0; it < 40 && b_ - a_ > 1e-7; ++it) {
    if (fc > fd) {
      b_ = d, d = c, fd = fc;
      c = b_ - gr * (b_ - a_);
      fc = ratio(c);
    } else {
      a_ = c, c = d, fc = fd;
      d = a_ + gr * (b_ - a_);
      fd = ratio(d);
    }
  }
  if (fc > best_v) best_v = fc, best_l = c;
  if (fd > best_v) best_v = fd, best_l = d;
  res.value = best_v;
  res.best_k = std::exp(best_l);
  return res;
}

DualNormResult orlicz_dual_norm(const GridFunction& f, const GrowthFunction& phi) {
  if (f.is_zero()) return {};
  GrowthFunction psi = [&] {
    try {
      return complementary(phi);
    } catch (const Error& e) {
      throw Error(ErrorKind::ConjugateUnavailable, e.what());
    }
  }();
  const auto a = f.abs_values();
  return orlicz_dual_norm(a, f.spec(), phi, psi);
}

HolderResult holder_pairing(const GridFunction& f, const GridFunction& g, const GrowthFunction& phi) {
  require_same_grid(f, g);
  HolderResult res;
  const auto af = f.abs_values(), ag = g.abs_values();
  for (std::size_t j = 0; j < af.size(); ++j) res.pairing += f.spec().weight(j) * af[j] * ag[j];
  if (res.pairing == 0 && g.is_zero()) return res;
  const auto psi = complementary(phi);
  res.bound = 2 * luxemburg_norm(af, f.spec(), phi).value * luxemburg_norm(ag, g.spec(), psi).value;
  res.ok = res.pairing <= res.bound + 1e-9;
  return res;
}

double modular_layercake(const GridFunction& f, const GrowthFunction& phi, int lambda_points) {
  const auto a = f.abs_values();
  std::vector<std::pair<double, double>> vw;  // (|f|, weight), nonzero only
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > 0) vw.emplace_back(a[j], f.spec().weight(j));
  if (vw.empty()) return 0.0;
  std::sort(vw.begin(), vw.end());
  // tail[i] = total weight of entries with index >= i
  std::vector<double> vals(vw.size()), tail(vw.size() + 1, 0.0);
  for (std::size_t i = vw.size(); i-- > 0;) {
    vals[i] = vw[i].first;
    tail[i] = tail[i + 1] + vw[i].second;
  }
  auto distribution = [&](double lam) {
    const auto idx = static_cast<std::size_t>(std::upper_bound(vals.begin(), vals.end(), lam) - vals.begin());
    return tail[idx];
  };

  const double amax = vals.back();
  std::vector<double> knots(vals);
  const double g0 = std::log(amax * 1e-9), g1 = std::log(amax);
  for (int i = 0; i < lambda_points; ++i) knots.push_back(std::exp(g0 + (g1 - g0) * i / (lambda_points - 1)));
  knots.push_back(0.0);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  while (!knots.empty() && knots.back() > amax) knots.pop_back();

  const double gx = 0.5 / std::sqrt(3.0);
  double total = 0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i], hi = knots[i + 1];
    const double mid = 0.5 * (lo + hi), half = hi - lo;
    const double d = distribution(mid);
    if (d == 0) continue;
    const double integral = 0.5 * half * (phi.derivative(mid - gx * half) + phi.derivative(mid + gx * half));
    total += d * integral;
  }
  return total;
}

}  // namespace orlab
