#include "orlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <tuple>
#include <functional>

#include "orlab/errors.hpp"
#include "orlab/growth_checks.hpp"
#include "orlab/parallel.hpp"

namespace orlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

int parity_sign(int j) { return (j % 2 == 0) ? 1 : -1; }

// integer offset 3 beta (-1)^j linking the level-j and level-(j+1) grids
std::int64_t child_offset(Beta b, int j) { return b == Beta::Third ? parity_sign(j) : 0; }

}  // namespace

double beta_value(Beta b) { return b == Beta::Zero ? 0.0 : 1.0 / 3.0; }

Beta parse_beta(const std::string& s) {
  if (s == "0") return Beta::Zero;
  if (s == "1/3") return Beta::Third;
  throw Error(ErrorKind::ParseError, "beta must be 0 or 1/3, got '" + s + "'");
}

// (3k + 3 beta (-1)^j) / 3 rounds to the same double at every level up to the
// power-of-two scale, so shared endpoints of nested intervals compare equal
double DyadicInterval::left() const {
  const std::int64_t b3 = beta == Beta::Third ? parity_sign(j) : 0;
  return std::ldexp(static_cast<double>(3 * k + b3) / 3.0, -j);
}
double DyadicInterval::right() const {
  const std::int64_t b3 = beta == Beta::Third ? parity_sign(j) : 0;
  return std::ldexp(static_cast<double>(3 * (k + 1) + b3) / 3.0, -j);
}
double DyadicInterval::length() const { return std::ldexp(1.0, -j); }

DyadicInterval DyadicInterval::parent() const {
  const std::int64_t c = child_offset(beta, j - 1);
  const std::int64_t num = k - c;
  const std::int64_t kp = num >= 0 ? num / 2 : -((-num + 1) / 2);
  return {beta, j - 1, kp};
}

DyadicInterval DyadicInterval::child(int which) const {
  return {beta, j + 1, 2 * k + child_offset(beta, j) + which};
}

DyadicInterval DyadicInterval::containing(Beta beta, int j, double x) {
  const double u = std::ldexp(x, j) - parity_sign(j) * beta_value(beta);
  auto k = static_cast<std::int64_t>(std::floor(u));
  DyadicInterval d{beta, j, k};
  // guard the floor against rounding of the shifted coordinate
  while (d.left() > x) --d.k;
  while (d.right() <= x) ++d.k;
  return d;
}

DyadicCover dyadic_cover(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorKind::InvalidArgument, "dyadic_cover needs a < b");
  const double len = b - a;
  DyadicCover best;
  bool found = false;
  for (Beta beta : {Beta::Zero, Beta::Third}) {
    // one of the two grids always covers within ratio 6; the other may never
    // cover (beta = 0 has no interval straddling 0), so stop at 16 |I|
    for (int j = static_cast<int>(std::floor(-std::log2(len))) + 1; std::ldexp(1.0, -j) <= 16 * len; --j) {
      if (std::ldexp(1.0, -j) < len) continue;
      auto J = DyadicInterval::containing(beta, j, a);
      if (J.right() < b) continue;
      // beta = 0 is searched first, so equal lengths keep it
      if (!found || J.length() < best.interval.length()) {
        best = {J, J.length() / len};
        found = true;
      }
      break;
    }
  }
  return best;
}

// --- piecewise constant ---------------------------------------------------

PiecewiseConstant PiecewiseConstant::from_values(std::vector<double> breaks, const std::vector<double>& values) {
  PiecewiseConstant f;
  f.breaks = std::move(breaks);
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "plateau value is not finite");
    f.log_mag.push_back(v == 0 ? -kInf : std::log(std::abs(v)));
    f.sign.push_back(v < 0 ? -1 : (v > 0 ? 1 : 0));
  }
  f.validate();
  return f;
}

void PiecewiseConstant::validate() const {
  if (breaks.size() != log_mag.size() + 1 || sign.size() != log_mag.size() || log_mag.empty())
    throw Error(ErrorKind::InvalidArgument, "piecewise constant needs n + 1 breakpoints for n plateaus");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1]) || !std::isfinite(breaks[i + 1]))
      throw Error(ErrorKind::InvalidArgument, "breakpoints must be finite and strictly increasing");
}

double PiecewiseConstant::log_abs_at(double x) const {
  if (x < breaks.front() || x >= breaks.back()) return -kInf;
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  return log_mag[static_cast<std::size_t>(it - breaks.begin()) - 1];
}

double PiecewiseConstant::log_integral(double a, double b) const {
  double acc = -kInf;
  for (std::size_t i = 0; i < pieces(); ++i) {
    const double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
    if (hi > lo && log_mag[i] > -kInf) acc = logaddexp(acc, log_mag[i] + std::log(hi - lo));
  }
  return acc;
}

double PiecewiseConstant::max_log_mag() const { return *std::max_element(log_mag.begin(), log_mag.end()); }

double log_hl_maximal(const PiecewiseConstant& f, double x) {
  const auto& br = f.breaks;
  // the average over [a, b] is monotone in each endpoint between breakpoints,
  // so the sup is at breakpoints or at the limit a, b -> x
  double best = f.log_abs_at(x);
  if (std::binary_search(br.begin(), br.end(), x)) {
    const auto i = static_cast<std::size_t>(std::lower_bound(br.begin(), br.end(), x) - br.begin());
    if (i > 0) best = std::max(best, f.log_mag[i - 1]);
  }
  // left candidates a < x with ln int_a^x, right candidates b > x with ln int_x^b
  std::vector<std::pair<double, double>> L, R;
  {
    double acc = -kInf, prev = x;
    for (std::size_t i = br.size(); i-- > 0;) {
      if (br[i] >= x) continue;
      acc = logaddexp(acc, f.log_integral(br[i], prev));
      L.emplace_back(br[i], acc);
      prev = br[i];
    }
  }
  {
    double acc = -kInf, prev = x;
    for (double b : br) {
      if (b <= x) continue;
      acc = logaddexp(acc, f.log_integral(prev, b));
      R.emplace_back(b, acc);
      prev = b;
    }
  }
  for (const auto& [a, la] : L) {
    best = std::max(best, la - std::log(x - a));
    for (const auto& [b, lb] : R) best = std::max(best, logaddexp(la, lb) - std::log(b - a));
  }
  for (const auto& [b, lb] : R) best = std::max(best, lb - std::log(b - x));
  return best;
}

double log_dyadic_maximal(const PiecewiseConstant& f, Beta beta, double x) {
  double min_piece = kInf;
  for (std::size_t i = 0; i < f.pieces(); ++i) min_piece = std::min(min_piece, f.breaks[i + 1] - f.breaks[i]);
  const double span = std::max(x, f.breaks.back()) - std::min(x, f.breaks.front());
  const double log_total = f.log_integral(f.breaks.front(), f.breaks.back());
  // below 2^-40 of the shortest piece only the plateau at x (the j -> inf limit) is left
  double best = f.log_abs_at(x);
  int j = static_cast<int>(std::ceil(-std::log2(min_piece))) + 40;
  for (;; --j) {
    const auto d = DyadicInterval::containing(beta, j, x);
    best = std::max(best, f.log_average(d.left(), d.right()));
    const double len = d.length();
    if (log_total - std::log(len) <= best) break;  // larger intervals average at most total/len
    if (len > std::ldexp(span + 1, 60)) break;
  }
  return best;
}

std::vector<double> hl_maximal(const PiecewiseConstant& f, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = log_hl_maximal(f, xs[i]); });
  return out;
}

std::vector<double> dyadic_maximal(const PiecewiseConstant& f, Beta beta, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = log_dyadic_maximal(f, beta, xs[i]); });
  return out;
}

// --- grid paths -----------------------------------------------------------

namespace {

// cumulative integral of the cell step function |f|
struct CellIntegral {
  double e0, h;
  std::vector<double> abs, cum;

  explicit CellIntegral(const GridFunction& f) : e0(f.spec().x(0) - 0.5 * f.spec().h()), h(f.spec().h()), abs(f.abs_values()) {
    cum.resize(abs.size() + 1, 0.0);
    for (std::size_t i = 0; i < abs.size(); ++i) cum[i + 1] = cum[i] + h * abs[i];
  }
  double at(double x) const {
    const double u = (x - e0) / h;
    if (u <= 0) return 0;
    if (u >= static_cast<double>(abs.size())) return cum.back();
    const auto i = static_cast<std::size_t>(u);
    return cum[i] + (u - static_cast<double>(i)) * h * abs[i];
  }
  double average(double a, double b) const { return (at(b) - at(a)) / (b - a); }
};

// levels j with h <= 2^-j <= 4L
std::pair<int, int> level_range(const GridSpec& spec) {
  const int j_top = static_cast<int>(std::ceil(-std::log2(4 * spec.L) - 1e-12));
  const int j_bottom = static_cast<int>(std::floor(-std::log2(spec.h()) + 1e-12));
  return {j_top, j_bottom};
}

}  // namespace

GridFunction hl_maximal(const GridFunction& f) {
  const auto& spec = f.spec();
  const CellIntegral C(f);
  // extents in whole cells on each side: 0 and a 2^{1/4} geometric ladder up to 4L
  std::vector<std::size_t> ext{0};
  const double max_cells = 4 * spec.L / spec.h();
  for (int m = 0;; ++m) {
    const auto c = static_cast<std::size_t>(std::floor(std::pow(2.0, m / 4.0)));
    if (static_cast<double>(c) > max_cells) break;
    if (c != ext.back()) ext.push_back(c);
  }
  std::vector<double> out(spec.N);
  parallel_for(spec.N, [&](std::size_t j) {
    const double lo = C.e0 + static_cast<double>(j) * spec.h();
    auto avg = [&](long p, long q) {
      if (p < 0 || q < 0 || static_cast<double>(p + q + 1) > max_cells) return -1.0;
      return C.average(lo - static_cast<double>(p) * spec.h(), lo + static_cast<double>(q + 1) * spec.h());
    };
    // the objective can be multimodal (one peak per bump in reach), so every
    // local maximum of the ladder table seeds a coordinate ascent with halving steps
    const std::size_t E = ext.size();
    std::vector<double> tab(E * E);
    for (std::size_t u = 0; u < E; ++u)
      for (std::size_t w = 0; w < E; ++w) tab[u * E + w] = avg(static_cast<long>(ext[u]), static_cast<long>(ext[w]));
    std::vector<std::tuple<double, long, long>> rows;
    for (std::size_t u = 0; u < E; ++u)
      for (std::size_t w = 0; w < E; ++w) {
        const double v = tab[u * E + w];
        if (v < 0) continue;
        const bool peak = (u == 0 || tab[(u - 1) * E + w] <= v) && (u + 1 == E || tab[(u + 1) * E + w] <= v) &&
                          (w == 0 || tab[u * E + w - 1] <= v) && (w + 1 == E || tab[u * E + w + 1] <= v);
        if (peak) rows.emplace_back(v, static_cast<long>(ext[u]), static_cast<long>(ext[w]));
      }
    std::sort(rows.begin(), rows.end(), std::greater<>());
    double best = 0;
    for (std::size_t r = 0; r < std::min<std::size_t>(rows.size(), 8); ++r) {
      auto [v0, bp, bq] = rows[r];
      double cur = v0;
      for (long step = std::max<long>(1, std::max(bp, bq) / 4);; step /= 2) {
        for (bool moved = true; moved;) {
          moved = false;
          for (auto [dp, dq] : {std::pair{step, 0L}, {-step, 0L}, {0L, step}, {0L, -step}}) {
            const double v = avg(bp + dp, bq + dq);
            if (v > cur) cur = v, bp += dp, bq += dq, moved = true;
          }
        }
        if (step == 1) break;
      }
      best = std::max(best, cur);
    }
    out[j] = best;
  });
  return GridFunction(spec, out, DecayClass::RationalDecay);
}

GridFunction dyadic_maximal(const GridFunction& f, Beta beta) {
  const auto& spec = f.spec();
  const CellIntegral C(f);
  const auto [j_top, j_bottom] = level_range(spec);
  std::vector<double> out(spec.N);
  parallel_for(spec.N, [&](std::size_t i) {
    const double x = spec.x(i);
    double best = 0;
    for (int j = j_top; j <= j_bottom; ++j) {
      const auto d = DyadicInterval::containing(beta, j, x);
      best = std::max(best, C.average(d.left(), d.right()));
    }
    out[i] = best;
  });
  return GridFunction(spec, out, DecayClass::RationalDecay);
}

std::vector<DyadicInterval> stopping_intervals(const GridFunction& f, double lambda, Beta beta) {
  if (!(lambda > 0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  const auto& spec = f.spec();
  const CellIntegral C(f);
  const auto [j_top, j_bottom] = level_range(spec);
  const double lo = C.e0, hi = C.e0 + static_cast<double>(spec.N) * spec.h();
  std::vector<DyadicInterval> out;
  std::vector<DyadicInterval> stack;
  for (auto d = DyadicInterval::containing(beta, j_top, lo); d.left() < hi; ++d.k) {
    if (C.average(d.left(), d.right()) > lambda)
      throw Error(ErrorKind::NotLocalized, "an interval of the largest searched length averages above lambda");
    stack.push_back(d);
  }
  while (!stack.empty()) {
    const auto d = stack.back();
    stack.pop_back();
    if (d.j >= j_bottom) continue;
    for (int w = 0; w < 2; ++w) {
      const auto c = d.child(w);
      if (c.right() <= lo || c.left() >= hi) continue;
      if (C.average(c.left(), c.right()) > lambda)
        out.push_back(c);
      else
        stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.left() < b.left(); });
  return out;
}

std::vector<DyadicInterval> stopping_intervals(const PiecewiseConstant& f, double lambda, Beta beta) {
  if (!(lambda > 0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  f.validate();
  const double ll = std::log(lambda);
  const double a = f.breaks.front(), b = f.breaks.back();
  // climb until every interval meeting the hull averages at most lambda
  int j = static_cast<int>(std::floor(-std::log2(b - a)));
  std::vector<DyadicInterval> top;
  for (;; --j) {
    top.clear();
    bool ok = true;
    for (auto d = DyadicInterval::containing(beta, j, a); d.left() < b; ++d.k) {
      if (f.log_average(d.left(), d.right()) > ll) ok = false;
      top.push_back(d);
    }
    if (ok) break;
  }
  auto inside_one_piece = [&](const DyadicInterval& d) {
    const auto it = std::upper_bound(f.breaks.begin(), f.breaks.end(), d.left());
    return it == f.breaks.end() || *it >= d.right();
  };
  std::vector<DyadicInterval> out, stack(top.begin(), top.end());
  while (!stack.empty()) {
    const auto d = stack.back();
    stack.pop_back();
    // below this point every descendant has the same average, already <= lambda
    if (inside_one_piece(d)) continue;
    for (int w = 0; w < 2; ++w) {
      const auto c = d.child(w);
      if (c.right() <= a || c.left() >= b) continue;
      const double avg = f.log_average(c.left(), c.right());
      if (avg > ll)
        out.push_back(c);
      else if (avg > -kInf)
        stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.left() < y.left(); });
  return out;
}

double hl_superlevel_measure(const PiecewiseConstant& f, double log_lambda) {
  f.validate();
  // M_HL f(x) > lambda iff some [a, b] around x has G(b) > G(a), G(s) = F(s) - lambda s;
  // values are rescaled by the largest plateau, which leaves the set unchanged
  const double shift = f.max_log_mag();
  if (shift == -kInf) return 0.0;
  const double lam = std::exp(log_lambda - shift);
  if (lam == 0) return kInf;
  const std::size_t n = f.pieces();
  const double p0 = f.breaks.front();
  std::vector<double> p(n + 1), G(n + 1);
  double F = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    p[i] = f.breaks[i] - p0;
    if (i > 0) F += std::exp(f.log_mag[i - 1] - shift) * (p[i] - p[i - 1]);
    G[i] = F - lam * p[i];
  }
  std::vector<double> rmax(n + 1), lmin(n + 1);
  rmax[n] = G[n];
  for (std::size_t i = n; i-- > 0;) rmax[i] = std::max(G[i], rmax[i + 1]);
  lmin[0] = G[0];
  for (std::size_t i = 1; i <= n; ++i) lmin[i] = std::min(G[i], lmin[i - 1]);

  double measure = (rmax[0] - G[0]) / lam + (G[n] - lmin[n]) / lam;
  for (std::size_t i = 0; i < n; ++i) {
    const double x0 = p[i], x1 = p[i + 1];
    const double g0 = G[i], g1 = G[i + 1];
    const double R = rmax[i + 1], Lm = lmin[i];
    auto g = [&](double x) { return g0 + (g1 - g0) * (x - x0) / (x1 - x0); };
    auto D = [&](double x) { return std::max(g(x), R) - std::min(g(x), Lm); };
    std::vector<double> cuts{x0, x1};
    for (double level : {R, Lm}) {
      if ((g0 - level) * (g1 - level) < 0) cuts.push_back(x0 + (level - g0) / (g1 - g0) * (x1 - x0));
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double a = cuts[c], b = cuts[c + 1];
      if (b <= a) continue;
      const double da = D(a), db = D(b);
      if (da > 0 && db > 0)
        measure += b - a;
      else if (da > 0 || db > 0)
        measure += (b - a) * std::max(da, db) / std::abs(db - da);
    }
  }
  return measure;
}

double weak_type_mass(const PiecewiseConstant& f, double log_lambda) {
  double acc = -kInf;
  for (std::size_t i = 0; i < f.pieces(); ++i)
    if (f.log_mag[i] > log_lambda) acc = logaddexp(acc, f.log_mag[i] + std::log(f.breaks[i + 1] - f.breaks[i]));
  return std::exp(acc - log_lambda);
}

double superlevel_measure(const GridFunction& g, double lambda) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (std::abs(g[j]) > lambda) ++count;
  return static_cast<double>(count) * g.spec().h();
}

// --- half-plane maximal functions -----------------------------------------

GridFunction radial_maximal(const HalfPlaneField& field) {
  if (field.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty height lattice");
  std::vector<double> out(field.spec.N, 0.0);
  for (const auto& row : field.values)
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = std::max(out[j], std::abs(row[j]));
  return GridFunction(field.spec, out, DecayClass::RationalDecay);
}

GridFunction nontangential_maximal(const HalfPlaneField& field, const ConeSpec& cone) {
  if (!(cone.alpha >= 0)) throw Error(ErrorKind::InvalidArgument, "cone aperture must be >= 0");
  if (field.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty height lattice");
  const std::size_t N = field.spec.N;
  const double h = field.spec.h();
  std::vector<double> out(N, 0.0);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const auto& row = field.values[i];
    // nodes with |x_m - x_j| < alpha y; the vertical through x_j is always included
    const double r = cone.alpha * field.lattice.heights[i] / h;
    auto w = static_cast<std::size_t>(std::ceil(r));
    if (w > 0 && static_cast<double>(w) >= r) --w;
    w = std::min(w, N);
    // sliding window maximum
    std::deque<std::size_t> dq;
    std::size_t next = 0;
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t hi = std::min(N - 1, j + w);
      for (; next <= hi; ++next) {
        while (!dq.empty() && std::abs(row[dq.back()]) <= std::abs(row[next])) dq.pop_back();
        dq.push_back(next);
      }
      while (dq.front() + w < j) dq.pop_front();
      out[j] = std::max(out[j], std::abs(row[dq.front()]));
    }
  }
  return GridFunction(field.spec, out, DecayClass::RationalDecay);
}

// --- counterexample -------------------------------------------------------

namespace {

constexpr double kDiniStart = -27.631021115928547;  // ln 1e-12
constexpr double kDiniStep = 0.01;

// ln Phi(e^u) - u - ln(e(e^u) - 1): the integral below e^u when Phi is a power law there
double dini_remainder(const GrowthFunction& phi, double u) {
  const double e = phi.elasticity(std::exp(u));
  if (!(e > 1)) return kInf;
  return phi.log_eval_log(u) - u - std::log(e - 1);
}

// running ln int_0^{e^u} Phi(s)/s^2 ds
struct LogDini {
  const GrowthFunction* phi;
  double u, acc;

  explicit LogDini(const GrowthFunction& p) : phi(&p), u(kDiniStart), acc(dini_remainder(p, kDiniStart)) {}

  double g(double v) const { return phi->log_eval_log(v) - v; }
  void advance_to(double target) {
    if (target <= u) return;
    const int n = std::max(1, static_cast<int>(std::ceil((target - u) / kDiniStep)));
    const double du = (target - u) / n;
    double ga = g(u);
    for (int k = 0; k < n; ++k) {
      const double a = u + k * du, b = a + du;
      const double gb = g(b);
      const double seg = logaddexp(logaddexp(ga, std::log(4.0) + g(0.5 * (a + b))), gb) + std::log(du / 6);
      acc = logaddexp(acc, seg);
      ga = gb;
    }
    u = target;
  }
};

}  // namespace

double log_dini_at_log(const GrowthFunction& phi, double u) {
  if (u <= kDiniStart) return dini_remainder(phi, u);
  LogDini d(phi);
  d.advance_to(u);
  return d.acc;
}

PiecewiseConstant counterexample_term(const CounterexampleTerm& term) {
  const double len = std::exp(term.log_length);
  if (!(len > 0)) throw Error(ErrorKind::RangeError, "|I_k| underflows double");
  PiecewiseConstant f;
  f.breaks = {0.0, len};
  f.log_mag = {std::log(12.0) + term.log_height};
  f.sign = {1};
  return f;
}

CounterexampleReport build_counterexample(const GrowthFunction& phi1, const GrowthFunction& phi2, int terms,
                                          double log_cap) {
  if (terms < 1) throw Error(ErrorKind::InvalidArgument, "need at least one term");
  if (check_dini_domination(phi1, phi2).satisfied)
    throw Error(ErrorKind::GateFailed, "Dini domination holds for " + phi1.spec() + " / " + phi2.spec() +
                                           "; there is no counterexample to build");
  CounterexampleReport rep;
  rep.phi1 = phi1.spec();
  rep.phi2 = phi2.spec();
  const double ln2 = std::numbers::ln2;
  constexpr double kScan = 0.05;
  double log_a = -kInf;  // a_1 = 0
  for (int k = 1; k <= terms; ++k) {
    const double rhs_const = 2 * k * ln2;
    // D_2(T) >= 4^k Phi_1(T) / T with T = 2^k t_k
    auto margin = [&](double U, double log_d2) { return log_d2 - (rhs_const + phi1.log_eval_log(U) - U); };
    double U = std::numeric_limits<double>::quiet_NaN();
    {
      LogDini d(phi2);
      d.advance_to(0.0);
      double prev = 0.0;
      LogDini prev_state = d;
      for (double u = 0.0; u <= log_cap; u += kScan) {
        d.advance_to(u);
        if (margin(u, d.acc) >= 0) {
          double lo = prev, hi = u;
          if (u == 0.0) lo = hi;
          for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            LogDini m = prev_state;
            m.advance_to(mid);
            (margin(mid, m.acc) >= 0 ? hi : lo) = mid;
          }
          U = hi;
          break;
        }
        prev = u;
        prev_state = d;
      }
    }
    if (std::isnan(U)) {
      // pairs that fail as t -> 0
      double prev = 0.0;
      for (double u = -kScan; u >= -690; u -= kScan) {
        if (margin(u, log_dini_at_log(phi2, u)) >= 0) {
          double lo = u, hi = prev;
          for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            (margin(mid, log_dini_at_log(phi2, mid)) >= 0 ? lo : hi) = mid;
          }
          U = lo;
          break;
        }
        prev = u;
      }
    }
    if (std::isnan(U))
      throw Error(ErrorKind::SearchOverflow, "no t_k within the log cap for k = " + std::to_string(k) + " (reached k = " +
                                                 std::to_string(k - 1) + ")");
    CounterexampleTerm t;
    t.k = k;
    t.log_height = U;
    t.log_t = U - k * ln2;
    t.log_a = log_a;
    const double lphi1 = phi1.log_eval_log(U);
    t.log_length = -(k * ln2 + lphi1);
    t.log_modular_fk = lphi1 + t.log_length;
    t.log_modular_12fk = phi1.log_eval_log(U + std::log(12.0)) + t.log_length;
    const double ld2 = log_dini_at_log(phi2, U);
    t.log_maximal_lower = U + t.log_length + k * ln2 + lphi1 - t.log_t;
    t.log_maximal_lower_sharp = U + t.log_length + logaddexp(phi2.log_eval_log(U) - U, ld2);
    log_a = logaddexp(log_a, t.log_length);
    rep.records.push_back(t);
  }
  rep.terms = terms;
  for (std::size_t i = 1; i < rep.records.size(); ++i)
    rep.ratio_trend.push_back(std::exp(rep.records[i].log_maximal_lower - rep.records[i - 1].log_maximal_lower));
  return rep;
}

}  // namespace orlab
