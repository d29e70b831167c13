#include "orlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "orlab/errors.hpp"
#include "orlab/spec_string.hpp"

namespace orlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = std::numbers::e;
}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Power: return "power";
    case Family::PowerLog: return "powerlog";
    case Family::QOverLog: return "qoverlog";
    case Family::ExpLike: return "explike";
    case Family::TLog: return "tlog";
    case Family::Sampled: return "sampled";
  }
  return "?";
}

struct GrowthFunction::Impl {
  Family family = Family::Power;
  double p = 1.0;
  double beta = 0.0;
  double c = 1.0;
  double log_c = 0.0;
  int int_p = 0;  // 2 or 3 enables a multiply-only path
  std::string label;

  LogLogTable table;
  bool uniform = false;
  double dx = 0.0;
  bool convex = true;

  double sampled_log(double x) const;
};

double GrowthFunction::Impl::sampled_log(double x) const {
  const auto& xs = table.log_t;
  const auto& ys = table.log_phi;
  const auto& ms = table.slope;
  const std::size_t n = xs.size();
  if (x <= xs.front()) return ys.front() + ms.front() * (x - xs.front());
  if (x >= xs.back()) return ys.back() + ms.back() * (x - xs.back());
  std::size_t i;
  if (uniform) {
    i = static_cast<std::size_t>((x - xs.front()) / dx);
    i = std::min(i, n - 2);
    if (x < xs[i] && i > 0) --i;
    if (x > xs[i + 1] && i + 2 < n) ++i;
  } else {
    i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
    i = std::min(i, n - 2);
  }
  const double h = xs[i + 1] - xs[i];
  const double u = (x - xs[i]) / h;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * ys[i] + h10 * h * ms[i] + h01 * ys[i + 1] + h11 * h * ms[i + 1];
}

namespace {

std::shared_ptr<GrowthFunction::Impl> make_impl(Family fam, double p, double beta, double c) {
  if (!(c > 0) || !std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "scale c must be positive");
  auto impl = std::make_shared<GrowthFunction::Impl>();
  impl->family = fam;
  impl->p = p;
  impl->beta = beta;
  impl->c = c;
  impl->log_c = std::log(c);
  if (fam == Family::Power && (p == 2.0 || p == 3.0)) impl->int_p = static_cast<int>(p);
  return impl;
}

// small-t expansion of (e^t - t - 1) / (t^2/2)
double explike_series(double t) { return 1 + t / 3 + t * t / 12 + t * t * t / 60; }

void fritsch_carlson(LogLogTable& tb) {
  const std::size_t n = tb.log_t.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double delta = (tb.log_phi[i + 1] - tb.log_phi[i]) / (tb.log_t[i + 1] - tb.log_t[i]);
    if (delta == 0.0) {
      tb.slope[i] = tb.slope[i + 1] = 0.0;
      continue;
    }
    double a = tb.slope[i] / delta, b = tb.slope[i + 1] / delta;
    if (a < 0) tb.slope[i] = a = 0;
    if (b < 0) tb.slope[i + 1] = b = 0;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      tb.slope[i] = tau * a * delta;
      tb.slope[i + 1] = tau * b * delta;
    }
  }
}

}  // namespace

GrowthFunction GrowthFunction::power(double p, double c) {
  if (!(p > 0)) throw Error(ErrorKind::InvalidArgument, "power exponent must be positive");
  auto impl = make_impl(Family::Power, p, 0, c);
  impl->label = "power:p=" + format_number(p);
  return GrowthFunction(impl);
}

GrowthFunction GrowthFunction::power_log(double p, double beta, double c) {
  if (!(p > 0) || beta < 0) throw Error(ErrorKind::InvalidArgument, "powerlog needs p > 0, beta >= 0");
  auto impl = make_impl(Family::PowerLog, p, beta, c);
  impl->label = "powerlog:p=" + format_number(p) + ",beta=" + format_number(beta);
  return GrowthFunction(impl);
}

GrowthFunction GrowthFunction::q_over_log(double q, double c) {
  if (!(q > 1)) throw Error(ErrorKind::InvalidArgument, "qoverlog needs q > 1");
  auto impl = make_impl(Family::QOverLog, q, 0, c);
  impl->label = "qoverlog:q=" + format_number(q);
  return GrowthFunction(impl);
}

GrowthFunction GrowthFunction::exp_like(double c) {
  auto impl = make_impl(Family::ExpLike, 0, 0, c);
  impl->label = "explike";
  return GrowthFunction(impl);
}

GrowthFunction GrowthFunction::t_log(double c) {
  auto impl = make_impl(Family::TLog, 1, 1, c);
  impl->label = "tlog";
  return GrowthFunction(impl);
}

GrowthFunction GrowthFunction::sampled(LogLogTable table, std::string label) {
  const std::size_t n = table.log_t.size();
  if (n < 2 || table.log_phi.size() != n || table.slope.size() != n)
    throw Error(ErrorKind::InvalidArgument, "sampled table needs at least two consistent knots");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(table.log_t[i + 1] > table.log_t[i]) || !(table.log_phi[i + 1] > table.log_phi[i]))
      throw Error(ErrorKind::InvalidArgument, "sampled table must be strictly increasing");
  }
  auto impl = make_impl(Family::Sampled, 0, 0, 1.0);
  fritsch_carlson(table);
  impl->dx = (table.log_t.back() - table.log_t.front()) / static_cast<double>(n - 1);
  impl->uniform = true;
  for (std::size_t i = 0; i + 1 < n && impl->uniform; ++i) {
    const double d = table.log_t[i + 1] - table.log_t[i];
    impl->uniform = std::abs(d - impl->dx) <= 1e-9 * impl->dx;
  }
  impl->table = std::move(table);
  impl->label = std::move(label);
  GrowthFunction g(impl);
  impl->convex = secant_convex(g);
  return g;
}

GrowthFunction GrowthFunction::from_samples(const std::vector<double>& t, const std::vector<double>& phi,
                                            std::string label) {
  LogLogTable tb;
  for (std::size_t i = 0; i < t.size() && i < phi.size(); ++i) {
    if (t[i] <= 0 && phi[i] == 0) continue;  // the origin carries no log-log information
    if (!(t[i] > 0) || !(phi[i] > 0))
      throw Error(ErrorKind::InvalidArgument, "sampled growth function needs t > 0 and Phi > 0");
    tb.log_t.push_back(std::log(t[i]));
    tb.log_phi.push_back(std::log(phi[i]));
  }
  const std::size_t n = tb.log_t.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "sampled growth function needs two positive rows");
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = tb.log_t[i + 1] - tb.log_t[i];
    if (!(h[i] > 0)) throw Error(ErrorKind::InvalidArgument, "t column must be strictly increasing");
    delta[i] = (tb.log_phi[i + 1] - tb.log_phi[i]) / h[i];
  }
  tb.slope.assign(n, 0.0);
  tb.slope[0] = delta[0];
  tb.slope[n - 1] = delta[n - 2];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0) continue;
    const double w1 = 2 * h[k] + h[k - 1], w2 = h[k] + 2 * h[k - 1];
    tb.slope[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  return sampled(std::move(tb), std::move(label));
}

GrowthFunction GrowthFunction::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::vector<double> t, phi;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a)) continue;
    if (!(ss >> b)) throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected two columns");
    t.push_back(a);
    phi.push_back(b);
  }
  return from_samples(t, phi, "sampled:file=" + path);
}

GrowthFunction GrowthFunction::parse(std::string_view text) {
  auto s = SpecString::parse(text);
  const double c = s.number_or("c", 1.0);
  GrowthFunction g = [&] {
    if (s.name == "power") {
      s.allow_only({"p", "c"});
      return power(s.number("p"), c);
    }
    if (s.name == "powerlog") {
      s.allow_only({"p", "beta", "c"});
      return power_log(s.number("p"), s.number_or("beta", 1.0), c);
    }
    if (s.name == "qoverlog") {
      s.allow_only({"q", "c"});
      return q_over_log(s.number("q"), c);
    }
    if (s.name == "explike") {
      s.allow_only({"c"});
      return exp_like(c);
    }
    if (s.name == "tlog") {
      s.allow_only({"c"});
      return t_log(c);
    }
    if (s.name == "sampled") {
      s.allow_only({"file", "c"});
      auto base = load_file(s.text("file"));
      if (c == 1.0) return base;
      LogLogTable tb = *base.table();
      for (auto& y : tb.log_phi) y += std::log(c);
      return sampled(std::move(tb), base.spec());
    }
    throw Error(ErrorKind::ParseError, "unknown growth family '" + s.name + "'");
  }();
  return g;
}

double GrowthFunction::log_eval(double t) const {
  const Impl& m = *impl_;
  if (t <= 0) return -kInf;
  const double lt = std::log(t);
  switch (m.family) {
    case Family::Power: return m.log_c + m.p * lt;
    case Family::PowerLog:
      return m.log_c + m.p * lt + (m.beta == 0 ? 0.0 : m.beta * std::log(std::log1p(t)));
    case Family::QOverLog: return m.log_c + m.p * lt - std::log(std::log(kE + t));
    case Family::ExpLike:
      if (t < 1e-3) return m.log_c + 2 * lt - std::log(2.0) + std::log(explike_series(t));
      if (t < 30) return m.log_c + std::log(std::expm1(t) - t);
      return m.log_c + t + std::log1p(-(1 + t) * std::exp(-t));
    case Family::TLog: return m.log_c + lt + std::log(std::log1p(t));
    case Family::Sampled: return m.sampled_log(lt);
  }
  return -kInf;
}

double GrowthFunction::log_eval_log(double u) const {
  const Impl& m = *impl_;
  if (u < 700) return log_eval(std::exp(u));
  // ln(1 + e^u) = u + log1p(e^-u) and ln(e + e^u) likewise
  switch (m.family) {
    case Family::Power: return m.log_c + m.p * u;
    case Family::PowerLog:
      return m.log_c + m.p * u + (m.beta == 0 ? 0.0 : m.beta * std::log(u + std::log1p(std::exp(-u))));
    case Family::QOverLog: return m.log_c + m.p * u - std::log(u + std::log1p(kE * std::exp(-u)));
    case Family::ExpLike: return kInf;
    case Family::TLog: return m.log_c + u + std::log(u + std::log1p(std::exp(-u)));
    case Family::Sampled: return m.sampled_log(u);
  }
  return kInf;
}

double GrowthFunction::eval(double t) const {
  const Impl& m = *impl_;
  if (t <= 0) return 0.0;
  switch (m.family) {
    case Family::Power:
      if (m.int_p == 2) return m.c * t * t;
      if (m.int_p == 3) return m.c * t * t * t;
      return m.c * std::pow(t, m.p);
    case Family::PowerLog: {
      const double tp = m.p == 2.0 ? t * t : std::pow(t, m.p);
      const double l = std::log1p(t);
      const double lb = m.beta == 1.0 ? l : (m.beta == 0.0 ? 1.0 : std::pow(l, m.beta));
      return m.c * tp * lb;
    }
    case Family::QOverLog: return m.c * (m.p == 2.0 ? t * t : std::pow(t, m.p)) / std::log(kE + t);
    case Family::ExpLike:
      if (t < 1e-3) return m.c * 0.5 * t * t * explike_series(t);
      return m.c * (std::expm1(t) - t);
    case Family::TLog: return m.c * t * std::log1p(t);
    case Family::Sampled: return std::exp(m.sampled_log(std::log(t)));
  }
  return 0.0;
}

double GrowthFunction::elasticity(double t) const {
  const Impl& m = *impl_;
  if (t <= 0) t = std::numeric_limits<double>::min();
  switch (m.family) {
    case Family::Power: return m.p;
    case Family::PowerLog:
      if (m.beta == 0) return m.p;
      return m.p + m.beta * t / ((1 + t) * std::log1p(t));
    case Family::QOverLog: return m.p - t / ((kE + t) * std::log(kE + t));
    case Family::ExpLike: {
      if (t < 1e-2) {
        const double num = 1 + t / 2 + t * t / 6 + t * t * t / 24;
        return 2 * num / explike_series(t);
      }
      const double em1 = std::expm1(t);
      return t / (1 - t / em1);
    }
    case Family::TLog: return 1 + t / ((1 + t) * std::log1p(t));
    case Family::Sampled: {
      constexpr double hd = 1e-6;
      const double up = log_eval(t * (1 + hd)), dn = log_eval(t * (1 - hd));
      return (up - dn) / (std::log1p(hd) - std::log1p(-hd));
    }
  }
  return 0.0;
}

double GrowthFunction::derivative(double t) const {
  const Impl& m = *impl_;
  if (t < 0) throw Error(ErrorKind::DomainError, "derivative at negative t");
  if (t == 0) {
    if (m.family == Family::Power) return m.p > 1 ? 0.0 : (m.p == 1 ? m.c : kInf);
    if (m.family == Family::PowerLog && m.p == 1 && m.beta == 0) return m.c;
    if (m.family == Family::Sampled) {
      const double s = m.table.slope.front();
      return s > 1 ? 0.0 : (s == 1 ? std::exp(m.table.log_phi.front() - m.table.log_t.front()) : kInf);
    }
    return 0.0;
  }
  switch (m.family) {
    case Family::Power:
      if (m.int_p == 2) return 2 * m.c * t;
      if (m.int_p == 3) return 3 * m.c * t * t;
      return m.c * m.p * std::pow(t, m.p - 1);
    case Family::ExpLike: return m.c * std::expm1(t);
    default: return std::exp(log_eval(t) - std::log(t)) * elasticity(t);
  }
}

double GrowthFunction::inverse(double s) const {
  const Impl& m = *impl_;
  if (s < 0) throw Error(ErrorKind::DomainError, "inverse of a negative value");
  if (s == 0) return 0.0;
  if (m.family == Family::Power) return std::pow(s / m.c, 1.0 / m.p);
  const double target = std::log(s);
  double lo = -1.0, hi = 1.0;
  while (log_eval(std::exp(lo)) > target) {
    lo *= 2;
    if (lo < -1400) return 0.0;
  }
  while (log_eval(std::exp(hi)) < target) {
    hi *= 2;
    if (hi > 1400) return kInf;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_eval(std::exp(mid)) < target ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

Family GrowthFunction::family() const { return impl_->family; }
double GrowthFunction::p() const { return impl_->p; }
double GrowthFunction::beta() const { return impl_->beta; }
double GrowthFunction::scale() const { return impl_->c; }

const LogLogTable* GrowthFunction::table() const {
  return impl_->family == Family::Sampled ? &impl_->table : nullptr;
}

bool GrowthFunction::declared_convex() const {
  const Impl& m = *impl_;
  switch (m.family) {
    case Family::Power: return m.p >= 1;
    case Family::PowerLog: return m.p >= 1;
    case Family::QOverLog: return true;
    case Family::ExpLike:
    case Family::TLog: return true;
    case Family::Sampled: return m.convex;
  }
  return false;
}

bool GrowthFunction::declared_n_function() const {
  const Impl& m = *impl_;
  switch (m.family) {
    case Family::Power: return m.p > 1;
    case Family::PowerLog: return m.p > 1 || (m.p == 1 && m.beta > 0);
    case Family::QOverLog: return m.p > 1;
    case Family::ExpLike:
    case Family::TLog: return true;
    case Family::Sampled:
      return m.convex && m.table.slope.front() > 1 && m.table.slope.back() > 1;
  }
  return false;
}

std::string GrowthFunction::spec() const {
  const Impl& m = *impl_;
  if (m.family == Family::Sampled || m.c == 1.0) return m.label;
  return m.label + (m.label.find(':') == std::string::npos ? ":" : ",") + "c=" + format_number(m.c);
}

std::vector<double> Probe::grid() const {
  if (!(t_min > 0) || !(t_max > t_min) || points < 2)
    throw Error(ErrorKind::InvalidArgument, "probe needs 0 < t_min < t_max and at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double a = std::log(t_min), b = std::log(t_max);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (points - 1));
  g.front() = t_min;
  g.back() = t_max;
  return g;
}

std::string Probe::describe() const {
  return "geometric t in [" + format_number(t_min) + ", " + format_number(t_max) + "], " +
         std::to_string(points) + " points";
}

bool secant_convex(const GrowthFunction& phi, const Probe& probe) {
  const auto g = probe.grid();
  double prev = -kInf;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = phi.eval(g[i]), b = phi.eval(g[i + 1]);
    if (!std::isfinite(b)) break;
    const double slope = (b - a) / (g[i + 1] - g[i]);
    if (slope < prev * (1 - 1e-9) - 1e-300) return false;
    prev = slope;
  }
  return true;
}

GrowthFunction complementary(const GrowthFunction& phi, ConjugateMethod method) {
  if (method == ConjugateMethod::Auto && phi.family() == Family::Power && phi.p() > 1) {
    const double p = phi.p(), c = phi.scale();
    const double q = p / (p - 1);
    return GrowthFunction::power(q, (p - 1) * c * std::pow(c * p, -q));
  }
  if (!secant_convex(phi)) throw Error(ErrorKind::NotConvex, phi.spec() + " fails the secant-slope test");

  // t range where Phi' is representable
  double t_lo = 1e-30, t_hi = 1e30;
  auto usable = [&](double t) {
    const double d = phi.derivative(t);
    const double v = phi.log_eval(t);
    return std::isfinite(d) && d > 1e-300 && d < 1e300 && v < 690;
  };
  while (!usable(t_lo) && t_lo < 1e-2) t_lo *= 10;
  while (!usable(t_hi) && t_hi > 1e2) t_hi /= 1.25;
  if (!usable(t_lo) || !usable(t_hi))
    throw Error(ErrorKind::RangeError, "derivative of " + phi.spec() + " is not representable");
  const double s_lo = phi.derivative(t_lo), s_hi = phi.derivative(t_hi);
  if (!(phi.derivative(t_hi) > phi.derivative(t_hi / 100) * (1 + 1e-9)))
    throw Error(ErrorKind::RangeError, "supremum diverges: derivative of " + phi.spec() + " saturates");

  constexpr int kKnots = 2048;
  constexpr int kScan = 4096;
  std::vector<double> tg(kScan), dg(kScan);
  for (int i = 0; i < kScan; ++i)
    tg[i] = std::exp(std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * i / (kScan - 1));
  tg.front() = t_lo;
  tg.back() = t_hi;
  for (int i = 0; i < kScan; ++i) dg[i] = phi.derivative(tg[i]);

  LogLogTable tb;
  tb.log_t.resize(kKnots);
  tb.log_phi.resize(kKnots);
  tb.slope.resize(kKnots);
  const double ls_lo = std::log(s_lo), ls_hi = std::log(s_hi);
  int j = 0;
  for (int k = 0; k < kKnots; ++k) {
    const double ls = ls_lo + (ls_hi - ls_lo) * k / (kKnots - 1);
    const double s = k == kKnots - 1 ? s_hi : std::exp(ls);
    while (j < kScan - 1 && dg[j] < s) ++j;
    double a = std::log(tg[std::max(j - 1, 0)]), b = std::log(tg[j]);
    if (dg[j] < s * (1 - 1e-12) && j == kScan - 1)
      throw Error(ErrorKind::RangeError, "argmax escapes the search cap for s = " + format_number(s));
    for (int it = 0; it < 100 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      const double mid = 0.5 * (a + b);
      (phi.derivative(std::exp(mid)) < s ? a : b) = mid;
    }
    const double ts = std::exp(0.5 * (a + b));
    // Psi(s) = t*Phi'(t*) - Phi(t*) = Phi(t*)(e(t*) - 1), without cancellation
    const double lpsi = phi.log_eval(ts) + std::log(phi.elasticity(ts) - 1);
    if (!std::isfinite(lpsi)) throw Error(ErrorKind::RangeError, "conjugate not finite at s = " + format_number(s));
    tb.log_t[k] = ls;
    tb.log_phi[k] = lpsi;
    tb.slope[k] = std::exp(ls + std::log(ts) - lpsi);  // s Psi'(s)/Psi(s) with Psi'(s) = t*
  }
  return GrowthFunction::sampled(std::move(tb), "sampled:conjugate(" + phi.spec() + ")");
}

}  // namespace orlab
