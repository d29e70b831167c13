#include "orlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orlab/errors.hpp"
#include "orlab/functions.hpp"
#include "orlab/growth_checks.hpp"
#include "orlab/hilbert.hpp"
#include "orlab/norms.hpp"
#include "orlab/spec_string.hpp"
#include "orlab/tail.hpp"

namespace orlab {

using std::numbers::pi;

// --- report plumbing -------------------------------------------------------

Check& VerificationReport::le(const std::string& name, const std::string& anchor, double lhs, double rhs, double tol) {
  checks.push_back({name, anchor, lhs, rhs, tol, Relation::LessEqual, lhs <= rhs + tol, {}});
  return checks.back();
}

Check& VerificationReport::close(const std::string& name, const std::string& anchor, double lhs, double rhs,
                                 double tol) {
  checks.push_back({name, anchor, lhs, rhs, tol, Relation::Close, std::abs(lhs - rhs) <= tol, {}});
  return checks.back();
}

Check& VerificationReport::flag(const std::string& name, const std::string& anchor, bool ok, double lhs, double rhs) {
  checks.push_back({name, anchor, lhs, rhs, 0, Relation::Flag, ok, {}});
  return checks.back();
}

void VerificationReport::finalize() {
  overall = gate.empty();
  for (const auto& c : checks) overall = overall && c.pass;
}

Tolerances::Tolerances()
    : values_{{"isometry", 1e-2},       {"monotone_slack", 1e-6}, {"boundary", 1e-2},       {"interior", 1e-9},
              {"classical", 1e-9},      {"measure_gap", 1e-2},    {"membership", 5e-3},     {"cauchy_formula", 1e-3},
              {"riesz_lower", 1e-2},    {"involution", 1e-3},     {"pairing_identity", 1e-3}, {"maximal_norm", 1e-2},
              {"sandwich_pointwise", 1e-2}, {"duality_gap", 1e-2}, {"dual_sandwich", 1e-6},  {"holder", 1e-9},
              {"cayley", 1e-3},         {"cayley_center", 1e-6},  {"counterexample_ratio", 1.8}} {}

double Tolerances::operator()(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorKind::UnknownKey, "unknown tolerance '" + key + "'");
  return it->second;
}

void Tolerances::set(const std::string& key, double value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorKind::UnknownKey, "unknown tolerance '" + key + "'");
  if (!(value >= 0) || !std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "tolerance must be >= 0");
  it->second = value;
}

namespace {

double lux(const GridFunction& f, const GrowthFunction& phi) { return luxemburg_norm(f, phi).value; }

double lux(std::span<const double> a, const GridSpec& spec, const GrowthFunction& phi) {
  return luxemburg_norm(a, spec, phi).value;
}

void echo_common(VerificationReport& r, const VerifyConfig& cfg) {
  r.config["grid.L"] = format_number(cfg.grid.L);
  r.config["grid.N"] = std::to_string(cfg.grid.N);
  std::string hs;
  for (double y : cfg.lattice.heights) hs += (hs.empty() ? "" : ",") + format_number(y);
  r.config["heights"] = hs;
  for (const auto& [k, v] : cfg.tol.all()) r.config["tol." + k] = format_number(v);
}

// largest rise of a deviation sequence after its maximum
double rise_after_max(const std::vector<double>& d) {
  if (d.empty()) return 0;
  const auto m = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  double worst = 0;
  for (std::size_t k = m + 1; k < d.size(); ++k) worst = std::max(worst, d[k] - d[k - 1]);
  return worst;
}

// largest drop of slice norms as the height decreases
double drop_toward_boundary(const std::vector<double>& n) {
  double worst = 0;
  for (std::size_t k = 1; k < n.size(); ++k) worst = std::max(worst, n[k - 1] - n[k]);
  return worst;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + format_number(x);
  return s;
}

// every part of the tail must make int Phi(|f|) finite: gamma times the small-t elasticity > 1
void require_supported(const GridFunction& f, const GrowthFunction& phi) {
  if (f.decay() != DecayClass::RationalDecay || f.is_zero()) return;
  const TailModel t = TailModel::fit(f);
  if (!t.active) return;
  const double e0 = phi.elasticity(1e-6);
  for (const auto* s : {&t.left, &t.right}) {
    for (auto [A, g] : {std::pair{s->A_re, s->g_re}, {s->A_im, s->g_im}}) {
      if (A != 0 && g * e0 <= 1 + 1e-9)
        throw Error(ErrorKind::CorpusError, "tail |x|^-" + format_number(g) + " is not in the Orlicz class of " + phi.spec());
    }
  }
}

cplx interp(const GridFunction& f, double x) {
  const auto& s = f.spec();
  const double u = (x - s.x(0)) / s.h();
  if (u < 0 || u > static_cast<double>(s.N - 1)) return 0;
  const auto j = std::min(static_cast<std::size_t>(u), s.N - 2);
  const double w = u - static_cast<double>(j);
  return (1 - w) * f[j] + w * f[j + 1];
}

cplx pairing(const GridSpec& spec, const std::vector<cplx>& a, const std::vector<cplx>& b, bool conj_b = false) {
  std::vector<cplx> p(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) p[j] = a[j] * (conj_b ? std::conj(b[j]) : b[j]);
  return integrate(spec, p);
}

double l2(const GridFunction& f) {
  double s = 0;
  for (std::size_t j = 0; j < f.size(); ++j) s += f.spec().weight(j) * std::norm(f[j]);
  return std::sqrt(s);
}

GridFunction real_part(const GridFunction& f) { return GridFunction(f.spec(), f.real_part(), f.decay()); }

void gate_nabla2(const GrowthFunction& phi) {
  const auto n = check_nabla2(phi);
  if (!n.satisfied)
    throw Error(ErrorKind::GateFailed, phi.spec() + " is not nabla_2 (lower index " +
                                           format_number(n.index_check.observed_max) + ")");
}

// the lattice extended to heights 2^1 .. 2^5, enough for the lower sandwich away from the origin
HeightLattice extended(const HeightLattice& lat) {
  HeightLattice out;
  for (int k = 5; k >= 1; --k)
    if (std::ldexp(1.0, k) > lat.heights.front()) out.heights.push_back(std::ldexp(1.0, k));
  out.heights.insert(out.heights.end(), lat.heights.begin(), lat.heights.end());
  return out;
}

}  // namespace

std::vector<double> slice_norms(const HalfPlaneField& F, const GrowthFunction& phi) {
  std::vector<double> out(F.height_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<double> a(F.spec.N);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::abs(F.values[i][j]);
    out[i] = lux(a, F.spec, phi);
  }
  return out;
}

double field_norm(const HalfPlaneField& F, const GrowthFunction& phi) {
  const auto n = slice_norms(F, phi);
  return *std::max_element(n.begin(), n.end());
}

// --- Poisson representation -------------------------------------------------

VerificationReport verify_poisson_representation(const GridFunction& f, const GrowthFunction& phi,
                                                 const VerifyConfig& cfg) {
  if (!phi.declared_n_function()) throw Error(ErrorKind::NotNFunction, phi.spec() + " is not an N-function");
  require_supported(f, phi);
  VerificationReport r;
  r.theorem = "poisson";
  echo_common(r, cfg);
  r.config["phi"] = phi.spec();
  const auto& T = cfg.tol;

  const auto F = poisson_extend(f, cfg.lattice);
  const double nf = lux(f, phi);
  const auto norms = slice_norms(F, phi);
  const double nF = *std::max_element(norms.begin(), norms.end());
  r.notes.push_back("slice norms (coarse to fine): " + join(norms));

  r.close("isometry", "||U_f|| = ||f||", nF, nf, T("isometry") * nf);
  r.le("slice norms grow toward the boundary", "y -> ||F(.+iy)|| is decreasing", drop_toward_boundary(norms), 0,
       T("monotone_slack") * std::max(nf, 1e-300));

  std::vector<double> dev(F.height_count());
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = lux(F.slice(i) - f, phi);
  r.notes.push_back("boundary deviations: " + join(dev));
  r.le("boundary convergence trend", "lim_{y->0} ||U_f(.+iy) - f|| = 0", rise_after_max(dev), 0,
       T("monotone_slack") * std::max(nf, 1e-300));

  // interior bound |F(x+iy)| <= Phi^{-1}(2/(pi y)) ||F||
  double worst = 0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < F.height_count(); ++i) {
    const double bound = phi.inverse(2 / (pi * cfg.lattice.heights[i])) * nF;
    for (const auto& v : F.values[i]) {
      const double a = std::abs(v);
      if (a > bound * (1 + T("interior"))) ++violations;
      if (bound > 0) worst = std::max(worst, a / bound);
    }
  }
  r.le("interior bound", "|F(x+iy)| <= Phi^{-1}(2/(pi y)) ||F||", worst, 1, T("interior")).note =
      std::to_string(violations) + " violations";

  r.le("round-trip recovery", "lim_{y->0} ||F(.+iy) - f|| = 0", dev.back(), 0, T("boundary") * nf);

  if (phi.family() == Family::Power) {
    // ||f||_lux = (c int |f|^p)^{1/p} for Phi = c t^p
    double s = 0;
    for (std::size_t j = 0; j < f.size(); ++j) s += f.spec().weight(j) * std::pow(std::abs(f[j]), phi.p());
    const double lp = std::pow(phi.scale() * s, 1 / phi.p());
    r.close("classical coincidence", "||F||_{h^p} = ||f||_{L^p}", nf, lp, T("classical") * lp);
  }
  r.finalize();
  return r;
}

// --- measure representation -------------------------------------------------

VerificationReport verify_measure_representation(const RadonMeasure& mu, const std::vector<GridFunction>& testfns,
                                                 const VerifyConfig& cfg) {
  VerificationReport r;
  r.theorem = "measure";
  echo_common(r, cfg);
  const auto& T = cfg.tol;
  // the trapezoid rule on P_y loses accuracy like exp(-2 pi y/h), so heights below h are dropped
  HeightLattice lat;
  for (double y : cfg.lattice.heights)
    if (y >= cfg.grid.h() * (1 - 1e-12)) lat.heights.push_back(y);
  if (lat.heights.empty()) throw Error(ErrorKind::InvalidArgument, "no lattice height is resolved by the grid spacing");
  if (lat.heights.size() < cfg.lattice.heights.size())
    r.notes.push_back("heights below the grid spacing dropped; finest kept " + format_number(lat.heights.back()));
  const auto F = poisson_extend_measure(mu, lat, cfg.grid);

  for (std::size_t t = 0; t < testfns.size(); ++t) {
    const auto& phi = testfns[t];
    if (phi.decay() != DecayClass::CompactSupport)
      throw Error(ErrorKind::InvalidArgument, "test functions must have compact support");
    if (!(phi.spec() == cfg.grid)) throw Error(ErrorKind::SpecMismatch, "test function grid differs from the scenario grid");
    cplx target = 0;
    for (const auto& [x, w] : mu.atoms) target += w * interp(phi, x);
    if (mu.density) target += pairing(cfg.grid, phi.values(), mu.density->values());
    std::vector<double> dev(lat.heights.size());
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = std::abs(pairing(cfg.grid, phi.values(), F.values[i]) - target);
    const std::string tag = "test function " + std::to_string(t);
    r.notes.push_back(tag + " deviations: " + join(dev));
    r.le(tag + ": pairing trend", "lim_{y->0} int phi(x) F(x+iy) dx = int phi dmu", rise_after_max(dev), 0,
         T("monotone_slack") * (1 + std::abs(target)));
    r.le(tag + ": final gap", "lim_{y->0} int phi(x) F(x+iy) dx = int phi dmu", dev.back(), 0,
         T("measure_gap") * (1 + std::abs(target)));
  }
  r.finalize();
  return r;
}

// --- Cauchy representation --------------------------------------------------

namespace {

// sum_j w_j g_j / (t_j - zeta) plus the model tail, for zeta = x + i s (s may be negative)
cplx cauchy_sum(const GridFunction& g, const TailModel& tail, double x, double s) {
  const auto& spec = g.spec();
  cplx acc = 0;
  for (std::size_t j = 0; j < spec.N; ++j) acc += spec.weight(j) * g[j] / cplx(spec.x(j) - x, -s);
  if (tail.active) {
    // 1/(t - zeta) with u = x - t is (-u + i s)/(u^2 + s^2)
    acc += tail.integral(x, [s](double u) { return -u / (u * u + s * s); });
    acc += cplx(0, 1) * tail.integral(x, [s](double u) { return s / (u * u + s * s); });
  }
  return acc;
}

}  // namespace

VerificationReport verify_cauchy_representation(const GridFunction& f, const GrowthFunction& phi,
                                                const VerifyConfig& cfg) {
  VerificationReport r;
  r.theorem = "cauchy";
  echo_common(r, cfg);
  r.config["phi"] = phi.spec();
  r.config["analytic_boundary"] = cfg.analytic_boundary ? "true" : "false";
  const auto& T = cfg.tol;
  const auto re = real_part(f);
  const GridFunction g = cfg.analytic_boundary ? analytic_boundary(re) : f;
  double scale = 0;
  for (std::size_t j = 0; j < g.size(); ++j) scale += g.spec().weight(j) * std::abs(g[j]);
  const TailModel tail = TailModel::fit(g);

  const std::vector<double> px{-2, 0, 2}, py{2, 1, 0.5};
  double resid = 0;
  for (double x : px)
    for (double y : py) resid = std::max(resid, std::abs(cauchy_sum(g, tail, x, -y)));
  r.le("membership residual", "int f(t)/(t - conj z) dt = 0", resid, T("membership") * scale, 0);

  const auto U = poisson_extend(g, HeightLattice{py});
  double gap = 0;
  const double ginf = g.max_abs();
  for (double x : px)
    for (std::size_t i = 0; i < py.size(); ++i) {
      const cplx c = cauchy_sum(g, tail, x, py[i]) / cplx(0, 2 * pi);
      const auto u = field_at(U, x, py[i]);
      if (u) gap = std::max(gap, std::abs(c - *u));
    }
  r.le("Cauchy formula", "F(z) = (1/(2 pi i)) int f(t)/(t - z) dt", gap, 0, T("cauchy_formula") * std::max(1.0, ginf));

  const auto S = cauchy_transform(re, cfg.lattice);
  const double ng = lux(g, phi);
  std::vector<double> dev(S.height_count());
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = lux(S.slice(i) - g, phi);
  r.notes.push_back("boundary deviations: " + join(dev));
  r.le("boundary trend", "lim_{y->0} ||F(.+iy) - f|| = 0", rise_after_max(dev), 0,
       T("monotone_slack") * std::max(ng, 1e-300));
  r.le("boundary limit", "lim_{y->0} ||F(.+iy) - f|| = 0", dev.back(), 0, T("boundary") * ng);
  r.finalize();
  return r;
}

// --- Riesz projection -------------------------------------------------------

namespace {

struct PairDefects {
  double hh = 0, mixed = 0, analytic = 0;
};

// int Hf Hg = int fg, int Hf g = -int f Hg and int (f + iHf)(g + iHg) = 0;
// the 1/x tails of Hf, Hg beyond the grid add 2 m_f m_g / (pi^2 L) to int Hf Hg
PairDefects pairing_defects(const GridFunction& f, const GridFunction& g) {
  const auto& spec = f.spec();
  const auto Hf = hilbert_transform(f), Hg = hilbert_transform(g);
  const double mf = integrate(f).real(), mg = integrate(g).real();
  const double tail = 2 * mf * mg / (pi * pi * spec.L);
  const cplx fg = pairing(spec, f.values(), g.values());
  const cplx hh = pairing(spec, Hf.values(), Hg.values()) + tail;
  const cplx mixed = pairing(spec, Hf.values(), g.values()) + pairing(spec, f.values(), Hg.values());
  const double scale = std::max(l2(f) * l2(g), 1e-300);
  PairDefects d;
  d.hh = std::abs(hh - fg) / scale;
  d.mixed = std::abs(mixed) / scale;
  d.analytic = std::abs(fg - hh + cplx(0, 1) * mixed) / scale;
  return d;
}

}  // namespace

VerificationReport verify_riesz_projection(const GridFunction& f, const GrowthFunction& phi, const VerifyConfig& cfg) {
  gate_nabla2(phi);
  if (!f.is_real()) throw Error(ErrorKind::ComplexInput, "the Riesz check needs a real f");
  VerificationReport r;
  r.theorem = "riesz";
  echo_common(r, cfg);
  r.config["phi"] = phi.spec();
  r.config["partner"] = cfg.partner;
  const auto& T = cfg.tol;

  const auto S = cauchy_transform(f, cfg.lattice);
  const double nf = lux(f, phi), nS = field_norm(S, phi);
  r.le("lower bound", "||f|| <= ||S(f)||", nf, nS, T("riesz_lower") * nf);
  const double ratio = nf > 0 ? nS / nf : 0;
  r.flag("upper ratio finite", "||S(f)|| <= C ||f||", std::isfinite(ratio), ratio, 0).note =
      "reported, not asserted against a constant";

  const auto H = hilbert_transform(f);
  const auto HH = hilbert_transform(H);
  double inv = 0;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (hilbert_reliable(f.spec(), j)) inv = std::max(inv, std::abs(HH[j] + f[j]));
  const double finf = f.max_abs();
  r.le("involution", "H(H(f))(x) = -f(x)", finf > 0 ? inv / finf : 0, 0, T("involution"));

  const auto g = make_function(cfg.partner, f.spec());
  const auto d = pairing_defects(f, real_part(g));
  r.le("pairing isometry", "int H(f) H(g) = int f g", d.hh, 0, T("pairing_identity"));
  r.le("pairing skew", "int H(f) g = -int f H(g)", d.mixed, 0, T("pairing_identity"));
  r.le("analytic product", "int (f + iHf)(g + iHg) dx = 0", d.analytic, 0, T("pairing_identity"));
  r.finalize();
  return r;
}

// --- maximal equivalences ---------------------------------------------------

VerificationReport verify_maximal_equivalences(const GridFunction& f, const GrowthFunction& phi,
                                               const VerifyConfig& cfg) {
  gate_nabla2(phi);
  VerificationReport r;
  r.theorem = "maximal";
  echo_common(r, cfg);
  r.config["phi"] = phi.spec();
  r.config["alpha"] = format_number(cfg.alpha);
  const auto& T = cfg.tol;
  const auto& spec = f.spec();

  const auto lat = extended(cfg.lattice);
  const auto F = poisson_extend(f, lat);
  const auto V = conjugate_extend(f, lat);
  const auto Mrad = radial_maximal(F);
  const auto Mntg = nontangential_maximal(F, ConeSpec{cfg.alpha});
  const auto Mhl = hl_maximal(f);
  const auto H = hilbert_transform(f);
  const auto Ht = hilbert_maximal(f, default_eps_schedule(spec));
  const auto MradV = radial_maximal(V);

  const double nf = lux(f, phi), nF = field_norm(F, phi);
  const double nRad = lux(Mrad, phi), nNtg = lux(Mntg, phi), nH = lux(H, phi), nHt = lux(Ht, phi), nHL = lux(Mhl, phi);
  const double tn = T("maximal_norm") * nf;
  r.le("field below radial", "||F|| <= ||M_rad(F)||", nF, nRad, tn);
  r.le("radial below nontangential", "||M_rad(F)|| <= ||M_ntg(F)||", nRad, nNtg, tn);
  r.flag("nontangential ratio finite", "||M_ntg(F)|| <= C ||F||", nF == 0 || std::isfinite(nNtg / nF),
         nF > 0 ? nNtg / nF : 0, 0);
  r.le("f below Hf", "||f|| <= ||H(f)||", nf, nH, tn);
  r.le("Hf below Hilbert maximal", "||H(f)|| <= ||H~(f)||", nH, nHt, tn);
  r.flag("Hilbert maximal ratio finite", "||H~(f)|| <= C_2 ||f||", nf == 0 || std::isfinite(nHt / nf),
         nf > 0 ? nHt / nf : 0, 0);
  r.notes.push_back("||M_HL f|| / ||f|| = " + format_number(nf > 0 ? nHL / nf : 0));

  // pointwise chain; the lower end needs heights comparable to |x|, so it is read on |x| <= L/2
  const double tp = T("sandwich_pointwise") * f.max_abs();
  double low = 0, mid = 0, up = 0, ht = 0;
  const double c_up = 1 + 2 * cfg.alpha / pi;
  for (std::size_t j = 0; j < spec.N; ++j) {
    const double hl = Mhl[j].real(), rad = Mrad[j].real(), ntg = Mntg[j].real();
    if (std::abs(spec.x(j)) <= spec.L / 2) low = std::max(low, hl / (2 * pi) - rad);
    mid = std::max(mid, rad - ntg);
    up = std::max(up, ntg - c_up * hl);
    if (hilbert_reliable(spec, j)) ht = std::max(ht, Ht[j].real() - ((1 + 1 / pi) * hl + MradV[j].real()));
  }
  r.le("pointwise lower", "M_HL(f)/(2 pi) <= M_rad(U_f)", low, 0, tp);
  r.le("pointwise radial vs cone", "M_rad(U_f) <= M_ntg(U_f)", mid, 0, tp);
  r.le("pointwise upper", "M_ntg(U_f) <= (1 + 2 alpha/pi) M_HL(f)", up, 0, tp);
  r.le("Hilbert maximal bound", "H~(f) <= (1 + 1/pi) M_HL(f) + M_rad(V_f)", ht, 0, tp);
  r.finalize();
  return r;
}

// --- duality ----------------------------------------------------------------

VerificationReport verify_duality(const GridFunction& f, const GridFunction& g, const GrowthFunction& phi,
                                  const VerifyConfig& cfg) {
  require_same_grid(f, g);
  const GrowthFunction psi = [&] {
    try {
      return complementary(phi);
    } catch (const Error& e) {
      throw Error(ErrorKind::ConjugateUnavailable, e.what());
    }
  }();
  VerificationReport r;
  r.theorem = "duality";
  echo_common(r, cfg);
  r.config["phi"] = phi.spec();
  r.config["psi"] = psi.spec();
  const auto& T = cfg.tol;
  const auto& spec = f.spec();

  const auto F = poisson_extend(f, cfg.lattice);
  const auto G = poisson_extend(g, cfg.lattice);
  const cplx target = pairing(spec, f.values(), g.values());
  const double scale = l2(f) * l2(g);
  std::vector<double> dev(F.height_count());
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = std::abs(pairing(spec, F.values[i], G.values[i]) - target);
  r.notes.push_back("pairing deviations: " + join(dev));
  r.le("pairing trend", "lim_{y->0} int U_f U_g = int f g", rise_after_max(dev), 0, T("monotone_slack") * scale);
  r.le("pairing limit", "lim_{y->0} int U_f U_g = int f g", dev.back(), 0, T("duality_gap") * scale);

  const auto af = f.abs_values(), ag = g.abs_values();
  const double nf = lux(af, spec, phi);
  const double g0 = orlicz_dual_norm(ag, spec, psi, phi).value;
  r.le("functional bound", "|T_G(F)| <= ||G||^0 ||F||", std::abs(target), g0 * nf, T("holder") * std::max(g0 * nf, 1e-300));

  const double ds = T("dual_sandwich");
  const double f0 = orlicz_dual_norm(af, spec, phi, psi).value;
  r.le("dual norm lower", "||f|| <= ||f||^0", nf, f0, ds);
  r.le("dual norm upper", "||f||^0 <= 2 ||f||", f0, 2 * nf, ds);

  // ||F||^0 as the sup over heights of slice dual norms, the same sup that defines ||F||
  double nF = 0, nF0 = 0;
  for (std::size_t i = 0; i < F.height_count(); ++i) {
    std::vector<double> a(spec.N);
    for (std::size_t j = 0; j < spec.N; ++j) a[j] = std::abs(F.values[i][j]);
    nF = std::max(nF, lux(a, spec, phi));
    nF0 = std::max(nF0, orlicz_dual_norm(a, spec, phi, psi).value);
  }
  r.le("field dual norm lower", "||F|| <= ||F||^0", nF, nF0, ds);
  r.le("field dual norm upper", "||F||^0 <= 2 ||F||", nF0, 2 * nF, ds);

  const auto A = cauchy_transform(real_part(f), cfg.lattice);
  const auto B = cauchy_transform(real_part(g), cfg.lattice);
  const auto bf = analytic_boundary(real_part(f)), bg = analytic_boundary(real_part(g));
  const cplx atarget = pairing(spec, bf.values(), bg.values(), true);
  std::vector<double> adev(A.height_count());
  for (std::size_t i = 0; i < adev.size(); ++i)
    adev[i] = std::abs(pairing(spec, A.values[i], B.values[i], true) - atarget);
  r.notes.push_back("analytic pairing deviations: " + join(adev));
  r.le("analytic pairing limit", "lim_{y->0} int F(x+iy) conj(G(x+iy)) dx = int f conj(g)", adev.back(), 0,
       T("duality_gap") * 2 * scale);
  r.finalize();
  return r;
}

// --- gate failure -----------------------------------------------------------

VerificationReport degenerate_demonstration(const std::string& theorem, const GrowthFunction& phi,
                                            const VerifyConfig& cfg) {
  VerificationReport r;
  r.theorem = theorem;
  echo_common(r, cfg);
  r.config["phi"] = phi.spec();
  const auto n = check_nabla2(phi);
  r.gate = "GateFailed: " + phi.spec() + " is not nabla_2";
  r.flag("nabla_2 gate", "Phi in nabla_2", n.satisfied, n.index_check.observed_max, 1).note =
      "lower index (must exceed 1)";
  if (!n.dini_check.satisfied) {
    const auto rep = build_counterexample(phi, phi, cfg.counterexample_terms);
    bool growing = true;
    for (double q : rep.ratio_trend) growing = growing && q >= cfg.tol("counterexample_ratio");
    const double last = rep.ratio_trend.empty() ? 0 : rep.ratio_trend.back();
    r.flag("unbounded maximal trend", "no C with int Phi(M f) <= C for modular-bounded f", growing, last,
           cfg.tol("counterexample_ratio"))
        .note = "successive ratios of the maximal lower bounds: " + join(rep.ratio_trend);
  } else {
    r.notes.push_back("Dini domination holds, so the counterexample does not apply");
  }
  r.finalize();
  return r;
}

// --- Cayley transfer --------------------------------------------------------

std::optional<cplx> field_at(const HalfPlaneField& field, double x, double y) {
  const auto& spec = field.spec;
  const auto& hs = field.lattice.heights;
  const double u = (x - spec.x(0)) / spec.h();
  if (!(u >= 0) || u > static_cast<double>(spec.N - 1)) return std::nullopt;
  if (!(y <= hs.front() * (1 + 1e-12)) || !(y >= hs.back() * (1 - 1e-12))) return std::nullopt;
  const auto j = std::min(static_cast<std::size_t>(u), spec.N - 2);
  const double wx = u - static_cast<double>(j);
  auto row = [&](std::size_t i) { return (1 - wx) * field.values[i][j] + wx * field.values[i][j + 1]; };
  if (hs.size() == 1) return row(0);
  std::size_t i = 0;
  while (i + 2 < hs.size() && y < hs[i + 1]) ++i;
  const double wy = std::clamp((std::log(hs[i]) - std::log(y)) / (std::log(hs[i]) - std::log(hs[i + 1])), 0.0, 1.0);
  return (1 - wy) * row(i) + wy * row(i + 1);
}

CayleyResult cayley_transfer(const HalfPlaneField& field, const GrowthFunction& phi, const std::vector<double>& radii,
                             std::size_t angles, const Tolerances& tol) {
  if (angles < 8) throw Error(ErrorKind::InvalidArgument, "need at least 8 angles");
  for (double r : radii)
    if (!(r >= 0 && r < 1)) throw Error(ErrorKind::InvalidArgument, "radii must lie in [0, 1)");
  CayleyResult out;
  auto& D = out.disk;
  D.radii = radii;
  D.M = angles;
  auto& rep = out.report;
  rep.theorem = "cayley";
  rep.config["phi"] = phi.spec();
  rep.config["grid.L"] = format_number(field.spec.L);
  rep.config["grid.N"] = std::to_string(field.spec.N);
  rep.config["angles"] = std::to_string(angles);
  rep.config["radii"] = join(radii);
  for (const auto& [k, v] : tol.all())
    if (k.rfind("cayley", 0) == 0) rep.config["tol." + k] = format_number(v);

  // the bound rests on Jensen's inequality, so convexity is recorded as a check
  rep.flag("phi convex", "Phi is a convex growth function", secant_convex(phi), 0, 0);
  const double nF = field_norm(field, phi);
  const double bound = phi.inverse(1) * nF;
  for (double r : radii) {
    std::vector<cplx> vals(angles);
    std::vector<bool> cov(angles);
    double sum = 0, excluded = 0, excluded_bound = 0;
    for (std::size_t m = 0; m < angles; ++m) {
      const double th = -pi + 2 * pi * static_cast<double>(m) / static_cast<double>(angles);
      const cplx w = std::polar(r, th);
      const cplx z = cplx(0, 1) * (1.0 - w) / (1.0 + w);
      const auto v = field_at(field, z.real(), z.imag());
      cov[m] = v.has_value();
      if (v) {
        vals[m] = *v;
        sum += std::abs(*v);
      } else {
        excluded += 1;
        // outside the panel the interior bound still caps |F|
        excluded_bound += phi.inverse(2 / (pi * z.imag())) * nF;
      }
    }
    const double frac = excluded / static_cast<double>(angles);
    if (frac > 0.2)
      throw Error(ErrorKind::CoverageTooLow, format_number(100 * frac) + "% of the circle r = " + format_number(r) +
                                                 " maps outside the stored panel");
    const double avg = sum / static_cast<double>(angles);
    const double t = tol("cayley") * nF + excluded_bound / static_cast<double>(angles);
    rep.le("circle average r=" + format_number(r), "||G||_{h^1(D)} <= Phi^{-1}(1) ||F||", avg, bound, t).note =
        "excluded fraction " + format_number(frac);
    if (r == 0) {
      const auto c = field_at(field, 0, 1);
      if (c) rep.close("center", "G(0) = F(i)", std::abs(vals[0] - *c), 0, tol("cayley_center") * std::max(1.0, std::abs(*c)));
    }
    D.values.push_back(std::move(vals));
    D.covered.push_back(std::move(cov));
  }
  rep.finalize();
  return out;
}

}  // namespace orlab
