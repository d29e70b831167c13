#include "orlab/tail.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <vector>

namespace orlab {
namespace {

struct Nodes {
  std::vector<double> u, w;
};

// Gauss-Legendre on (0, 1], split into panels that get finer toward u = 1
// where the kernel sits closest to the grid edge.
const Nodes& unit_nodes() {
  static const Nodes nodes = [] {
    using Q = boost::math::quadrature::gauss<double, 20>;
    const auto& ab = Q::abscissa();
    const auto& wt = Q::weights();
    const std::array<double, 5> cuts{0.0, 0.5, 0.8, 0.95, 1.0};
    Nodes n;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const double lo = cuts[p], hi = cuts[p + 1];
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < ab.size(); ++i) {
        n.u.push_back(mid + half * ab[i]);
        n.w.push_back(half * wt[i]);
        if (ab[i] != 0) {
          n.u.push_back(mid - half * ab[i]);
          n.w.push_back(half * wt[i]);
        }
      }
    }
    return n;
  }();
  return nodes;
}

// fit A t^{-g} through (t1, v1), (t2, v2) with t2 > t1 > 0
void fit_part(double t1, double v1, double t2, double v2, double& A, double& g) {
  if (v1 == 0 || v2 == 0 || (v1 > 0) != (v2 > 0)) {
    A = 0;
    return;
  }
  g = std::clamp(std::log(v1 / v2) / std::log(t2 / t1), 0.5, 4.0);
  A = v2 * std::pow(t2, g);
}

}  // namespace

TailModel TailModel::fit(const GridFunction& f) {
  TailModel m;
  const auto& spec = f.spec();
  const double h = spec.h();
  m.a = spec.x(0) - 0.5 * h;
  m.b = spec.x(spec.N - 1) + 0.5 * h;
  if (f.decay() != DecayClass::RationalDecay) return m;
  m.active = true;
  auto node = [&](double x) {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::lround((x + spec.L) / h)), 0, spec.N - 1);
  };
  const std::size_t r1 = node(0.75 * spec.L), r2 = node(0.875 * spec.L);
  const std::size_t l1 = node(-0.75 * spec.L), l2 = node(-0.875 * spec.L);
  const double tr1 = spec.x(r1), tr2 = spec.x(r2), tl1 = -spec.x(l1), tl2 = -spec.x(l2);
  fit_part(tr1, f[r1].real(), tr2, f[r2].real(), m.right.A_re, m.right.g_re);
  fit_part(tr1, f[r1].imag(), tr2, f[r2].imag(), m.right.A_im, m.right.g_im);
  fit_part(tl1, f[l1].real(), tl2, f[l2].real(), m.left.A_re, m.left.g_re);
  fit_part(tl1, f[l1].imag(), tl2, f[l2].imag(), m.left.A_im, m.left.g_im);

  // t = b/u on the right, t = a/u on the left; |dt| = |b| du / u^2
  const auto& n = unit_nodes();
  auto part = [](double A, double g, double t) { return A == 0 ? 0.0 : A * std::pow(t, -g); };
  for (std::size_t i = 0; i < n.u.size(); ++i) {
    const double u = n.u[i];
    const double tr = m.b / u, tl = m.a / u;
    const double jr = n.w[i] * m.b / (u * u), jl = n.w[i] * (-m.a) / (u * u);
    m.t_nodes.push_back(tr);
    m.coef.emplace_back(jr * part(m.right.A_re, m.right.g_re, tr), jr * part(m.right.A_im, m.right.g_im, tr));
    m.t_nodes.push_back(tl);
    m.coef.emplace_back(jl * part(m.left.A_re, m.left.g_re, -tl), jl * part(m.left.A_im, m.left.g_im, -tl));
  }
  return m;
}

cplx TailModel::integral(double x, const std::function<double(double)>& kernel) const {
  if (!active) return {};
  cplx acc{};
  for (std::size_t i = 0; i < t_nodes.size(); ++i) acc += kernel(x - t_nodes[i]) * coef[i];
  return acc;
}

}  // namespace orlab
