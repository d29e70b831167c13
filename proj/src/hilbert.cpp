#include "orlab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orlab/errors.hpp"
#include "orlab/fft.hpp"
#include "orlab/halfplane.hpp"
#include "orlab/spec_string.hpp"
#include "orlab/tail.hpp"

namespace orlab {

using std::numbers::pi;

HilbertMethod HilbertMethod::parse(const std::string& method, const std::string& eps) {
  HilbertMethod m;
  if (method == "spectral") {
    m.tag = Tag::Spectral;
  } else if (method == "pv" || method == "pv_quadrature") {
    m.tag = Tag::PvQuadrature;
  } else {
    throw Error(ErrorKind::ParseError, "unknown Hilbert method '" + method + "'");
  }
  if (!eps.empty()) {
    m.eps_in_h.clear();
    std::stringstream ss(eps);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty() && item.back() == 'h') item.pop_back();
      try {
        std::size_t used = 0;
        m.eps_in_h.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "bad eps entry '" + item + "'");
      }
    }
  }
  return m;
}

std::string HilbertMethod::name() const { return tag == Tag::Spectral ? "spectral" : "pv"; }

bool hilbert_reliable(const GridSpec& spec, std::size_t j) { return std::abs(spec.x(j)) <= spec.L - spec.L / 8; }

namespace {

// sum over |d| > m of f_{j-d} / (pi d), for every node j
std::vector<cplx> truncated_sum(const GridFunction& f, std::size_t m) {
  const std::size_t N = f.size();
  std::vector<cplx> kern(2 * N - 1);
  for (std::size_t i = 0; i < kern.size(); ++i) {
    const long d = static_cast<long>(i) - static_cast<long>(N - 1);
    if (static_cast<std::size_t>(std::labs(d)) > m) kern[i] = 1.0 / (pi * static_cast<double>(d));
  }
  auto conv = fft::linear_convolve(f.values(), kern);
  return {conv.begin() + static_cast<long>(N - 1), conv.begin() + static_cast<long>(2 * N - 1)};
}

void add_tail(const GridFunction& f, const TailModel& tail, double eps, std::vector<cplx>& out) {
  if (!tail.active) return;
  const auto& spec = f.spec();
  for (std::size_t j = 0; j < spec.N; ++j) {
    const double x = spec.x(j);
    cplx acc{};
    for (std::size_t k = 0; k < tail.t_nodes.size(); ++k) {
      const double u = x - tail.t_nodes[k];
      if (std::abs(u) > eps) acc += tail.coef[k] / (pi * u);
    }
    out[j] += acc;
  }
}

void check_schedule(const GridSpec& spec, const std::vector<double>& eps) {
  if (eps.empty()) throw Error(ErrorKind::MethodMismatch, "empty eps schedule");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!std::isfinite(eps[i]) || (i > 0 && !(eps[i] < eps[i - 1])))
      throw Error(ErrorKind::MethodMismatch, "eps schedule must be strictly decreasing");
  }
  if (eps.back() < spec.h() * (1 - 1e-12)) throw Error(ErrorKind::MethodMismatch, "eps schedule goes below the grid spacing");
}

std::size_t excluded_radius(const GridSpec& spec, double eps) {
  return static_cast<std::size_t>(std::floor(eps / spec.h() + 1e-9));
}

GridFunction pv_quadrature(const GridFunction& f, const HilbertMethod& method) {
  const auto& spec = f.spec();
  std::vector<double> eps;
  for (double e : method.eps_in_h) eps.push_back(e * spec.h());
  check_schedule(spec, eps);
  const TailModel tail = TailModel::fit(f);

  // the discrete sum with |d| <= m excluded is a midpoint rule for the
  // integral over |u| > (m + 1/2) h; fit a + b e + c e^3 in that radius
  const std::size_t K = eps.size();
  std::vector<double> e_eff(K);
  std::vector<std::vector<cplx>> T(K);
  for (std::size_t i = 0; i < K; ++i) {
    const std::size_t m = excluded_radius(spec, eps[i]);
    e_eff[i] = (static_cast<double>(m) + 0.5) * spec.h();
    T[i] = truncated_sum(f, m);
    add_tail(f, tail, e_eff[i], T[i]);
  }
  std::vector<cplx> out(spec.N);
  if (K == 1) {
    out = T[0];
  } else {
    // least squares on the basis {1, e, e^3} (just {1, e} for two radii)
    const std::size_t P = K == 2 ? 2 : 3;
    std::vector<std::vector<double>> A(K, std::vector<double>(P));
    for (std::size_t i = 0; i < K; ++i) {
      const double s = e_eff[i] / e_eff[0];
      A[i][0] = 1;
      A[i][1] = s;
      if (P == 3) A[i][2] = s * s * s;
    }
    // solve the P x P normal equations once for the row of the pseudo-inverse giving a
    double G[3][3] = {};
    for (std::size_t r = 0; r < P; ++r)
      for (std::size_t c = 0; c < P; ++c)
        for (std::size_t i = 0; i < K; ++i) G[r][c] += A[i][r] * A[i][c];
    // first row of G^{-1} via Gaussian elimination on [G | e_0]
    double aug[3][4] = {};
    for (std::size_t r = 0; r < P; ++r) {
      for (std::size_t c = 0; c < P; ++c) aug[r][c] = G[r][c];
      aug[r][P] = r == 0 ? 1 : 0;
    }
    for (std::size_t c = 0; c < P; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < P; ++r)
        if (std::abs(aug[r][c]) > std::abs(aug[piv][c])) piv = r;
      for (std::size_t k = 0; k <= P; ++k) std::swap(aug[c][k], aug[piv][k]);
      for (std::size_t r = 0; r < P; ++r) {
        if (r == c) continue;
        const double fct = aug[r][c] / aug[c][c];
        for (std::size_t k = 0; k <= P; ++k) aug[r][k] -= fct * aug[c][k];
      }
    }
    std::vector<double> ginv_row(P);
    for (std::size_t r = 0; r < P; ++r) ginv_row[r] = aug[r][P] / aug[r][r];
    std::vector<double> w(K, 0.0);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t r = 0; r < P; ++r) w[i] += ginv_row[r] * A[i][r];
    for (std::size_t j = 0; j < spec.N; ++j)
      for (std::size_t i = 0; i < K; ++i) out[j] += w[i] * T[i][j];
  }
  return GridFunction(spec, std::move(out), DecayClass::RationalDecay);
}

}  // namespace

GridFunction hilbert_transform(const GridFunction& f, const HilbertMethod& method) {
  if (f.is_zero()) return GridFunction::zero(f.spec());
  if (method.tag == HilbertMethod::Tag::Spectral) {
    auto v = detail::spectral_slices(f, true, {0.0});
    return GridFunction(f.spec(), std::move(v[0]), DecayClass::RationalDecay);
  }
  return pv_quadrature(f, method);
}

std::vector<cplx> truncated_hilbert(const GridFunction& f, double eps) {
  check_schedule(f.spec(), {eps});
  auto out = truncated_sum(f, excluded_radius(f.spec(), eps));
  add_tail(f, TailModel::fit(f), eps, out);
  return out;
}

std::vector<double> default_eps_schedule(const GridSpec& spec) {
  std::vector<double> eps;
  for (int k = 0;; ++k) {
    const double e = spec.h() * std::pow(2.0, k / 2.0);
    if (e > spec.L) break;
    eps.push_back(e);
  }
  std::reverse(eps.begin(), eps.end());
  return eps;
}

GridFunction hilbert_maximal(const GridFunction& f, const std::vector<double>& eps_schedule) {
  const auto& spec = f.spec();
  if (eps_schedule.empty()) throw Error(ErrorKind::InvalidArgument, "empty eps schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0) || (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1])))
      throw Error(ErrorKind::InvalidArgument, "eps schedule must be positive and strictly decreasing");
  }
  if (eps_schedule.back() < spec.h() * (1 - 1e-12))
    throw Error(ErrorKind::InvalidArgument, "eps schedule goes below the grid spacing");
  std::vector<double> best(spec.N, 0.0);
  if (f.is_zero()) return GridFunction(spec, best, DecayClass::RationalDecay);
  const TailModel tail = TailModel::fit(f);
  for (double eps : eps_schedule) {
    auto t = truncated_sum(f, excluded_radius(spec, eps));
    add_tail(f, tail, eps, t);
    for (std::size_t j = 0; j < spec.N; ++j) best[j] = std::max(best[j], std::abs(t[j]));
  }
  const auto H = hilbert_transform(f, HilbertMethod::pv());
  for (std::size_t j = 0; j < spec.N; ++j) best[j] = std::max(best[j], std::abs(H[j]));
  return GridFunction(spec, best, DecayClass::RationalDecay);
}

GridFunction analytic_boundary(const GridFunction& f, const HilbertMethod& method) {
  for (std::size_t j = 0; j < f.size(); ++j)
    if (std::abs(f[j].imag()) > 1e-12) throw Error(ErrorKind::ComplexInput, "analytic_boundary needs a real-valued f");
  const auto H = hilbert_transform(f, method);
  std::vector<cplx> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) v[j] = cplx(f[j].real(), H[j].real());
  return GridFunction(f.spec(), std::move(v), DecayClass::RationalDecay);
}

}  // namespace orlab
