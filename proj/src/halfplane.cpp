#include "orlab/halfplane.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <fstream>
#include <numbers>

#include "orlab/errors.hpp"
#include "orlab/fft.hpp"
#include "orlab/parallel.hpp"
#include "orlab/spec_string.hpp"
#include "orlab/tail.hpp"

namespace orlab {

using std::numbers::pi;

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::Poisson: return "poisson";
    case FieldKind::Conjugate: return "conjugate";
    case FieldKind::Cauchy: return "cauchy";
    case FieldKind::Measure: return "measure";
  }
  return "?";
}

HeightLattice HeightLattice::dyadic(int finest_exponent, int coarsest_exponent) {
  if (finest_exponent < coarsest_exponent) throw Error(ErrorKind::InvalidArgument, "empty height lattice");
  HeightLattice lat;
  for (int k = coarsest_exponent; k <= finest_exponent; ++k) lat.heights.push_back(std::ldexp(1.0, -k));
  return lat;
}

void HeightLattice::validate() const {
  if (heights.empty()) throw Error(ErrorKind::InvalidArgument, "height lattice is empty");
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (!(heights[i] > 0) || !std::isfinite(heights[i]))
      throw Error(ErrorKind::InvalidArgument, "heights must be positive and finite");
    if (i > 0 && !(heights[i] < heights[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "heights must be strictly decreasing");
  }
}

GridFunction HalfPlaneField::slice(std::size_t i, DecayClass decay) const {
  if (i >= values.size()) throw Error(ErrorKind::InvalidArgument, "height index out of range");
  return GridFunction(spec, values[i], decay);
}

void HalfPlaneField::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << "y,x,re,im\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < spec.N; ++j)
      out << format_number(lattice.heights[i]) << ',' << format_number(spec.x(j)) << ','
          << format_number(values[i][j].real()) << ',' << format_number(values[i][j].imag()) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

double RadonMeasure::weighted_mass() const {
  double m = 0;
  for (const auto& [t, w] : atoms) m += std::abs(w) / (1 + t * t);
  if (density) {
    const auto& spec = density->spec();
    for (std::size_t j = 0; j < spec.N; ++j) {
      const double t = spec.x(j);
      m += spec.weight(j) * std::abs((*density)[j]) / (1 + t * t);
    }
  }
  return m;
}

double poisson_kernel(double y, double x) { return y / (pi * (x * x + y * y)); }
double conjugate_kernel(double y, double x) { return x / (pi * (x * x + y * y)); }

cplx kernel_eval(KernelKind kind, double y, double x, double t) {
  switch (kind) {
    case KernelKind::Poisson: return poisson_kernel(y, x - t);
    case KernelKind::Conjugate: return conjugate_kernel(y, x - t);
    case KernelKind::Cauchy: return 1.0 / (cplx(0, pi) * (cplx(t, 0) - cplx(x, y)));
  }
  return {};
}

std::optional<double> j_alpha(double alpha, double y) {
  if (!(y > 0)) throw Error(ErrorKind::DomainError, "j_alpha needs y > 0");
  if (!(alpha > 1)) return std::nullopt;
  // u = tan^2(theta) turns the integrand into 2 cos^{alpha-2}(theta); write it
  // as 2 sin^{alpha-2}(phi) so the endpoint singularity sits at phi = 0.
  boost::math::quadrature::tanh_sinh<double> ts;
  const double I = ts.integrate([alpha](double phi) { return 2 * std::pow(std::sin(phi), alpha - 2); }, 0.0, pi / 2);
  return std::pow(y, 1 - alpha) * I;
}

namespace detail {

std::vector<std::vector<cplx>> spectral_slices(const GridFunction& f, bool conjugate,
                                               const std::vector<double>& heights,
                                               std::vector<double>* correction) {
  const auto& spec = f.spec();
  const std::size_t N = spec.N, M = 4 * N;
  const double h = spec.h(), W = static_cast<double>(M) * h;
  std::vector<std::vector<cplx>> out(heights.size(), std::vector<cplx>(N));
  if (correction) correction->assign(heights.size(), 0.0);
  if (f.is_zero()) return out;

  std::vector<cplx> fhat(M);
  for (std::size_t j = 0; j < N; ++j) fhat[j] = f[j];
  fft::forward(fhat);

  // moments of s_j = pi t_j / W for the periodization correction
  const double q = pi / W;
  std::array<cplx, 6> mu{};
  for (std::size_t j = 0; j < N; ++j) {
    const double s = q * spec.x(j);
    double p = h;
    for (auto& m : mu) {
      m += p * f[j];
      p *= s;
    }
  }
  // sum_j h f_j (X - s_j)^n from the moments
  auto shifted = [&](double X, int n) {
    static constexpr double binom[6][6] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}, {1, 5, 10, 10, 5, 1}};
    cplx acc{};
    for (int k = 0; k <= n; ++k) acc += binom[n][k] * std::pow(X, n - k) * ((k % 2) ? -1.0 : 1.0) * mu[k];
    return acc;
  };

  const TailModel tail = TailModel::fit(f);
  const bool real_input = f.is_real();

  parallel_for(heights.size(), [&](std::size_t i) {
    const double y = heights[i];
    std::vector<cplx> buf(fhat);
    for (std::size_t k = 0; k < M; ++k) {
      const long n = fft::frequency_index(k, M);
      const double xi = static_cast<double>(n) / W;
      const double damp = std::exp(-2 * pi * std::abs(xi) * y);
      if (!conjugate) {
        buf[k] *= damp;
      } else if (n == 0 || 2 * static_cast<std::size_t>(std::abs(n)) == M) {
        buf[k] = 0;
      } else {
        buf[k] *= cplx(0, n > 0 ? -damp : damp);
      }
    }
    fft::inverse(buf);
    auto& row = out[i];
    for (std::size_t j = 0; j < N; ++j) {
      const double x = spec.x(j);
      const double X = q * x;
      const cplx raw = buf[j];
      cplx v = raw;
      // the multiplier convolves with the W-periodized kernel; remove the images
      if (!conjugate) {
        // csc^2 z - 1/z^2 = 1/3 + z^2/15 + 2 z^4/189
        v -= (y / pi) * q * q * (shifted(X, 0) / 3.0 + shifted(X, 2) / 15.0 + 2.0 * shifted(X, 4) / 189.0);
      } else {
        // cot z - 1/z = -z/3 - z^3/45 - 2 z^5/945
        v += (q / pi) * (shifted(X, 1) / 3.0 + shifted(X, 3) / 45.0 + 2.0 * shifted(X, 5) / 945.0);
      }
      if (tail.active) {
        for (std::size_t k = 0; k < tail.t_nodes.size(); ++k) {
          const double u = x - tail.t_nodes[k];
          v += (conjugate ? u : y) / (pi * (u * u + y * y)) * tail.coef[k];
        }
      }
      if (!conjugate && real_input) v.imag(0);
      if (correction) (*correction)[i] = std::max((*correction)[i], std::abs(v - raw));
      row[j] = v;
    }
  });
  return out;
}

}  // namespace detail

namespace {

HalfPlaneField make_field(const GridFunction& f, const HeightLattice& lattice, FieldKind kind) {
  lattice.validate();
  HalfPlaneField field;
  field.spec = f.spec();
  field.lattice = lattice;
  field.kind = kind;
  return field;
}

enum class Direct { Poisson, Conjugate, Cauchy };

std::vector<cplx> direct(const GridFunction& f, double y, const std::vector<double>& xs, Direct which) {
  if (!(y > 0)) throw Error(ErrorKind::DomainError, "direct quadrature needs y > 0");
  const auto& spec = f.spec();
  const double h = spec.h();
  const TailModel tail = TailModel::fit(f);
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    cplx acc{};
    if (which == Direct::Cauchy) {
      const cplx z(x, y), c = 1.0 / cplx(0, pi);
      for (std::size_t j = 0; j < spec.N; ++j) acc += h * f[j] / (cplx(spec.x(j), 0) - z);
      acc *= c;
      for (std::size_t k = 0; k < tail.t_nodes.size(); ++k) acc += c * tail.coef[k] / (cplx(tail.t_nodes[k], 0) - z);
    } else {
      auto K = which == Direct::Poisson ? poisson_kernel : conjugate_kernel;
      for (std::size_t j = 0; j < spec.N; ++j) acc += h * K(y, x - spec.x(j)) * f[j];
      for (std::size_t k = 0; k < tail.t_nodes.size(); ++k) acc += K(y, x - tail.t_nodes[k]) * tail.coef[k];
    }
    out[i] = acc;
  });
  return out;
}

}  // namespace

HalfPlaneField poisson_extend(const GridFunction& f, const HeightLattice& lattice) {
  auto field = make_field(f, lattice, FieldKind::Poisson);
  field.values = detail::spectral_slices(f, false, lattice.heights, &field.tail_correction);
  return field;
}

HalfPlaneField conjugate_extend(const GridFunction& f, const HeightLattice& lattice) {
  auto field = make_field(f, lattice, FieldKind::Conjugate);
  field.values = detail::spectral_slices(f, true, lattice.heights, &field.tail_correction);
  return field;
}

HalfPlaneField cauchy_transform(const GridFunction& f, const HeightLattice& lattice) {
  auto field = make_field(f, lattice, FieldKind::Cauchy);
  std::vector<double> cu, cv;
  field.values = detail::spectral_slices(f, false, lattice.heights, &cu);
  const auto v = detail::spectral_slices(f, true, lattice.heights, &cv);
  field.tail_correction.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) field.tail_correction[i] = cu[i] + cv[i];
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v[i].size(); ++j) field.values[i][j] += cplx(0, 1) * v[i][j];
  return field;
}

std::vector<cplx> poisson_direct(const GridFunction& f, double y, const std::vector<double>& xs) {
  return direct(f, y, xs, Direct::Poisson);
}

std::vector<cplx> conjugate_direct(const GridFunction& f, double y, const std::vector<double>& xs) {
  return direct(f, y, xs, Direct::Conjugate);
}

std::vector<cplx> cauchy_direct(const GridFunction& f, double y, const std::vector<double>& xs) {
  return direct(f, y, xs, Direct::Cauchy);
}

HalfPlaneField poisson_extend_measure(const RadonMeasure& mu, const HeightLattice& lattice, const GridSpec& spec) {
  lattice.validate();
  for (const auto& [t, w] : mu.atoms)
    if (!std::isfinite(t) || !std::isfinite(w)) throw Error(ErrorKind::NonFinite, "measure atom is not finite");
  HalfPlaneField field;
  field.spec = mu.density ? mu.density->spec() : spec;
  field.spec.validate();
  field.lattice = lattice;
  field.kind = FieldKind::Measure;
  if (mu.density) {
    field.values = detail::spectral_slices(*mu.density, false, lattice.heights, &field.tail_correction);
  } else {
    field.values.assign(lattice.heights.size(), std::vector<cplx>(field.spec.N));
    field.tail_correction.assign(lattice.heights.size(), 0.0);
  }
  for (std::size_t i = 0; i < lattice.heights.size(); ++i) {
    const double y = lattice.heights[i];
    for (std::size_t j = 0; j < field.spec.N; ++j) {
      const double x = field.spec.x(j);
      double s = 0;
      for (const auto& [t, w] : mu.atoms) s += w * poisson_kernel(y, x - t);
      field.values[i][j] += s;
    }
  }
  return field;
}

}  // namespace orlab
