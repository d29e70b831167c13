#include "orlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "orlab/errors.hpp"

namespace orlab {

std::string to_string(DecayClass d) {
  switch (d) {
    case DecayClass::CompactSupport: return "compact_support";
    case DecayClass::RationalDecay: return "rational_decay";
    case DecayClass::Schwartz: return "schwartz";
  }
  return "?";
}

DecayClass parse_decay_class(const std::string& s) {
  if (s == "compact_support") return DecayClass::CompactSupport;
  if (s == "rational_decay") return DecayClass::RationalDecay;
  if (s == "schwartz") return DecayClass::Schwartz;
  throw Error(ErrorKind::ParseError, "unknown decay class '" + s + "'");
}

void GridSpec::validate() const {
  if (!(L > 0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidArgument, "grid half-width must be positive");
  if (N < 16 || (N & (N - 1)) != 0) throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two >= 16");
}

GridFunction::GridFunction(GridSpec spec, std::vector<cplx> values, DecayClass decay)
    : spec_(spec), values_(std::move(values)), decay_(decay) {
  spec_.validate();
  if (values_.size() != spec_.N) throw Error(ErrorKind::SpecMismatch, "value count does not match grid");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::NonFinite, "grid function has non-finite values");
  if (decay_ == DecayClass::CompactSupport) {
    const std::size_t edge = spec_.N / 10;
    for (std::size_t j = 0; j < edge; ++j)
      if (values_[j] != cplx{} || values_[spec_.N - 1 - j] != cplx{})
        throw Error(ErrorKind::InvalidArgument, "compact_support function is nonzero on the outer 10% of the grid");
  }
}

GridFunction::GridFunction(GridSpec spec, const std::vector<double>& values, DecayClass decay)
    : GridFunction(spec, std::vector<cplx>(values.begin(), values.end()), decay) {}

GridFunction GridFunction::sample(GridSpec spec, const std::function<cplx(double)>& fn, DecayClass decay) {
  spec.validate();
  std::vector<cplx> v(spec.N);
  for (std::size_t j = 0; j < spec.N; ++j) v[j] = fn(spec.x(j));
  return GridFunction(spec, std::move(v), decay);
}

GridFunction GridFunction::zero(GridSpec spec) {
  spec.validate();
  return GridFunction(spec, std::vector<cplx>(spec.N), DecayClass::CompactSupport);
}

std::vector<double> GridFunction::abs_values() const {
  std::vector<double> a(values_.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::abs(values_[j]);
  return a;
}

std::vector<double> GridFunction::real_part() const {
  std::vector<double> a(values_.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = values_[j].real();
  return a;
}

bool GridFunction::is_real(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [&](cplx v) { return std::abs(v.imag()) <= tol; });
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx{}; });
}

double GridFunction::max_abs() const {
  double m = 0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {
DecayClass weakest(DecayClass a, DecayClass b) {
  if (a == DecayClass::RationalDecay || b == DecayClass::RationalDecay) return DecayClass::RationalDecay;
  if (a == DecayClass::Schwartz || b == DecayClass::Schwartz) return DecayClass::Schwartz;
  return DecayClass::CompactSupport;
}
}  // namespace

GridFunction GridFunction::operator+(const GridFunction& o) const {
  require_same_grid(*this, o);
  std::vector<cplx> v(values_);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += o.values_[j];
  return GridFunction(spec_, std::move(v), weakest(decay_, o.decay_));
}

GridFunction GridFunction::operator-(const GridFunction& o) const { return *this + o.scaled(-1.0); }

GridFunction GridFunction::scaled(cplx c) const {
  std::vector<cplx> v(values_);
  for (auto& x : v) x *= c;
  return GridFunction(spec_, std::move(v), decay_);
}

GridFunction GridFunction::with_values(std::vector<cplx> v) const { return GridFunction(spec_, std::move(v), decay_); }

void GridFunction::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << "x,re,im\n" << std::setprecision(17);
  for (std::size_t j = 0; j < values_.size(); ++j)
    out << spec_.x(j) << ',' << values_[j].real() << ',' << values_[j].imag() << '\n';
}

GridFunction GridFunction::read_csv(const std::string& path, DecayClass decay) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::string line;
  std::vector<double> xs;
  std::vector<cplx> vs;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("x", 0) == 0) continue;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, re, im = 0;
    if (!(ss >> x >> re)) throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected x,re,im");
    ss >> im;
    xs.push_back(x);
    vs.emplace_back(re, im);
  }
  if (xs.size() < 16) throw Error(ErrorKind::ParseError, path + ": too few rows");
  GridSpec spec{-xs.front(), xs.size()};
  const double h = spec.h();
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (std::abs(xs[j] - spec.x(j)) > 1e-9 * std::max(1.0, spec.L))
      throw Error(ErrorKind::ParseError, path + ": x column is not the grid -L + j*h (h = " + std::to_string(h) + ")");
  return GridFunction(spec, std::move(vs), decay);
}

cplx integrate(const GridSpec& spec, const std::vector<cplx>& v) {
  cplx s{};
  for (std::size_t j = 0; j < v.size(); ++j) s += spec.weight(j) * v[j];
  return s;
}

double integrate(const GridSpec& spec, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += spec.weight(j) * v[j];
  return s;
}

cplx integrate(const GridFunction& f) { return integrate(f.spec(), f.values()); }

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.spec() == b.spec())) throw Error(ErrorKind::SpecMismatch, "grid functions live on different grids");
}

}  // namespace orlab
