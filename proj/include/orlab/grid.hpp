#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace orlab {

using cplx = std::complex<double>;

enum class DecayClass { CompactSupport, RationalDecay, Schwartz };

std::string to_string(DecayClass d);
DecayClass parse_decay_class(const std::string& s);

/// Uniform grid x_j = -L + j h, h = 2L/N, j = 0..N-1.
struct GridSpec {
  double L = 256.0;
  std::size_t N = 32768;

  double h() const { return 2 * L / static_cast<double>(N); }
  double x(std::size_t j) const { return -L + static_cast<double>(j) * h(); }
  /// Trapezoid weight of node j: h, halved at the two ends.
  double weight(std::size_t j) const { return (j == 0 || j + 1 == N) ? 0.5 * h() : h(); }
  void validate() const;
  bool operator==(const GridSpec& o) const { return L == o.L && N == o.N; }
};

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridSpec spec, std::vector<cplx> values, DecayClass decay);
  GridFunction(GridSpec spec, const std::vector<double>& values, DecayClass decay);

  static GridFunction sample(GridSpec spec, const std::function<cplx(double)>& fn, DecayClass decay);
  static GridFunction zero(GridSpec spec);

  const GridSpec& spec() const { return spec_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }
  DecayClass decay() const { return decay_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t j) const { return values_[j]; }

  std::vector<double> abs_values() const;
  std::vector<double> real_part() const;
  bool is_real(double tol = 1e-12) const;
  bool is_zero() const;
  double max_abs() const;

  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  GridFunction scaled(cplx c) const;
  GridFunction with_values(std::vector<cplx> v) const;

  void write_csv(const std::string& path) const;
  static GridFunction read_csv(const std::string& path, DecayClass decay);

 private:
  GridSpec spec_;
  std::vector<cplx> values_;
  DecayClass decay_ = DecayClass::Schwartz;
};

/// Trapezoid quadrature of arbitrary node values.
cplx integrate(const GridSpec& spec, const std::vector<cplx>& v);
double integrate(const GridSpec& spec, const std::vector<double>& v);
cplx integrate(const GridFunction& f);

void require_same_grid(const GridFunction& a, const GridFunction& b);

}  // namespace orlab
