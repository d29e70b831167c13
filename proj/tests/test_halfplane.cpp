#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "orlab/halfplane.hpp"
#include "orlab/norms.hpp"

using namespace orlab;
using std::numbers::pi;

namespace {

const GridSpec kGrid{64.0, 8192};

GridFunction cauchy_density(GridSpec spec = kGrid, double a = 1.0) {
  return GridFunction::sample(spec, [a](double x) { return cplx(a / (pi * (x * x + a * a))); }, DecayClass::RationalDecay);
}

GridFunction gaussian(GridSpec spec = kGrid) {
  return GridFunction::sample(spec, [](double x) { return cplx(std::exp(-x * x / 2)); }, DecayClass::Schwartz);
}

double max_err(const std::vector<cplx>& v, const GridSpec& spec, const std::function<cplx(double)>& exact) {
  double e = 0;
  for (std::size_t j = 0; j < spec.N; ++j) e = std::max(e, std::abs(v[j] - exact(spec.x(j))));
  return e;
}

}  // namespace

TEST(Kernels, Values) {
  EXPECT_NEAR(kernel_eval(KernelKind::Poisson, 1, 0.3, 0.3).real(), 1 / pi, 1e-15);
  EXPECT_NEAR(kernel_eval(KernelKind::Conjugate, 1, 1.5, 0.5).real(), 1 / (2 * pi), 1e-15);
  for (double y : {0.01, 0.5, 3.0})
    for (double x : {-4.0, -0.2, 0.0, 1.7})
      for (double t : {-2.0, 0.0, 0.9}) {
        const cplx c = kernel_eval(KernelKind::Cauchy, y, x, t);
        const cplx pq = kernel_eval(KernelKind::Poisson, y, x, t) + cplx(0, 1) * kernel_eval(KernelKind::Conjugate, y, x, t);
        EXPECT_LE(std::abs(c - pq), 1e-14 * std::max(1.0, std::abs(c)));
      }
}

TEST(JAlpha, ArctanAndGammaOracles) {
  EXPECT_NEAR(*j_alpha(2, 1), pi, 1e-12);
  EXPECT_NEAR(*j_alpha(2, 2), pi / 2, 1e-12);
  EXPECT_FALSE(j_alpha(1, 1).has_value());
  EXPECT_FALSE(j_alpha(0.5, 3).has_value());
  for (double a : {1.2, 1.5, 3.0, 4.5}) {
    const double beta = std::sqrt(pi) * std::tgamma((a - 1) / 2) / std::tgamma(a / 2);
    EXPECT_NEAR(*j_alpha(a, 0.7) / (std::pow(0.7, 1 - a) * beta), 1.0, 1e-9) << a;
  }
}

TEST(PoissonExtend, SemigroupOnCauchyDensity) {
  HeightLattice lat{{0.5}};
  auto f = cauchy_density();
  auto U = poisson_extend(f, lat);
  auto V = conjugate_extend(f, lat);
  EXPECT_LE(max_err(U.values[0], kGrid, [](double x) { return cplx(1.5 / (pi * (x * x + 2.25))); }), 1e-4);
  EXPECT_LE(max_err(V.values[0], kGrid, [](double x) { return cplx(x / (pi * (x * x + 2.25))); }), 1e-3);
  auto S = cauchy_transform(f, lat);
  const cplx s0 = S.values[0][kGrid.N / 2];
  EXPECT_NEAR(s0.real(), 1 / (pi * 1.5), 1e-3);
  EXPECT_NEAR(s0.imag(), 0.0, 1e-3);
}

TEST(PoissonExtend, ConstantWindowApproximatesOne) {
  GridSpec big{1024.0, 65536};
  auto one = GridFunction::sample(big, [&](double x) { return cplx(std::abs(x) <= 0.8 * big.L ? 1.0 : 0.0); },
                                  DecayClass::CompactSupport);
  auto U = poisson_extend(one, HeightLattice::dyadic(8));
  for (const auto& row : U.values)
    for (std::size_t j = 0; j < big.N; ++j)
      if (std::abs(big.x(j)) <= big.L / 4) ASSERT_NEAR(row[j].real(), 1.0, 1e-3);
}

TEST(PoissonExtend, RealInputAndZero) {
  auto U = poisson_extend(gaussian(), HeightLattice::dyadic());
  for (const auto& row : U.values)
    for (const auto& v : row) ASSERT_LE(std::abs(v.imag()), 1e-12);
  auto V = conjugate_extend(gaussian(), HeightLattice::dyadic());
  for (const auto& row : V.values) EXPECT_LE(std::abs(row[kGrid.N / 2]), 1e-10);
  auto Z = conjugate_extend(GridFunction::zero(kGrid), HeightLattice::dyadic());
  for (const auto& row : Z.values)
    for (const auto& v : row) ASSERT_EQ(v, cplx{});
}

TEST(PoissonExtend, SpectralMatchesDirectQuadrature) {
  std::vector<std::size_t> nodes;
  std::vector<double> xs;
  for (std::size_t j = kGrid.N / 8; j < 7 * kGrid.N / 8; j += 331) {
    nodes.push_back(j);
    xs.push_back(kGrid.x(j));
  }
  HeightLattice lat{{2.0, 1.0, 0.5, 0.25}};
  auto conj_cauchy = GridFunction::sample(kGrid, [](double x) { return cplx(x / (pi * (1 + x * x))); }, DecayClass::RationalDecay);
  auto mixed = GridFunction::sample(kGrid, [](double x) { return cplx(std::exp(-x * x), 1 / (1 + (x - 1) * (x - 1))); },
                                    DecayClass::RationalDecay);
  for (const auto& f : {gaussian(), cauchy_density(), conj_cauchy, mixed}) {
    auto U = poisson_extend(f, lat);
    auto V = conjugate_extend(f, lat);
    auto S = cauchy_transform(f, lat);
    for (std::size_t i = 0; i < lat.heights.size(); ++i) {
      const double y = lat.heights[i];
      auto pu = poisson_direct(f, y, xs), pv = conjugate_direct(f, y, xs), pc = cauchy_direct(f, y, xs);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const std::size_t j = nodes[k];
        EXPECT_LE(std::abs(U.values[i][j] - pu[k]), 1e-6) << "U y=" << y << " x=" << xs[k];
        EXPECT_LE(std::abs(V.values[i][j] - pv[k]), 1e-6) << "V y=" << y << " x=" << xs[k];
        EXPECT_LE(std::abs(S.values[i][j] - pc[k]), 1e-6) << "S y=" << y << " x=" << xs[k];
      }
    }
  }
}

TEST(PoissonExtend, ShiftSemigroupAndNorms) {
  auto f = gaussian();
  auto lat = HeightLattice::dyadic();
  auto U = poisson_extend(f, lat);
  for (std::size_t b = 0; b < lat.heights.size(); b += 2) {
    auto slice = U.slice(b, DecayClass::RationalDecay);
    for (std::size_t i = 0; i < lat.heights.size(); i += 3) {
      const double target = lat.heights[i] + lat.heights[b];
      auto shifted = poisson_extend(slice, HeightLattice{{lat.heights[i]}});
      auto direct = poisson_extend(f, HeightLattice{{target}});
      double e = 0;
      for (std::size_t j = 0; j < kGrid.N; ++j) e = std::max(e, std::abs(shifted.values[0][j] - direct.values[0][j]));
      EXPECT_LE(e, 1e-4) << b << ' ' << i;
    }
  }
  for (const char* s : {"power:p=2", "powerlog:p=2,beta=1"}) {
    auto phi = GrowthFunction::parse(s);
    const double nf = luxemburg_norm(f, phi).value;
    double prev = 0;
    for (std::size_t i = 0; i < lat.heights.size(); ++i) {
      const double n = luxemburg_norm(U.slice(i), phi).value;
      EXPECT_LE(n, nf + 1e-6) << s;
      EXPECT_GE(n + 1e-8, prev) << s;  // heights decrease, so norms increase along the lattice
      prev = n;
    }
  }
}

TEST(Measure, Atoms) {
  auto lat = HeightLattice::dyadic(4);
  auto F = poisson_extend_measure(RadonMeasure{{{0.0, 1.0}}, std::nullopt}, lat, kGrid);
  for (std::size_t i = 0; i < lat.heights.size(); ++i)
    for (std::size_t j = 0; j < kGrid.N; j += 97) ASSERT_EQ(F.values[i][j].real(), poisson_kernel(lat.heights[i], kGrid.x(j)));
  auto G = poisson_extend_measure(RadonMeasure{{{0.0, pi}}, std::nullopt}, lat, kGrid);
  for (std::size_t i = 0; i < lat.heights.size(); ++i) EXPECT_NEAR(G.values[i][kGrid.N / 2].real(), 1 / lat.heights[i], 1e-12);
  auto H = poisson_extend_measure(RadonMeasure{{{-1.0, 0.5}, {1.0, 0.5}}, std::nullopt}, lat, kGrid);
  for (std::size_t i = 0; i < lat.heights.size(); ++i) {
    const double y = lat.heights[i];
    EXPECT_NEAR(H.values[i][kGrid.N / 2].real(), y / (pi * (1 + y * y)), 1e-14);
  }
  RadonMeasure mixed{{{2.0, -1.0}}, cauchy_density()};
  EXPECT_NEAR(mixed.weighted_mass(), 1.0 / 5 + 0.5, 1e-4);  // int P_1/(1+t^2) = pi P_2(0) = 1/2
  auto M = poisson_extend_measure(mixed, HeightLattice{{0.5}}, kGrid);
  EXPECT_NEAR(M.values[0][kGrid.N / 2].real(), 1 / (1.5 * pi) - poisson_kernel(0.5, -2.0), 1e-4);
}
