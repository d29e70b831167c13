#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "orlab/errors.hpp"
#include "orlab/halfplane.hpp"
#include "orlab/hilbert.hpp"
#include "orlab/norms.hpp"

using namespace orlab;
using std::numbers::pi;

namespace {

const GridSpec kGrid{64.0, 8192};

GridFunction p1() {
  return GridFunction::sample(kGrid, [](double x) { return cplx(1 / (pi * (1 + x * x))); }, DecayClass::RationalDecay);
}
GridFunction gaussian(double shift = 0) {
  return GridFunction::sample(kGrid, [=](double x) { return cplx(std::exp(-(x - shift) * (x - shift))); }, DecayClass::Schwartz);
}
GridFunction bump() {
  return GridFunction::sample(kGrid, [](double x) { return cplx(std::abs(x) < 2 ? std::exp(-1 / (1 - x * x / 4)) : 0.0); },
                              DecayClass::CompactSupport);
}

double inner(const GridFunction& a, const GridFunction& b) {
  double s = 0;
  for (std::size_t j = 0; j < kGrid.N; ++j) s += kGrid.weight(j) * (a[j] * b[j]).real();
  return s;
}

}  // namespace

TEST(Hilbert, CauchyDensityGivesConjugateKernel) {
  for (auto method : {HilbertMethod::spectral(), HilbertMethod::pv()}) {
    auto H = hilbert_transform(p1(), method);
    double e = 0;
    for (std::size_t j = 0; j < kGrid.N; ++j) {
      const double x = kGrid.x(j);
      if (std::abs(x) <= kGrid.L / 2) e = std::max(e, std::abs(H[j] - x / (pi * (1 + x * x))));
    }
    EXPECT_LE(e, 1e-4) << method.name();
  }
}

TEST(Hilbert, EvenToOddAndInvolution) {
  for (auto method : {HilbertMethod::spectral(), HilbertMethod::pv()}) {
    auto H = hilbert_transform(gaussian(), method);
    double defect = 0;
    for (std::size_t j = 1; j < kGrid.N; ++j) defect = std::max(defect, std::abs(H[j] + H[kGrid.N - j]));
    EXPECT_LE(defect, 1e-10) << method.name();
    auto f = gaussian(0.7);
    auto HH = hilbert_transform(hilbert_transform(f, method), method);
    EXPECT_LE(std::sqrt(inner(HH + f, HH + f) / inner(f, f)), 1e-3) << method.name();
  }
  EXPECT_TRUE(hilbert_transform(GridFunction::zero(kGrid)).is_zero());
}

TEST(Hilbert, MethodsAgreeAndPairingIdentities) {
  for (const auto& f : {gaussian(), gaussian(-3), p1(), bump()}) {
    auto hs = hilbert_transform(f, HilbertMethod::spectral());
    auto hp = hilbert_transform(f, HilbertMethod::pv());
    double e = 0;
    for (std::size_t j = 0; j < kGrid.N; ++j)
      if (hilbert_reliable(kGrid, j)) e = std::max(e, std::abs(hs[j] - hp[j]));
    EXPECT_LE(e, 1e-3);
  }
  auto f = gaussian(1), g = p1();
  auto Hf = hilbert_transform(f), Hg = hilbert_transform(g);
  const double scale = std::sqrt(inner(f, f) * inner(g, g));
  EXPECT_LE(std::abs(inner(Hf, g) + inner(f, Hg)), 1e-3 * scale);
  // H f ~ m_f / (pi x) off the grid, so the product integral has a tail 2 m_f m_g / (pi^2 L)
  const double mf = integrate(f).real(), mg = integrate(g).real();
  const double tail = 2 * mf * mg / (pi * pi * kGrid.L);
  EXPECT_LE(std::abs(inner(Hf, Hg) + tail - inner(f, g)), 1e-3 * scale);
}

TEST(Hilbert, ConjugateExtensionIsPoissonOfHilbert) {
  for (const auto& f : {gaussian(), p1(), bump()}) {
    auto lat = HeightLattice::dyadic(4);
    auto V = conjugate_extend(f, lat);
    auto UH = poisson_extend(hilbert_transform(f), lat);
    for (std::size_t i = 0; i < lat.heights.size(); ++i) {
      double e = 0;
      for (std::size_t j = 0; j < kGrid.N; ++j) e = std::max(e, std::abs(V.values[i][j] - UH.values[i][j]));
      EXPECT_LE(e, 1e-3) << lat.heights[i];
    }
  }
}

TEST(Hilbert, MethodPreconditions) {
  EXPECT_THROW(hilbert_transform(gaussian(), HilbertMethod::pv({2, 4})), Error);
  EXPECT_THROW(hilbert_transform(gaussian(), HilbertMethod::pv({4, 2, 0.5})), Error);
  auto m = HilbertMethod::parse("pv", "8h,4h,2h");
  EXPECT_EQ(m.eps_in_h, (std::vector<double>{8, 4, 2}));
  EXPECT_THROW(HilbertMethod::parse("fourier"), Error);
}

TEST(HilbertMaximal, Examples) {
  auto sched = default_eps_schedule(kGrid);
  EXPECT_TRUE(hilbert_maximal(GridFunction::zero(kGrid), sched).is_zero());
  auto f = gaussian(0.5);
  auto M = hilbert_maximal(f, sched);
  auto H = hilbert_transform(f);
  for (std::size_t j = 0; j < kGrid.N; ++j)
    if (hilbert_reliable(kGrid, j)) ASSERT_GE(M[j].real(), std::abs(H[j]) - 1e-6);
  // at 0, every truncation of the odd kernel against the even P_1 vanishes; the
  // bound is (1 + 1/pi) M_HL(P_1)(0) + M_rad(V_{P_1})(0) = (1 + 1/pi)/pi + 0
  auto MP = hilbert_maximal(p1(), sched);
  EXPECT_LE(MP[kGrid.N / 2].real(), (1 + 1 / pi) / pi + 1e-6);
  EXPECT_THROW(hilbert_maximal(f, {1.0, 2.0}), Error);
}

TEST(AnalyticBoundary, Examples) {
  auto b = analytic_boundary(p1());
  for (std::size_t j = 0; j < kGrid.N; ++j) {
    const double x = kGrid.x(j);
    if (std::abs(x) <= kGrid.L / 2) ASSERT_NEAR(std::abs(b[j] - cplx(1, x) / (pi * (1 + x * x))), 0.0, 1e-4);
  }
  EXPECT_TRUE(analytic_boundary(GridFunction::zero(kGrid)).is_zero());
  auto complex_f = p1().scaled(cplx(1, 1));
  try {
    analytic_boundary(complex_f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ComplexInput);
  }
}
