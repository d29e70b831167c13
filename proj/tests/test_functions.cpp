#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "orlab/errors.hpp"
#include "orlab/functions.hpp"

using namespace orlab;
using std::numbers::pi;

namespace {

const GridSpec kGrid{16, 4096};

double value_at(const GridFunction& f, double x) {
  const auto j = static_cast<std::size_t>(std::llround((x + f.spec().L) / f.spec().h()));
  return f[j].real();
}

}  // namespace

TEST(Functions, GaussianSamples) {
  const auto f = make_function("gauss:s=2,c=1,a=3", kGrid);
  EXPECT_DOUBLE_EQ(value_at(f, 1.0), 3.0);
  EXPECT_NEAR(value_at(f, 3.0), 3 * std::exp(-1.0), 1e-15);
  EXPECT_EQ(f.decay(), DecayClass::Schwartz);
}

TEST(Functions, CauchyDensityHasUnitMass) {
  const auto f = make_function("cauchy:y=0.5", GridSpec{256, 32768});
  // the grid misses the tail beyond |x| = 256, roughly 2 * 0.5 / (pi 256)
  const double tail = 2 * std::atan2(0.5, 256.0) / pi;
  EXPECT_NEAR(integrate(f).real(), 1 - tail, 1e-6);
  EXPECT_EQ(f.decay(), DecayClass::RationalDecay);
}

TEST(Functions, ConjugateCauchyMatchesClosedForm) {
  const auto f = make_function("conjcauchy:y=1", kGrid);
  EXPECT_NEAR(value_at(f, 2.0), 2.0 / (pi * 5.0), 1e-15);
}

TEST(Functions, BumpPeakAndSupport) {
  const auto f = make_function("bump:c=1,r=3,a=0.5", kGrid);
  EXPECT_DOUBLE_EQ(value_at(f, 1.0), 0.5);
  EXPECT_EQ(value_at(f, 4.5), 0.0);
  EXPECT_EQ(value_at(f, -2.5), 0.0);
  EXPECT_EQ(f.decay(), DecayClass::CompactSupport);
  // mass against adaptive quadrature of the same formula
  auto g = [](double x) {
    const double u = (x - 1) / 3;
    return std::abs(u) < 1 ? 0.5 * std::exp(1 - 1 / (1 - u * u)) : 0.0;
  };
  const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -2, 4, 15, 1e-12);
  EXPECT_NEAR(integrate(f).real(), q, 1e-9);
}

TEST(Functions, RectIsHalfOpen) {
  const auto f = make_function("rect:a=0,b=1,v=2", kGrid);
  EXPECT_EQ(value_at(f, 0.0), 2.0);
  EXPECT_EQ(value_at(f, 1.0), 0.0);
  EXPECT_EQ(value_at(f, -kGrid.h()), 0.0);
}

TEST(Functions, SmoothRectIsOneInsideAndZeroFarOutside) {
  const auto f = make_function("smoothrect", kGrid);
  EXPECT_DOUBLE_EQ(value_at(f, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(value_at(f, -1.0), 1.0);
  EXPECT_EQ(value_at(f, 1.5), 0.0);
  EXPECT_GT(value_at(f, 1.1), 0.0);
  EXPECT_LT(value_at(f, 1.1), 1.0);
}

TEST(Functions, UnknownParameterAndFamily) {
  try {
    make_function("gauss:sigma=1", kGrid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownKey);
  }
  try {
    make_function("wavelet", kGrid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(Functions, CsvRoundTripAndGridMismatch) {
  const auto path = (std::filesystem::temp_directory_path() / "orlab_fn_roundtrip.csv").string();
  const auto f = make_function("gauss:s=1", kGrid);
  f.write_csv(path);
  const auto g = make_function("csv:file=" + path + ",decay=schwartz", kGrid);
  for (std::size_t j = 0; j < f.size(); j += 97) EXPECT_EQ(f[j], g[j]);
  try {
    make_function("csv:file=" + path, GridSpec{16, 2048});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SpecMismatch);
  }
  std::filesystem::remove(path);
}

TEST(Functions, PiecewiseFormOnlyForRect) {
  const auto pc = piecewise_form("rect:a=0,b=1");
  ASSERT_TRUE(pc.has_value());
  EXPECT_EQ(pc->log_abs_at(0.5), 0.0);
  EXPECT_EQ(pc->log_abs_at(2.0), -std::numeric_limits<double>::infinity());
  EXPECT_FALSE(piecewise_form("gauss:s=1").has_value());
}

TEST(Functions, MeasureBuilder) {
  const auto mu = make_measure({{0, 1}, {2, 0.5}}, "gauss:s=1", kGrid);
  ASSERT_EQ(mu.atoms.size(), 2u);
  ASSERT_TRUE(mu.density.has_value());
  // int dmu/(1+t^2): atoms give 1 + 0.5/5; the density part by quadrature
  auto g = [](double t) { return std::exp(-t * t) / (1 + t * t); };
  const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -16, 16, 15, 1e-12);
  EXPECT_NEAR(mu.weighted_mass(), 1.1 + q, 1e-8);
}

TEST(Functions, HelpListsEveryFamily) {
  const auto help = function_families_help();
  for (const char* fam : {"gauss", "cauchy", "conjcauchy", "bump", "rect", "tent", "smoothrect", "csv", "zero"})
    EXPECT_NE(help.find(fam), std::string::npos) << fam;
}
