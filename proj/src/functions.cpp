#include "orlab/functions.hpp"

#include <cmath>
#include <numbers>

#include "orlab/errors.hpp"
#include "orlab/spec_string.hpp"

namespace orlab {

using std::numbers::pi;

namespace {

// C^inf step: 0 for s <= 0, 1 for s >= 1
double smooth_step(double s) {
  if (s <= 0) return 0;
  if (s >= 1) return 1;
  const double a = std::exp(-1 / s), b = std::exp(-1 / (1 - s));
  return a / (a + b);
}

double positive(const SpecString& s, const std::string& key, double fallback) {
  const double v = s.number_or(key, fallback);
  if (!(v > 0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, key + " must be positive in " + s.name);
  return v;
}

}  // namespace

GridFunction make_function(std::string_view text, const GridSpec& grid) {
  grid.validate();
  const auto s = SpecString::parse(text);
  if (s.name == "gauss") {
    s.allow_only({"s", "c", "a"});
    const double w = positive(s, "s", 1), c = s.number_or("c", 0), a = s.number_or("a", 1);
    return GridFunction::sample(grid, [=](double x) { return cplx(a * std::exp(-(x - c) * (x - c) / (w * w))); },
                                DecayClass::Schwartz);
  }
  if (s.name == "cauchy" || s.name == "conjcauchy") {
    s.allow_only({"y", "c", "a"});
    const double y = positive(s, "y", 1), c = s.number_or("c", 0), a = s.number_or("a", 1);
    const bool conj = s.name == "conjcauchy";
    return GridFunction::sample(
        grid, [=](double x) { return cplx(a * (conj ? conjugate_kernel(y, x - c) : poisson_kernel(y, x - c))); },
        DecayClass::RationalDecay);
  }
  if (s.name == "bump") {
    s.allow_only({"c", "r", "a"});
    const double c = s.number_or("c", 0), r = positive(s, "r", 1), a = s.number_or("a", 1);
    return GridFunction::sample(
        grid,
        [=](double x) {
          const double u = (x - c) / r;
          return cplx(std::abs(u) < 1 ? a * std::exp(1 - 1 / (1 - u * u)) : 0.0);
        },
        DecayClass::CompactSupport);
  }
  if (s.name == "rect") {
    s.allow_only({"a", "b", "v"});
    const double a = s.number_or("a", 0), b = s.number_or("b", 1), v = s.number_or("v", 1);
    if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "rect needs a < b");
    return GridFunction::sample(grid, [=](double x) { return cplx(x >= a && x < b ? v : 0.0); },
                                DecayClass::CompactSupport);
  }
  if (s.name == "tent") {
    s.allow_only({"c", "r", "a"});
    const double c = s.number_or("c", 0), r = positive(s, "r", 1), a = s.number_or("a", 1);
    return GridFunction::sample(grid, [=](double x) { return cplx(a * std::max(0.0, 1 - std::abs(x - c) / r)); },
                                DecayClass::CompactSupport);
  }
  if (s.name == "smoothrect") {
    s.allow_only({"a", "b", "w"});
    const double a = s.number_or("a", -1), b = s.number_or("b", 1), w = positive(s, "w", 0.25);
    if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "smoothrect needs a < b");
    return GridFunction::sample(
        grid, [=](double x) { return cplx(smooth_step((x - a + w) / w) * smooth_step((b + w - x) / w)); },
        DecayClass::CompactSupport);
  }
  if (s.name == "csv") {
    s.allow_only({"file", "decay"});
    auto f = GridFunction::read_csv(s.text("file"), parse_decay_class(s.has("decay") ? s.text("decay") : "rational_decay"));
    if (!(f.spec() == grid)) throw Error(ErrorKind::SpecMismatch, "csv grid differs from the requested grid");
    return f;
  }
  if (s.name == "zero") {
    s.allow_only({});
    return GridFunction::zero(grid);
  }
  throw Error(ErrorKind::ParseError, "unknown function family '" + s.name + "'");
}

std::optional<PiecewiseConstant> piecewise_form(std::string_view text) {
  const auto s = SpecString::parse(text);
  if (s.name != "rect") return std::nullopt;
  s.allow_only({"a", "b", "v"});
  return PiecewiseConstant::from_values({s.number_or("a", 0), s.number_or("b", 1)}, {s.number_or("v", 1)});
}

std::string function_families_help() {
  return "function families:\n"
         "  gauss:s=1,c=0,a=1          a exp(-((x-c)/s)^2)\n"
         "  cauchy:y=1,c=0,a=1         a P_y(x-c), Poisson kernel\n"
         "  conjcauchy:y=1,c=0,a=1     a Q_y(x-c), conjugate kernel\n"
         "  bump:c=0,r=1,a=1           smooth bump of radius r and peak a\n"
         "  rect:a=0,b=1,v=1           v on [a,b)\n"
         "  tent:c=0,r=1,a=1           hat of half-width r\n"
         "  smoothrect:a=-1,b=1,w=0.25 1 on [a,b] with smooth ramps of width w\n"
         "  csv:file=PATH,decay=rational_decay   columns x,re,im on the requested grid\n"
         "  zero\n";
}

RadonMeasure make_measure(const std::vector<std::pair<double, double>>& atoms, const std::string& density,
                          const GridSpec& grid) {
  RadonMeasure mu;
  for (const auto& [x, w] : atoms) {
    if (!std::isfinite(x) || !std::isfinite(w)) throw Error(ErrorKind::NonFinite, "atom location and weight must be finite");
    mu.atoms.emplace_back(x, w);
  }
  if (!density.empty()) mu.density = make_function(density, grid);
  return mu;
}

std::vector<std::string> smooth_corpus() { return {"gauss:s=1", "cauchy:y=1", "bump:r=2", "bump:c=1,r=3,a=0.5"}; }

std::vector<std::string> corpus_growth() { return {"power:p=2", "power:p=3", "powerlog:p=2,beta=1"}; }

}  // namespace orlab
