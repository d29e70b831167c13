#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orlab/grid.hpp"
#include "orlab/halfplane.hpp"
#include "orlab/maximal.hpp"

namespace orlab {

/// Samples a function spec on a grid:
///   gauss:s=1,c=0,a=1          a exp(-((x - c)/s)^2)
///   cauchy:y=1,c=0,a=1         a P_y(x - c)
///   conjcauchy:y=1,c=0,a=1     a Q_y(x - c)
///   bump:c=0,r=1,a=1           a exp(1 - 1/(1 - u^2)), u = (x - c)/r, peak a
///   rect:a=0,b=1,v=1           v on [a, b)
///   tent:c=0,r=1,a=1           a max(0, 1 - |x - c|/r)
///   smoothrect:a=-1,b=1,w=0.25 smooth plateau: 1 on [a, b], C^inf ramps of width w outside
///   csv:file=path,decay=schwartz
///   zero
GridFunction make_function(std::string_view spec, const GridSpec& grid);

/// Exact step-function form, for specs that have one (rect, zero).
std::optional<PiecewiseConstant> piecewise_form(std::string_view spec);

/// Usage lines for every function family.
std::string function_families_help();

/// Atoms "x:w" plus an optional density spec.
RadonMeasure make_measure(const std::vector<std::pair<double, double>>& atoms, const std::string& density,
                          const GridSpec& grid);

/// Smooth corpus members: Gaussian, Cauchy density and two smooth bumps.
std::vector<std::string> smooth_corpus();
/// Growth functions crossed with the corpus.
std::vector<std::string> corpus_growth();

}  // namespace orlab
