#pragma once
#include <functional>

#include "osc/profiles.hpp"

namespace osc {

// Marching-squares traversal of the isoline f = s. Edge crossings are
// placed by linear interpolation of the corner samples; the callback
// receives each segment's midpoint and length. Ambiguous saddle cells are
// resolved by the cell-center average.
void for_each_contour_segment(
    const GridPhase2D& g, double s,
    const std::function<void(double x, double y, double len)>& segment);

// Integral over the isoline of phi ds (arc length measure).
double contour_integral(const GridPhase2D& g, double s,
                        const std::function<double(double, double)>& phi);

// Total arc length of the isoline.
double contour_length(const GridPhase2D& g, double s);

}  // namespace osc
