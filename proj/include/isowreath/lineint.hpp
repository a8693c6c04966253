#pragma once

#include "isowreath/fields.hpp"

#include <vector>

namespace isowreath {

// Running integral of equally spaced samples, starting at 0. Piecewise
// Lagrange interpolation on 6-node windows (degree 5); shorter inputs use all nodes.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

// Derivative of equally spaced samples from 7-node Lagrange windows.
std::vector<double> line_derivative(const std::vector<double>& f, double h);

struct GradientIntegral {
    std::vector<double> z;   // row-first path from node (0,0), z(0,0) = 0
    double closure = 0;      // max |row-first - column-first|
};

// Integrates a gradient field (gu, gv) sampled on g.
GradientIntegral integrate_gradient(const Grid2& g, const std::vector<double>& gu,
                                    const std::vector<double>& gv);

// Partial derivatives of nodal values along u and v.
std::vector<double> grid_du(const Grid2& g, const std::vector<double>& f);
std::vector<double> grid_dv(const Grid2& g, const std::vector<double>& f);

} // namespace isowreath
