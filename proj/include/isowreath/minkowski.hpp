#pragma once

#include "isowreath/fields.hpp"
#include "isowreath/parallel.hpp"

#include <vector>

namespace isowreath {

// F + tG as graphs over the same top view.
HeightField sum_point(const HeightField& f, const HeightField& g, double t);
// Surface whose support function is h + tk.
SupportField sum_plane(const SupportField& h, const SupportField& k, double t);

enum class SumMode { Point, Plane };

struct SumCurvatureReport {
    double max_K_residual = 0;  // K(F^t) - (K(F) + 2t K(F,G) + t^2 K(G)), or det Hess for planes
    double max_H_residual = 0;  // H(F^t) - (H(F) + t H(G)), or trace Hess / 2 for planes
    std::size_t samples = 0;
};

// Polynomial curvature relations of the sum on every grid node and every t.
// Plane mode checks the relations for det and half-trace of Hess h, i.e. 1/K and H/K.
SumCurvatureReport sum_curvature_check(const Field& f, const Field& g, const std::vector<double>& ts,
                                       const Grid2& grid, SumMode mode = SumMode::Point,
                                       Exec exec = Exec::Parallel);

struct MixedAreaWindow {
    double mixed_area = 0;       // sum of mixed areas of the cell images under (f_u, f_v), (g_u, g_v)
    double mixed_integral = 0;   // integral of K(F,G) du dv over the window
    double area = 0;             // signed area of the top view of the delta image of F
    double abs_K_integral = 0;   // integral of |K(F)| du dv
};

MixedAreaWindow windowed_mixed_area(const Field& f, const Field& g, const Grid2& window,
                                    Exec exec = Exec::Parallel);

} // namespace isowreath
