#pragma once

#include "isowreath/fields.hpp"
#include "isowreath/parallel.hpp"

#include <vector>

namespace isowreath {

struct CurvatureSample {
    double K = 0, H = 0;
    double k1 = 0, k2 = 0;   // k1 <= k2
    Vec2 d1{1, 0}, d2{0, 1}; // principal directions in the top view
    bool umbilic = false;    // directions are the canonical axes
};

// Principal data of a symmetric 2x2 Hessian.
CurvatureSample principal_from_hessian(const Mat2& hess, double umbilic_tol = 1e-12);

CurvatureSample curvature_graph(const Field& f, double u, double v);
CurvatureSample curvature_graph(const Jet2& j);

// General K/H of a parametrized surface; the top view must be regular.
CurvatureSample curvature_param(const ParamSurface& g, double u, double v, double tol = 1e-12);

// K(F, G) = (f_uu g_vv - 2 f_uv g_uv + f_vv g_uu) / 2
double mixed_curvature(const Jet2& f, const Jet2& g);
double mixed_curvature(const Field& f, const Field& g, double u, double v);

Vec3 gauss_image(const Field& f, double u, double v);

struct CurvatureGrid {
    Grid2 grid;
    std::vector<double> K, H, k1, k2;
};

CurvatureGrid curvature_grid(const Field& f, const Grid2& g, Exec exec = Exec::Parallel);

} // namespace isowreath
