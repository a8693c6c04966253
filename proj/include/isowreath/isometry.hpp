#pragma once

#include "isowreath/curvature.hpp"
#include "isowreath/fields.hpp"
#include "isowreath/parallel.hpp"

#include <functional>
#include <vector>

namespace isowreath {

struct IsometryReport {
    bool isometric = false;
    double max_dK = 0;
    double at_u = 0, at_v = 0;
};

// Compares Gaussian curvature at equal parameters on every node of the grid.
IsometryReport is_isometric(const HeightField& f, const HeightField& g, const Grid2& grid, double tol,
                            Exec exec = Exec::Parallel);
IsometryReport is_isometric(const ParamSurface& f, const ParamSurface& g, const Grid2& grid, double tol,
                            Exec exec = Exec::Parallel);

ParamSurface as_param_surface(const HeightField& f);

struct HarmonicConjugate {
    HeightField y;            // sampled on the integration grid, y = 0 at its first node
    Grid2 grid;
    double closure = 0;       // path independence defect
    double laplacian = 0;     // max |x_uu + x_vv| on the grid
};

HarmonicConjugate harmonic_conjugate(const HeightField& x, const Grid2& grid, double tol);

// max |x_u - y_v|, |x_v + y_u| on the grid
double cauchy_riemann_residual(const HeightField& x, const HeightField& y, const Grid2& grid);

// x cos t + y sin t; the CR residual must be below tol on the grid.
HeightField assoc_family(const HeightField& x, const HeightField& y, double t, const Grid2& grid, double tol);

// Profile of a rotational or helical surface, evaluated as f(v) = field(0, v).
struct Profile {
    Field f;
    double value(double v) const { return f.jet(0, v).f; }
    double d1(double v) const { return f.jet(0, v).fv; }
    double d2(double v) const { return f.jet(0, v).fvv; }
};

// K of (v cos u, v sin u, f(v) + h u)
double rotational_K(double fprime, double fsecond, double h, double v);
ParamSurface helical_surface(const Field& profile, double h);

// Sign rule for the Bour square root.
using SignFn = std::function<double(double)>;

struct BourOptions {
    double v0 = 0.5, v1 = 3.0;
    int nodes = 257;
    double quad_tol = 1e-9;
    // Largest allowed jump of fbar' where epsilon changes sign.
    double jump_tol = 1e-6;
};

struct BourProfile {
    double hbar = 0, c = 0;
    std::vector<double> v, fbar, dfbar, ddfbar, eps;
    double closure = 0;       // cumulative vs direct quadrature at every node
    double max_eps_jump = 0;  // largest |fbar'| jump at an epsilon switch
    Field profile;            // fbar as a field in v
    ParamSurface surface;     // (v cos u, v sin u, fbar(v) + hbar u)
};

double bour_radicand(const Profile& f, double hbar, double c, double v);
// c for which the radicand has a double zero near v_guess (Newton on R = R' = 0).
double bour_tangent_c(const Profile& f, double hbar, double v_guess);
BourProfile bour_family(const Profile& f, double hbar, double c, const SignFn& eps, const BourOptions& opt);

// sgn(cos v) below 2 pi, +1 above.
SignFn bour_cos_sign();
// +s0, flipping at every interior minimum of the radicand that touches zero.
SignFn bour_auto_sign(const Profile& f, double hbar, double c, double v0, double v1, double s0 = 1.0);

// Adaptive Simpson quadrature.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double tol,
                        double min_width = 1e-7);

struct ParabolicProfile {
    Field profile;         // fbar(v)
    bool clifford = false; // abar = 0: constant K = -bbar^2
    double constant_K = 0;
};

// g = a u^2 + b u v + f(v) and its isometric partner abar u^2 + bbar u v + fbar(v).
ParabolicProfile parabolic_family(const Field& f, double a, double b, double abar, double bbar, double c1,
                                  double c2);
HeightField parabolic_surface(const Field& profile, double a, double b);

} // namespace isowreath
