#pragma once

#include "isowreath/duality.hpp"
#include "isowreath/fields.hpp"
#include "isowreath/parallel.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace isowreath {

// Surface F = (u, v, f) and velocity diagram V = (-v, u, n).
struct FlexPair {
    HeightField f, n;
};

// f_uu n_vv - 2 f_uv n_uv + f_vv n_uu
double flex_residual(const Jet2& f, const Jet2& n);
double flex_residual(const FlexPair& p, double u, double v);
double max_flex_residual(const FlexPair& p, const Grid2& g, Exec exec = Exec::Parallel);

struct LwVelocity {
    HeightField n;
    bool trivial = false;     // n vanishes identically on the grid
    double lw_residual = 0;   // max |a H(F) + b K(F)|
    double v_residual = 0;    // max |-a H(V) + K(V)|, V linear Weingarten
};

// n = (a/2)(u^2 + v^2) + b f; F must satisfy a H + b K = 0 on the grid.
LwVelocity lw_velocity(const HeightField& f, double a, double b, const Grid2& g, double tol);

struct IntegratedC {
    Grid2 grid;
    std::vector<double> c;  // c = 0 at the first grid node
    double closure = 0;
};

// c_u = f_u n_uv - f_v n_uu, c_v = f_u n_vv - f_v n_uv
IntegratedC integrate_c(const FlexPair& p, const Grid2& g, double tol);

struct WreathSet {
    Grid2 grid;
    ContactGrid F, V, C, Cbar, B, Bbar;
    std::vector<double> c;
    double c_closure = 0;
    bool analytic = true;
};

WreathSet build_wreath(const FlexPair& p, const Grid2& g, double tol);

// K(X, Y) for contact fields whose top views differ by a fixed rotation;
// the height of Y is read as a function over the top view of X.
double pair_mixed_curvature(const ContactJet& X, const ContactJet& Y, double tol = 1e-12);

struct WreathReport {
    // Each entry is a max residual over the regular nodes.
    std::map<std::string, double> residuals;
    std::size_t nodes = 0;
    std::size_t degenerate_nodes = 0;
    bool degenerate = false;

    double max_residual() const;
};

WreathReport wreath_report(const WreathSet& w, Exec exec = Exec::Parallel);

struct RelativeWeingarten {
    Mat2 W;
    std::complex<double> kappa1, kappa2;  // +-sqrt(n_uv^2 - n_uu n_vv)
    double trace = 0;
    bool real = true;
};

RelativeWeingarten relative_weingarten(const FlexPair& p, double u, double v);

struct SplitPair {
    HeightField plus, minus;
};

struct MergedPair {
    HeightField middle;  // (f1 + f2) / 2
    HeightField n;       // f1 - f2
};

SplitPair split_pair(const FlexPair& p, const Grid2& g, double tol);
MergedPair merge_pair(const HeightField& f1, const HeightField& f2);

struct ParatacticImage {
    Vec2 left, right;
};

ParatacticImage paratactic_forward(const ContactElement& e);

struct ParatacticResult {
    ContactGrid field;
    double closure = 0;
    double area_defect = 0;  // max |det D(E_l) - det D(E_r)|
};

// Contact field from left and right image grids; z is anchored to z0 at the first node.
ParatacticResult paratactic_inverse(const Grid2& g, const std::vector<Vec2>& left, const std::vector<Vec2>& right,
                                    double z0, double tol);

struct IsotropicDiagrams {
    std::vector<Vec3> F, V, C, Cbar;
};

// Euclidean infinitesimal flex (F, velocity V, rotation C, translation Cbar) to isotropic
// diagrams in the orthonormal frame T (columns e1, e2, e3; e3 is the isotropic direction).
IsotropicDiagrams e2i_diagrams(const std::vector<Vec3>& Fe, const std::vector<Vec3>& Ve,
                               const std::vector<Vec3>& Ce, const std::vector<Vec3>& Cbare, const Mat3& T,
                               double tol);

} // namespace isowreath
