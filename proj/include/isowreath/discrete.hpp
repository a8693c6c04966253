#pragma once

#include "isowreath/fields.hpp"
#include "isowreath/parallel.hpp"

#include <array>
#include <vector>

namespace isowreath {

// Vertices on Z^2 combinatorics, stored row-major in j: index j * nu + i.
struct QuadNet {
    int nu = 0, nv = 0;
    std::vector<Vec3> p;

    QuadNet() = default;
    QuadNet(int nu_, int nv_);

    Vec3& at(int i, int j) { return p[static_cast<std::size_t>(j) * nu + i]; }
    const Vec3& at(int i, int j) const { return p[static_cast<std::size_t>(j) * nu + i]; }
    int faces_u() const { return nu - 1; }
    int faces_v() const { return nv - 1; }
    std::size_t face_count() const { return static_cast<std::size_t>(nu - 1) * (nv - 1); }

    // (F_ij, F_i+1,j, F_i+1,j+1, F_i,j+1)
    std::array<Vec3, 4> face(int i, int j) const;
    Vec3 edge_u(int i, int j) const { return at(i + 1, j) - at(i, j); }
    Vec3 edge_v(int i, int j) const { return at(i, j + 1) - at(i, j); }
};

using Quad2 = std::array<Vec2, 4>;

Quad2 top_quad(const std::array<Vec3, 4>& f);

// Normalized |det(e1, e2, e3)| of the edge vectors from the first corner.
double face_planarity(const std::array<Vec3, 4>& f);

struct QNetReport {
    bool planar = false;
    double max_residual = 0;
    std::vector<double> residual;  // per face, row-major
};

QNetReport is_qnet(const QuadNet& n, double tol, Exec exec = Exec::Parallel);

// Least-squares plane z = p x + q y + d through the face corners.
struct FacePlane {
    double p = 0, q = 0, d = 0;
    double residual = 0;  // max vertical deviation of a corner
};

FacePlane face_plane(const std::array<Vec3, 4>& f);

// 1/4 sum det(p_i, q_i+1) + det(q_i, p_i+1); mixed_area(P, P) is the signed area.
double mixed_area(const Quad2& P, const Quad2& Q);

struct KoenigsReport {
    bool dual = false;
    double edge_residual = 0;      // max sine of the angle between corresponding edges
    double diagonal_residual = 0;  // max sine between non-corresponding diagonals
    std::vector<double> face_residual;
};

KoenigsReport koenigs_check(const QuadNet& A, const QuadNet& B, double tol, Exec exec = Exec::Parallel);

// Row-major face propagation. Throws PreconditionError naming the first
// inconsistent face, DegeneracyError on a face with parallel adjacent edges.
QuadNet koenigs_dualize(const QuadNet& A, const Vec3& seed, double tol = 1e-9);

// max |A2 - (s A + t)| over vertices after the best homothety fit.
double homothety_residual(const QuadNet& A, const QuadNet& B);

// Vertex per face: the point of the face plane under nu, i.e. (q, -p, d).
// The result has (nu - 1) x (nv - 1) vertices.
QuadNet net_dual_nu(const QuadNet& n, double tol);

// nu image of a point: the plane z = -y X + x Y + z.
FacePlane nu_plane_of_point(const Vec3& a);

struct FlexFitReport {
    bool flexible = false;
    double topview_residual = 0;
    double max_mixed_area = 0;
    double max_fit_residual = 0;
    double v_planarity = 0;
    std::vector<double> face_fit;    // per face of F
    std::vector<double> face_mixed;  // per face of the dual nets
};

FlexFitReport discrete_flex_fit(const QuadNet& F, const QuadNet& V, double tol, Exec exec = Exec::Parallel);

// Top view of a net whose parameter lines are tangents of the unit circle:
// vertex (i, j) is the intersection of the tangents at angles a_i and b_j.
std::vector<Vec2> circle_tangent_topview(int nu, int nv, double a0, double a1, double b0, double b1);

// Fills z by face planarity from the heights of row 0 and column 0.
QuadNet voss_construct(int nu, int nv, const std::vector<Vec2>& top, const std::vector<double>& z_row0,
                       const std::vector<double>& z_col0, double tol = 1e-9);

struct VossFlex {
    QuadNet F;             // F(t)
    QuadNet LB;            // Combescure-scaled nu(F), a translational net
    double translational_defect = 0;  // of nu(F) before scaling
};

VossFlex voss_flex(const QuadNet& F, double t, double tol = 1e-9);

// Isotropic dihedral angles at the edges of the parameter polylines.
// along_u[j][i]: edge F_ij F_i+1,j between faces (i, j-1) and (i, j), j = 1..nv-2.
// along_v[i][j]: edge F_ij F_i,j+1 between faces (i-1, j) and (i, j), i = 1..nu-2.
struct Dihedrals {
    std::vector<std::vector<double>> along_u, along_v;
    double max_variation() const;
};

Dihedrals dihedral_angles(const QuadNet& F);

struct Ruling {
    Vec3 point;
    Vec3 dir;  // top view nonzero
};

struct MindingStep {
    double d = 0;    // height difference of the rulings over the top-view intersection
    double phi = 0;  // signed top-view angle
    double rho = 0;  // d / phi
    double w = 0;    // top-view parameter of the striction point on ruling i (unit top-view speed)
};

std::vector<MindingStep> minding_steps(const std::vector<Ruling>& r);

// Shear k adds lambda_k times the signed top-view distance to ruling k to every
// ruling after k. Rulings up to k are unchanged.
std::vector<Ruling> discrete_minding_shear(const std::vector<Ruling>& r, const std::vector<double>& lambda);

// -rho^2 / w^4 at top-view parameter t along ruling i.
double discrete_ruled_K(const MindingStep& s, double t);

} // namespace isowreath
