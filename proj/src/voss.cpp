#include "isowreath/discrete.hpp"
#include "isowreath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isowreath {

namespace {

double straightness(const std::vector<Vec2>& pts)
{
    const Vec2 d = pts.back() - pts.front();
    double r = 0;
    for (const Vec2& p : pts) {
        const Vec2 e = p - pts.front();
        if (d.norm() > 0 && e.norm() > 0)
            r = std::max(r, std::fabs(d.x() * e.y() - d.y() * e.x()) / (d.norm() * e.norm()));
    }
    return r;
}

double plane_z(const FacePlane& pl, const Vec2& t)
{
    return pl.p * t.x() + pl.q * t.y() + pl.d;
}

} // namespace

std::vector<Vec2> circle_tangent_topview(int nu, int nv, double a0, double a1, double b0, double b1)
{
    std::vector<Vec2> top(static_cast<std::size_t>(nu) * nv);
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            const double a = a0 + (a1 - a0) * i / (nu - 1), b = b0 + (b1 - b0) * j / (nv - 1);
            const double m = 0.5 * (a + b), d = 0.5 * (a - b);
            const double c = std::cos(d);
            if (!(std::fabs(c) > 1e-12))
                throw DegeneracyError("circle_tangent_topview: parallel tangents", c);
            top[static_cast<std::size_t>(j) * nu + i] = Vec2(std::cos(m), std::sin(m)) / c;
        }
    return top;
}

QuadNet voss_construct(int nu, int nv, const std::vector<Vec2>& top, const std::vector<double>& z_row0,
                       const std::vector<double>& z_col0, double tol)
{
    QuadNet F(nu, nv);
    if (top.size() != F.p.size() || z_row0.size() != static_cast<std::size_t>(nu) ||
        z_col0.size() != static_cast<std::size_t>(nv))
        throw PreconditionError("voss_construct: input sizes do not match the net");
    if (std::fabs(z_row0[0] - z_col0[0]) > tol)
        throw PreconditionError("voss_construct: row and column heights disagree at vertex (0, 0)");
    for (int j = 0; j < nv; ++j) {
        std::vector<Vec2> line(top.begin() + static_cast<long>(j) * nu, top.begin() + static_cast<long>(j + 1) * nu);
        if (straightness(line) > tol)
            throw PreconditionError("voss_construct: top view of row " + std::to_string(j) + " is not straight");
    }
    for (int i = 0; i < nu; ++i) {
        std::vector<Vec2> line;
        for (int j = 0; j < nv; ++j)
            line.push_back(top[static_cast<std::size_t>(j) * nu + i]);
        if (straightness(line) > tol)
            throw PreconditionError("voss_construct: top view of column " + std::to_string(i) + " is not straight");
    }

    for (std::size_t k = 0; k < top.size(); ++k)
        F.p[k] = Vec3(top[k].x(), top[k].y(), 0);
    for (int i = 0; i < nu; ++i)
        F.at(i, 0).z() = z_row0[i];
    for (int j = 0; j < nv; ++j)
        F.at(0, j).z() = z_col0[j];

    for (int j = 0; j + 1 < nv; ++j)
        for (int i = 0; i + 1 < nu; ++i) {
            const auto f = F.face(i, j);
            // Reject faces with three collinear corners in the top view.
            for (int m = 0; m < 4; ++m) {
                const Vec2 a = f[m].head<2>(), b = f[(m + 1) % 4].head<2>(), c = f[(m + 2) % 4].head<2>();
                const Vec2 e1 = b - a, e2 = c - a;
                const double det = e1.x() * e2.y() - e1.y() * e2.x();
                if (!(std::fabs(det) > 1e-12 * e1.norm() * e2.norm()))
                    throw DegeneracyError("voss_construct: collinear corners in face (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ")",
                                          det);
            }
            Mat3 A;
            Vec3 z;
            const Vec3 known[3] = {f[0], f[1], f[3]};
            for (int m = 0; m < 3; ++m) {
                A.row(m) << known[m].x(), known[m].y(), 1;
                z(m) = known[m].z();
            }
            const Vec3 pl = A.partialPivLu().solve(z);
            F.at(i + 1, j + 1).z() = pl(0) * f[2].x() + pl(1) * f[2].y() + pl(2);
        }
    return F;
}

VossFlex voss_flex(const QuadNet& F, double t, double tol)
{
    if (!(t > 0))
        throw PreconditionError("voss_flex: t must be positive");
    if (F.nu < 3 || F.nv < 3)
        throw PreconditionError("voss_flex: net needs at least 3 x 3 vertices");
    const QuadNet LB = net_dual_nu(F, tol);
    VossFlex out;
    double scale = 0;
    for (const Vec3& p : LB.p)
        scale = std::max(scale, (p - LB.p[0]).norm());
    for (int j = 0; j < LB.nv; ++j)
        for (int i = 0; i < LB.nu; ++i)
            out.translational_defect = std::max(
                out.translational_defect, (LB.at(i, j) - LB.at(i, 0) - LB.at(0, j) + LB.at(0, 0)).norm());
    if (out.translational_defect > tol * (1 + scale))
        throw PreconditionError("voss_flex: nu(F) is not a translational net (defect " +
                                std::to_string(out.translational_defect) + ")");

    out.LB = QuadNet(LB.nu, LB.nv);
    const Vec3 o = LB.at(0, 0);
    for (int j = 0; j < LB.nv; ++j)
        for (int i = 0; i < LB.nu; ++i)
            out.LB.at(i, j) = o + t * (LB.at(i, 0) - o) + (LB.at(0, j) - o) / t;

    out.F = F;
    for (int j = 1; j + 1 < F.nv; ++j)
        for (int i = 1; i + 1 < F.nu; ++i) {
            const FacePlane pl = face_plane(out.LB.face(i - 1, j - 1));
            out.F.at(i, j) = Vec3(pl.q, -pl.p, pl.d);
        }
    // Boundary vertices keep their top view and lie on an adjacent face plane.
    for (int j = 0; j < F.nv; ++j)
        for (int i = 0; i < F.nu; ++i) {
            if (i > 0 && j > 0 && i + 1 < F.nu && j + 1 < F.nv)
                continue;
            const FacePlane pl = nu_plane_of_point(out.LB.at(std::min(i, F.nu - 2), std::min(j, F.nv - 2)));
            out.F.at(i, j).z() = plane_z(pl, F.at(i, j).head<2>());
        }
    return out;
}

double Dihedrals::max_variation() const
{
    double m = 0;
    for (const auto* fam : {&along_u, &along_v})
        for (const auto& line : *fam)
            if (!line.empty()) {
                const auto [lo, hi] = std::minmax_element(line.begin(), line.end());
                m = std::max(m, *hi - *lo);
            }
    return m;
}

Dihedrals dihedral_angles(const QuadNet& F)
{
    std::vector<FacePlane> planes(F.face_count());
    for (int j = 0; j < F.faces_v(); ++j)
        for (int i = 0; i < F.faces_u(); ++i)
            planes[static_cast<std::size_t>(j) * F.faces_u() + i] = face_plane(F.face(i, j));
    auto pl = [&](int i, int j) -> const FacePlane& { return planes[static_cast<std::size_t>(j) * F.faces_u() + i]; };
    Dihedrals d;
    for (int j = 1; j < F.faces_v(); ++j) {
        std::vector<double> line;
        for (int i = 0; i < F.faces_u(); ++i)
            line.push_back(iso_plane_angle(pl(i, j - 1).p, pl(i, j - 1).q, pl(i, j).p, pl(i, j).q));
        d.along_u.push_back(line);
    }
    for (int i = 1; i < F.faces_u(); ++i) {
        std::vector<double> line;
        for (int j = 0; j < F.faces_v(); ++j)
            line.push_back(iso_plane_angle(pl(i - 1, j).p, pl(i - 1, j).q, pl(i, j).p, pl(i, j).q));
        d.along_v.push_back(line);
    }
    return d;
}

} // namespace isowreath
