#include "isowreath/wreath.hpp"

#include "isowreath/errors.hpp"
#include "isowreath/lineint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isowreath {

ParatacticImage paratactic_forward(const ContactElement& e)
{
    return {Vec2(e.x + e.q, e.y - e.p), Vec2(e.x - e.q, e.y + e.p)};
}

ParatacticResult paratactic_inverse(const Grid2& g, const std::vector<Vec2>& left, const std::vector<Vec2>& right,
                                    double z0, double tol)
{
    if (left.size() != g.size() || right.size() != g.size())
        throw PreconditionError("paratactic_inverse: sample count does not match grid");
    const std::size_t N = g.size();
    std::vector<double> lx(N), ly(N), rx(N), ry(N), x(N), y(N), p(N), q(N);
    for (std::size_t k = 0; k < N; ++k) {
        lx[k] = left[k].x();
        ly[k] = left[k].y();
        rx[k] = right[k].x();
        ry[k] = right[k].y();
        x[k] = 0.5 * (lx[k] + rx[k]);
        y[k] = 0.5 * (ly[k] + ry[k]);
        q[k] = 0.5 * (lx[k] - rx[k]);
        p[k] = 0.5 * (ry[k] - ly[k]);
    }
    const auto lxu = grid_du(g, lx), lxv = grid_dv(g, lx), lyu = grid_du(g, ly), lyv = grid_dv(g, ly);
    const auto rxu = grid_du(g, rx), rxv = grid_dv(g, rx), ryu = grid_du(g, ry), ryv = grid_dv(g, ry);
    ParatacticResult out;
    for (std::size_t k = 0; k < N; ++k) {
        const double dl = lxu[k] * lyv[k] - lxv[k] * lyu[k];
        const double dr = rxu[k] * ryv[k] - rxv[k] * ryu[k];
        out.area_defect = std::max(out.area_defect, std::fabs(dl - dr));
    }
    if (out.area_defect > tol)
        throw PreconditionError("paratactic_inverse: left-to-right map is not area preserving (defect " +
                                std::to_string(out.area_defect) + ")");

    const auto xu = grid_du(g, x), xv = grid_dv(g, x), yu = grid_du(g, y), yv = grid_dv(g, y);
    const auto pu = grid_du(g, p), pv = grid_dv(g, p), qu = grid_du(g, q), qv = grid_dv(g, q);
    std::vector<double> zu(N), zv(N);
    for (std::size_t k = 0; k < N; ++k) {
        zu[k] = p[k] * xu[k] + q[k] * yu[k];
        zv[k] = p[k] * xv[k] + q[k] * yv[k];
    }
    const GradientIntegral gi = integrate_gradient(g, zu, zv);
    out.closure = gi.closure;
    out.field.grid = g;
    out.field.data.resize(N);
    for (std::size_t k = 0; k < N; ++k)
        out.field.data[k] = {{x[k], y[k], gi.z[k] + z0, p[k], q[k]},
                             {xu[k], yu[k], zu[k], pu[k], qu[k]},
                             {xv[k], yv[k], zv[k], pv[k], qv[k]}};
    return out;
}

IsotropicDiagrams e2i_diagrams(const std::vector<Vec3>& Fe, const std::vector<Vec3>& Ve,
                               const std::vector<Vec3>& Ce, const std::vector<Vec3>& Cbare, const Mat3& T,
                               double tol)
{
    const std::size_t N = Fe.size();
    if (Ve.size() != N || Ce.size() != N || Cbare.size() != N)
        throw PreconditionError("e2i_diagrams: point fields differ in size");
    if ((T.transpose() * T - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw PreconditionError("e2i_diagrams: frame is not orthonormal");
    const Vec3 e3 = T.col(2);
    IsotropicDiagrams out;
    out.F.resize(N);
    out.V.resize(N);
    out.C.resize(N);
    out.Cbar.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        const double rel = (Ve[k] - Cbare[k] - Ce[k].cross(Fe[k])).cwiseAbs().maxCoeff();
        if (rel > tol)
            throw PreconditionError("e2i_diagrams: V^e = Cbar^e + C^e x F^e violated at sample " +
                                    std::to_string(k));
        const Vec3 F = T.transpose() * Fe[k];
        const Vec3 Cl = T.transpose() * Ce[k];
        const Vec3 C(Cl.y(), -Cl.x(), Cl.z());
        const double n = Ve[k].dot(e3);
        out.F[k] = F;
        out.C[k] = C;
        out.V[k] = Vec3(-F.y(), F.x(), n);
        out.Cbar[k] = Vec3(C.y(), -C.x(), -n - e3.dot(Fe[k].cross(Ce[k])));
    }
    return out;
}

} // namespace isowreath
