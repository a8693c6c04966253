#include "isowreath/curvature.hpp"

#include "isowreath/errors.hpp"

#include <cmath>

namespace isowreath {

CurvatureSample principal_from_hessian(const Mat2& hess, double umbilic_tol)
{
    CurvatureSample s;
    const double a = hess(0, 0), b = 0.5 * (hess(0, 1) + hess(1, 0)), c = hess(1, 1);
    s.K = a * c - b * b;
    s.H = 0.5 * (a + c);
    const double half = 0.5 * (a - c);
    const double r = std::hypot(half, b);
    s.k1 = s.H - r;
    s.k2 = s.H + r;
    if (r <= umbilic_tol * (1 + std::fabs(s.H))) {
        s.umbilic = true;
        s.k1 = s.k2 = s.H;
        s.d1 = Vec2(1, 0);
        s.d2 = Vec2(0, 1);
        return s;
    }
    // Eigenvector of k2; rotate by 90 degrees for k1.
    const double theta = 0.5 * std::atan2(2 * b, a - c);
    s.d2 = Vec2(std::cos(theta), std::sin(theta));
    s.d1 = Vec2(-s.d2.y(), s.d2.x());
    return s;
}

CurvatureSample curvature_graph(const Jet2& j)
{
    Mat2 h;
    h << j.fuu, j.fuv, j.fuv, j.fvv;
    return principal_from_hessian(h);
}

CurvatureSample curvature_graph(const Field& f, double u, double v)
{
    return curvature_graph(f.jet(u, v));
}

CurvatureSample curvature_param(const ParamSurface& g, double u, double v, double tol)
{
    const Jet2 x = g.x.jet(u, v), y = g.y.jet(u, v), z = g.z.jet(u, v);
    const Vec3 gu(x.fu, y.fu, z.fu), gv(x.fv, y.fv, z.fv);
    const double D = x.fu * y.fv - x.fv * y.fu;
    if (!(std::fabs(D) > tol))
        throw DegeneracyError("curvature_param: singular top view", D);
    auto det3 = [&](const Vec3& w) { return gu.cross(gv).dot(w); };
    const double L = det3(Vec3(x.fuu, y.fuu, z.fuu));
    const double M = det3(Vec3(x.fuv, y.fuv, z.fuv));
    const double N = det3(Vec3(x.fvv, y.fvv, z.fvv));
    const double E = x.fu * x.fu + y.fu * y.fu;
    const double F = x.fu * x.fv + y.fu * y.fv;
    const double G = x.fv * x.fv + y.fv * y.fv;

    // Hessian of z over the top view: J^-T (II / D) J^-1 with J = d(x,y)/d(u,v).
    Mat2 J;
    J << x.fu, x.fv, y.fu, y.fv;
    Mat2 II;
    II << L / D, M / D, M / D, N / D;
    const Mat2 Ji = J.inverse();
    CurvatureSample s = principal_from_hessian(Ji.transpose() * II * Ji);
    s.K = (L * N - M * M) / (D * D * D * D);
    s.H = (E * N - 2 * F * M + G * L) / (2 * D * D * D);
    return s;
}

double mixed_curvature(const Jet2& f, const Jet2& g)
{
    return 0.5 * (f.fuu * g.fvv - 2 * f.fuv * g.fuv + f.fvv * g.fuu);
}

double mixed_curvature(const Field& f, const Field& g, double u, double v)
{
    return mixed_curvature(f.jet(u, v), g.jet(u, v));
}

Vec3 gauss_image(const Field& f, double u, double v)
{
    const Jet2 j = f.jet(u, v);
    return Vec3(j.fu, j.fv, 0.5 * (j.fu * j.fu + j.fv * j.fv));
}

CurvatureGrid curvature_grid(const Field& f, const Grid2& g, Exec exec)
{
    CurvatureGrid out;
    out.grid = g;
    out.K.resize(g.size());
    out.H.resize(g.size());
    out.k1.resize(g.size());
    out.k2.resize(g.size());
    for_each_index(g.size(), exec, [&](std::size_t k) {
        const int i = static_cast<int>(k % g.nu), j = static_cast<int>(k / g.nu);
        const CurvatureSample s = curvature_graph(f, g.u(i), g.v(j));
        out.K[k] = s.K;
        out.H[k] = s.H;
        out.k1[k] = s.k1;
        out.k2[k] = s.k2;
    });
    return out;
}

} // namespace isowreath
