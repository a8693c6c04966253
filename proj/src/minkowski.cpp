#include "isowreath/minkowski.hpp"

#include "isowreath/curvature.hpp"
#include "isowreath/errors.hpp"

#include <algorithm>
#include <cmath>

namespace isowreath {

HeightField sum_point(const HeightField& f, const HeightField& g, double t)
{
    return HeightField(Field::combine(1.0, f.f, t, g.f));
}

SupportField sum_plane(const SupportField& h, const SupportField& k, double t)
{
    return SupportField(Field::combine(1.0, h.h, t, k.h));
}

SumCurvatureReport sum_curvature_check(const Field& f, const Field& g, const std::vector<double>& ts,
                                       const Grid2& grid, SumMode mode, Exec exec)
{
    std::vector<double> rk(grid.size(), 0.0), rh(grid.size(), 0.0);
    for_each_index(grid.size(), exec, [&](std::size_t n) {
        const double u = grid.u(static_cast<int>(n % grid.nu)), v = grid.v(static_cast<int>(n / grid.nu));
        const Jet2 a = f.jet(u, v), b = g.jet(u, v);
        const double KF = a.fuu * a.fvv - a.fuv * a.fuv, KG = b.fuu * b.fvv - b.fuv * b.fuv;
        const double HF = 0.5 * (a.fuu + a.fvv), HG = 0.5 * (b.fuu + b.fvv);
        const double KFG = mixed_curvature(a, b);
        for (double t : ts) {
            const Jet2 s = a + t * b;
            double K, H;
            if (mode == SumMode::Point) {
                K = curvature_graph(s).K;
                H = curvature_graph(s).H;
            } else {
                // Radii of curvature: det and half-trace of the support Hessian.
                K = s.fuu * s.fvv - s.fuv * s.fuv;
                H = 0.5 * (s.fuu + s.fvv);
            }
            rk[n] = std::max(rk[n], std::fabs(K - (KF + 2 * t * KFG + t * t * KG)));
            rh[n] = std::max(rh[n], std::fabs(H - (HF + t * HG)));
        }
    });
    SumCurvatureReport r;
    r.max_K_residual = *std::max_element(rk.begin(), rk.end());
    r.max_H_residual = *std::max_element(rh.begin(), rh.end());
    r.samples = grid.size() * ts.size();
    return r;
}

namespace {

double cross2(const Vec2& a, const Vec2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

// Mixed area of two quads with corresponding vertices.
double quad_mixed_area(const Vec2 p[4], const Vec2 q[4])
{
    double s = 0;
    for (int i = 0; i < 4; ++i) {
        const int k = (i + 1) % 4;
        s += cross2(p[i], q[k]) + cross2(q[i], p[k]);
    }
    return 0.25 * s;
}

} // namespace

MixedAreaWindow windowed_mixed_area(const Field& f, const Field& g, const Grid2& w, Exec exec)
{
    const std::size_t cells = static_cast<std::size_t>(w.nu - 1) * (w.nv - 1);
    std::vector<double> ma(cells), mi(cells), ar(cells), ak(cells);
    for_each_index(cells, exec, [&](std::size_t n) {
        const int i = static_cast<int>(n % (w.nu - 1)), j = static_cast<int>(n / (w.nu - 1));
        const int di[4] = {0, 1, 1, 0}, dj[4] = {0, 0, 1, 1};
        Vec2 p[4], q[4];
        double kfg = 0, kabs = 0;
        for (int c = 0; c < 4; ++c) {
            const Jet2 a = f.jet(w.u(i + di[c]), w.v(j + dj[c]));
            const Jet2 b = g.jet(w.u(i + di[c]), w.v(j + dj[c]));
            p[c] = Vec2(a.fu, a.fv);
            q[c] = Vec2(b.fu, b.fv);
            kfg += 0.25 * mixed_curvature(a, b);
            kabs += 0.25 * std::fabs(a.fuu * a.fvv - a.fuv * a.fuv);
        }
        ma[n] = quad_mixed_area(p, q);
        ar[n] = quad_mixed_area(p, p);
        mi[n] = kfg * w.hu * w.hv;
        ak[n] = kabs * w.hu * w.hv;
    });
    MixedAreaWindow r;
    for (std::size_t n = 0; n < cells; ++n) {
        r.mixed_area += ma[n];
        r.mixed_integral += mi[n];
        r.area += ar[n];
        r.abs_K_integral += ak[n];
    }
    return r;
}

} // namespace isowreath
