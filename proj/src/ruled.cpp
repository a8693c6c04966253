#include "isowreath/ruled.hpp"

#include "isowreath/errors.hpp"

#include <cmath>
#include <limits>

namespace isowreath {

Vec3 RuledSurface::point(double u, double t) const
{
    Vec3 p;
    for (int k = 0; k < 3; ++k)
        p[k] = c[k].jet(u, 0).f + t * e[k].jet(u, 0).f;
    return p;
}

RuledFrame ruled_frame(const RuledSurface& r, double u)
{
    RuledFrame fr;
    Vec3 e, de;
    for (int k = 0; k < 3; ++k) {
        const Jet2 cj = r.c[k].jet(u, 0), ej = r.e[k].jet(u, 0);
        fr.c[k] = cj.f;
        fr.dc[k] = cj.fu;
        e[k] = ej.f;
        de[k] = ej.fu;
    }
    const double s = e.head<2>().norm();
    if (!(s > 1e-14))
        throw DegeneracyError("ruled surface: isotropic ruling direction", s);
    const double ds = e.head<2>().dot(de.head<2>()) / s;
    fr.speed = s;
    fr.e = e / s;
    fr.de = (de - e * (ds / s)) / s;
    return fr;
}

namespace {

double det2(const Vec3& a, const Vec3& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

} // namespace

RuledType classify_ruled(const RuledSurface& r, double u0, double u1, int samples, double tol)
{
    bool parallel = true, concurrent = true;
    for (int k = 0; k <= samples; ++k) {
        const double u = u0 + (u1 - u0) * k / samples;
        const RuledFrame fr = ruled_frame(r, u);
        const double theta = det2(fr.e, fr.de);
        if (std::fabs(theta) > tol)
            parallel = false;
        else
            continue;
        // Velocity of the top view of the striction point.
        const double h = 1e-5 * (1 + std::fabs(u1 - u0));
        const RuledFrame fa = ruled_frame(r, u + h), fb = ruled_frame(r, u - h);
        const double ta = det2(fa.dc, fa.e) / det2(fa.e, fa.de), tb = det2(fb.dc, fb.e) / det2(fb.e, fb.de);
        const Vec3 sa = fa.c + ta * fa.e, sb = fb.c + tb * fb.e;
        if ((sa - sb).head<2>().norm() / (2 * h) > 1e-6)
            concurrent = false;
    }
    if (parallel)
        return RuledType::III;
    return concurrent ? RuledType::II : RuledType::I;
}

StrictionData striction(const RuledSurface& r, double u, RuledType type)
{
    const RuledFrame fr = ruled_frame(r, u);
    StrictionData s;
    s.type = type;
    const double theta = det2(fr.e, fr.de);
    if (type == RuledType::III) {
        const double gap = det2(fr.e, fr.dc);
        if (!(std::fabs(gap) > 1e-14))
            throw DegeneracyError("ruled surface: consecutive rulings coincide", gap);
        s.rho = fr.de.z() / gap;
        s.sigma = std::numeric_limits<double>::quiet_NaN();
        s.t_star = std::numeric_limits<double>::quiet_NaN();
        s.point = fr.c;
        return s;
    }
    if (!(std::fabs(theta) > 1e-14))
        throw DegeneracyError("ruled surface: rulings are parallel in the top view", theta);
    s.t_star = det2(fr.dc, fr.e) / theta;
    s.point = fr.c + s.t_star * fr.e;
    const double along = fr.dc.head<2>().dot(fr.e.head<2>());
    s.rho = (fr.dc.z() + s.t_star * fr.de.z() - along * fr.e.z()) / theta;
    if (type == RuledType::II) {
        s.sigma = std::numeric_limits<double>::quiet_NaN();
        s.kappa = std::numeric_limits<double>::infinity();
    } else {
        // Top view of the striction curve moves along e with speed lambda; kappa = theta' / lambda.
        const double h = 1e-5;
        auto ts = [&](double uu) {
            const RuledFrame f2 = ruled_frame(r, uu);
            return det2(f2.dc, f2.e) / det2(f2.e, f2.de);
        };
        const double dts = (ts(u + h) - ts(u - h)) / (2 * h);
        const double lambda = along + dts;
        s.sigma = s.rho * theta / lambda;
        s.kappa = theta / lambda;
    }
    return s;
}

double ruled_K(const RuledSurface& r, RuledType type, double u, double t)
{
    const StrictionData s = striction(r, u, type);
    if (type == RuledType::III)
        return -s.rho * s.rho;
    const RuledFrame fr = ruled_frame(r, u);
    const double w = t * fr.speed - s.t_star;
    if (!(std::fabs(w) > 1e-14))
        throw DegeneracyError("ruled_K: point on the striction line", w);
    return -s.rho * s.rho / (w * w * w * w);
}

ParamSurface ruled_param_surface(const RuledSurface& r)
{
    ParamSurface s;
    Field* out[3] = {&s.x, &s.y, &s.z};
    for (int k = 0; k < 3; ++k) {
        const Field c = r.c[k], e = r.e[k];
        *out[k] = Field::function(
            [c, e](double u, double t) {
                const Jet2 a = c.jet(u, 0), b = e.jet(u, 0);
                return Jet2{a.f + t * b.f, a.fu + t * b.fu, b.f, a.fuu + t * b.fuu, b.fu, 0};
            },
            c.is_analytic() && e.is_analytic());
    }
    return s;
}

RuledSurface minding_family(const RuledSurface& f, const RuledSurface& torsal, double s, double u0, double u1,
                            double tol)
{
    const int n = 64;
    for (int k = 0; k <= n; ++k) {
        const double u = u0 + (u1 - u0) * k / n;
        for (int c = 0; c < 2; ++c) {
            const double dc = std::fabs(f.c[c].jet(u, 0).f - torsal.c[c].jet(u, 0).f);
            const double de = std::fabs(f.e[c].jet(u, 0).f - torsal.e[c].jet(u, 0).f);
            if (dc > tol || de > tol)
                throw PreconditionError("minding_family: top views of the rulings differ at u = " +
                                        std::to_string(u));
        }
    }
    const RuledType type = classify_ruled(torsal, u0, u1);
    for (int k = 0; k <= n; ++k) {
        const double u = u0 + (u1 - u0) * k / n;
        const double rho = striction(torsal, u, type).rho;
        if (std::fabs(rho) > tol)
            throw PreconditionError("minding_family: second surface is not torsal (pitch " + std::to_string(rho) +
                                    " at u = " + std::to_string(u) + ")");
    }
    RuledSurface out = f;
    out.c[2] = Field::combine(1.0, f.c[2], s, torsal.c[2]);
    out.e[2] = Field::combine(1.0, f.e[2], s, torsal.e[2]);
    return out;
}

} // namespace isowreath
