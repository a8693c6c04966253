#include "isowreath/fields.hpp"

#include "isowreath/errors.hpp"

#include <cmath>

namespace isowreath {

Grid2::Grid2(double u0_, double v0_, double hu_, double hv_, int nu_, int nv_)
    : u0(u0_), v0(v0_), hu(hu_), hv(hv_), nu(nu_), nv(nv_)
{
    if (nu < 5 || nv < 5)
        throw PreconditionError("grid needs at least 5 nodes per direction");
    if (!(hu > 0) || !(hv > 0) || !std::isfinite(u0) || !std::isfinite(v0))
        throw PreconditionError("grid spacing must be positive and origin finite");
}

Grid2 Grid2::spanning(double ua, double ub, double va, double vb, int nu, int nv)
{
    return Grid2(ua, va, (ub - ua) / (nu - 1), (vb - va) / (nv - 1), nu, nv);
}

bool Grid2::contains(double u, double v) const
{
    const double eu = 1e-12 * (1 + std::fabs(u1()) + std::fabs(u0));
    const double ev = 1e-12 * (1 + std::fabs(v1()) + std::fabs(v0));
    return u >= u0 - eu && u <= u1() + eu && v >= v0 - ev && v <= v1() + ev;
}

Grid2 Grid2::shrink(int k) const
{
    return Grid2(u(k), v(k), hu, hv, nu - 2 * k, nv - 2 * k);
}

bool Grid2::operator==(const Grid2& o) const
{
    return u0 == o.u0 && v0 == o.v0 && hu == o.hu && hv == o.hv && nu == o.nu && nv == o.nv;
}

Jet3 Field::Impl::jet3(double u, double v) const
{
    // Derivatives of the Hessian slots, extrapolated from steps h and 2h.
    const double h = 1e-3;
    auto diff = [&](double s, bool along_u) {
        const Jet2 p = along_u ? jet(u + s, v) : jet(u, v + s);
        const Jet2 m = along_u ? jet(u - s, v) : jet(u, v - s);
        return (1.0 / (2 * s)) * (p - m);
    };
    const Jet2 A = (4.0 / 3) * diff(h, true) - (1.0 / 3) * diff(2 * h, true);
    const Jet2 B = (4.0 / 3) * diff(h, false) - (1.0 / 3) * diff(2 * h, false);
    const Jet2 c = jet(u, v);
    const double fuuu = A.fuu, fuuv = 0.5 * (B.fuu + A.fuv), fuvv = 0.5 * (A.fvv + B.fuv), fvvv = B.fvv;
    Jet3 r;
    r.f = c.f;
    r.d1[0] = c.fu;
    r.d1[1] = c.fv;
    r.d2[0][0] = c.fuu;
    r.d2[0][1] = r.d2[1][0] = c.fuv;
    r.d2[1][1] = c.fvv;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const int nv = i + j + k;
                r.d3[i][j][k] = nv == 0 ? fuuu : nv == 1 ? fuuv : nv == 2 ? fuvv : fvvv;
            }
    return r;
}

namespace {

struct AnalyticImpl : Field::Impl {
    Expr e;
    ParamMap params;
    Jet2 jet(double u, double v) const override { return e.eval_jet2(u, v, params); }
    Jet3 jet3(double u, double v) const override { return e.eval_jet3(u, v, params); }
};

struct PartialImpl : Field::Impl {
    Field base;
    int k;
    Jet2 jet(double u, double v) const override
    {
        const Jet3 t = base.jet3(u, v);
        return {t.d1[k], t.d2[k][0], t.d2[k][1], t.d3[k][0][0], t.d3[k][0][1], t.d3[k][1][1]};
    }
    bool analytic() const override { return base.is_analytic(); }
    const Grid2* grid() const override { return base.grid(); }
};

struct FunctionImpl : Field::Impl {
    std::function<Jet2(double, double)> fn;
    bool is_analytic = true;
    Jet2 jet(double u, double v) const override { return fn(u, v); }
    bool analytic() const override { return is_analytic; }
};

struct CombineImpl : Field::Impl {
    double a, b;
    Field f, g;
    Jet2 jet(double u, double v) const override { return a * f.jet(u, v) + b * g.jet(u, v); }
    Jet3 jet3(double u, double v) const override { return a * f.jet3(u, v) + b * g.jet3(u, v); }
    bool analytic() const override { return f.is_analytic() && g.is_analytic(); }
    const Grid2* grid() const override { return f.grid() ? f.grid() : g.grid(); }
};

struct SampledImpl : Field::Impl {
    Grid2 g;
    std::vector<double> val;

    double at(int i, int j) const { return val[g.index(i, j)]; }

    Jet2 node_jet(int i, int j) const
    {
        const double hu = g.hu, hv = g.hv;
        const double c = at(i, j);
        Jet2 r;
        r.f = c;
        r.fu = (at(i + 1, j) - at(i - 1, j)) / (2 * hu);
        r.fv = (at(i, j + 1) - at(i, j - 1)) / (2 * hv);
        r.fuu = (at(i + 1, j) - 2 * c + at(i - 1, j)) / (hu * hu);
        r.fvv = (at(i, j + 1) - 2 * c + at(i, j - 1)) / (hv * hv);
        r.fuv = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4 * hu * hv);
        return r;
    }

    Jet2 jet(double u, double v) const override
    {
        const double s = (u - g.u0) / g.hu;
        const double t = (v - g.v0) / g.hv;
        const double rs = std::nearbyint(s), rt = std::nearbyint(t);
        const bool on_u = std::fabs(s - rs) < 1e-9, on_v = std::fabs(t - rt) < 1e-9;
        int i0 = on_u ? static_cast<int>(rs) : static_cast<int>(std::floor(s));
        int j0 = on_v ? static_cast<int>(rt) : static_cast<int>(std::floor(t));
        const int i1 = on_u ? i0 : i0 + 1;
        const int j1 = on_v ? j0 : j0 + 1;
        if (!(std::isfinite(s) && std::isfinite(t)) || i0 < 2 || j0 < 2 || i1 > g.nu - 3 || j1 > g.nv - 3)
            throw FieldDomainError("sampled field: query (" + std::to_string(u) + ", " + std::to_string(v) +
                                   ") is closer than 2 cells to the grid boundary");
        if (on_u && on_v)
            return node_jet(i0, j0);
        const double a = on_u ? 0.0 : s - i0;
        const double b = on_v ? 0.0 : t - j0;
        return (1 - a) * (1 - b) * node_jet(i0, j0) + a * (1 - b) * node_jet(i1, j0) +
               (1 - a) * b * node_jet(i0, j1) + a * b * node_jet(i1, j1);
    }

    bool analytic() const override { return false; }
    const Grid2* grid() const override { return &g; }
};

} // namespace

Field Field::analytic(const Expr& e, ParamMap params)
{
    auto impl = std::make_shared<AnalyticImpl>();
    impl->e = e;
    impl->params = std::move(params);
    return Field(impl);
}

Field Field::analytic(const std::string& text, ParamMap params)
{
    return analytic(Expr::parse(text), std::move(params));
}

Field Field::sampled(const Grid2& g, std::vector<double> values)
{
    if (values.size() != g.size())
        throw PreconditionError("sampled field: value count does not match grid");
    auto impl = std::make_shared<SampledImpl>();
    impl->g = g;
    impl->val = std::move(values);
    return Field(impl);
}

Field Field::function(std::function<Jet2(double, double)> fn, bool analytic)
{
    auto impl = std::make_shared<FunctionImpl>();
    impl->fn = std::move(fn);
    impl->is_analytic = analytic;
    return Field(impl);
}

Field Field::constant(double c)
{
    return function([c](double, double) { return Jet2::constant(c); });
}

Field Field::combine(double a, const Field& f, double b, const Field& g)
{
    auto impl = std::make_shared<CombineImpl>();
    impl->a = a;
    impl->b = b;
    impl->f = f;
    impl->g = g;
    return Field(impl);
}

Jet2 Field::jet(double u, double v) const
{
    if (!impl_)
        throw PreconditionError("empty field");
    return impl_->jet(u, v);
}

Jet3 Field::jet3(double u, double v) const
{
    if (!impl_)
        throw PreconditionError("empty field");
    return impl_->jet3(u, v);
}

Field Field::du() const
{
    auto impl = std::make_shared<PartialImpl>();
    impl->base = *this;
    impl->k = 0;
    return Field(impl);
}

Field Field::dv() const
{
    auto impl = std::make_shared<PartialImpl>();
    impl->base = *this;
    impl->k = 1;
    return Field(impl);
}

bool Field::is_analytic() const { return impl_ && impl_->analytic(); }

const Grid2* Field::grid() const { return impl_ ? impl_->grid() : nullptr; }

std::vector<double> Field::sample(const Grid2& g) const
{
    std::vector<double> out(g.size());
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i)
            out[g.index(i, j)] = value(g.u(i), g.v(j));
    return out;
}

Grid2 jet_region(const Field& f, const Grid2& g)
{
    const Grid2* s = f.grid();
    if (!s)
        return g;
    const Grid2 in = s->shrink(2);
    const int i0 = std::max(0, static_cast<int>(std::ceil((in.u0 - g.u0) / g.hu - 1e-9)));
    const int j0 = std::max(0, static_cast<int>(std::ceil((in.v0 - g.v0) / g.hv - 1e-9)));
    const int i1 = std::min(g.nu - 1, static_cast<int>(std::floor((in.u1() - g.u0) / g.hu + 1e-9)));
    const int j1 = std::min(g.nv - 1, static_cast<int>(std::floor((in.v1() - g.v0) / g.hv + 1e-9)));
    if (i1 - i0 < 4 || j1 - j0 < 4)
        throw FieldDomainError("grid does not overlap the interior of the sampled field");
    return Grid2(g.u(i0), g.v(j0), g.hu, g.hv, i1 - i0 + 1, j1 - j0 + 1);
}

Vec2 top_view(const Vec3& p)
{
    return p.head<2>();
}

double iso_distance(const Vec3& a, const Vec3& b)
{
    return (top_view(a) - top_view(b)).norm();
}

double iso_plane_angle(double u1, double v1, double u2, double v2)
{
    return std::hypot(u2 - u1, v2 - v1);
}

} // namespace isowreath
