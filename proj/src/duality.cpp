#include "isowreath/duality.hpp"

#include "isowreath/errors.hpp"
#include "isowreath/lineint.hpp"

#include <algorithm>
#include <cmath>

namespace isowreath {

double ContactElement::operator[](int k) const
{
    switch (k) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    case 3: return p;
    default: return q;
    }
}

double ContactElement::max_abs() const
{
    return std::max({std::fabs(x), std::fabs(y), std::fabs(z), std::fabs(p), std::fabs(q)});
}

ContactElement operator+(const ContactElement& a, const ContactElement& b)
{
    return {a.x + b.x, a.y + b.y, a.z + b.z, a.p + b.p, a.q + b.q};
}

ContactElement operator-(const ContactElement& a, const ContactElement& b)
{
    return {a.x - b.x, a.y - b.y, a.z - b.z, a.p - b.p, a.q - b.q};
}

ContactElement operator*(double s, const ContactElement& a)
{
    return {s * a.x, s * a.y, s * a.z, s * a.p, s * a.q};
}

ContactElement delta(const ContactElement& e)
{
    return {e.p, e.q, e.p * e.x + e.q * e.y - e.z, e.x, e.y};
}

ContactElement nu(const ContactElement& e)
{
    return {e.q, -e.p, e.z - e.p * e.x - e.q * e.y, -e.y, e.x};
}

ContactElement rot_j(const ContactElement& e)
{
    return {-e.y, e.x, e.z, -e.q, e.p};
}

ContactElement map_l(const ContactElement& e)
{
    return {e.y, -e.x, -e.z, -e.q, e.p};
}

ContactElement dual(const ContactElement& e, DualMap m)
{
    return m == DualMap::Delta ? delta(e) : nu(e);
}

ContactJet delta(const ContactJet& j)
{
    const ContactElement& e = j.e;
    auto d = [&](const ContactElement& t) {
        return ContactElement{t.p, t.q, t.p * e.x + e.p * t.x + t.q * e.y + e.q * t.y - t.z, t.x, t.y};
    };
    return {delta(e), d(j.du), d(j.dv)};
}

ContactJet nu(const ContactJet& j)
{
    const ContactElement& e = j.e;
    auto d = [&](const ContactElement& t) {
        return ContactElement{t.q, -t.p, t.z - t.p * e.x - e.p * t.x - t.q * e.y - e.q * t.y, -t.y, t.x};
    };
    return {nu(e), d(j.du), d(j.dv)};
}

ContactJet rot_j(const ContactJet& j)
{
    return {rot_j(j.e), rot_j(j.du), rot_j(j.dv)};
}

ContactJet map_l(const ContactJet& j)
{
    return {map_l(j.e), map_l(j.du), map_l(j.dv)};
}

ContactJet dual(const ContactJet& j, DualMap m)
{
    return m == DualMap::Delta ? delta(j) : nu(j);
}

ContactJet contact_jet_of_graph(const Jet2& f, double u, double v)
{
    return {{u, v, f.f, f.fu, f.fv}, {1, 0, f.fu, f.fuu, f.fuv}, {0, 1, f.fv, f.fuv, f.fvv}};
}

ContactGrid contact_grid_of_graph(const Field& f, const Grid2& g)
{
    ContactGrid c;
    c.grid = g;
    c.data.resize(g.size());
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i)
            c.at(i, j) = contact_jet_of_graph(f.jet(g.u(i), g.v(j)), g.u(i), g.v(j));
    return c;
}

ContactGrid map_grid(const ContactGrid& c, ContactJet (*fn)(const ContactJet&))
{
    ContactGrid out;
    out.grid = c.grid;
    out.data.resize(c.data.size());
    std::transform(c.data.begin(), c.data.end(), out.data.begin(), fn);
    return out;
}

ContactGrid refresh_derivatives(const ContactGrid& c)
{
    ContactGrid out = c;
    const Grid2& g = c.grid;
    std::vector<double> comp(g.size());
    for (int k = 0; k < 5; ++k) {
        for (std::size_t n = 0; n < g.size(); ++n)
            comp[n] = c.data[n].e[k];
        const std::vector<double> du = grid_du(g, comp), dv = grid_dv(g, comp);
        for (std::size_t n = 0; n < g.size(); ++n) {
            double* pu[5] = {&out.data[n].du.x, &out.data[n].du.y, &out.data[n].du.z, &out.data[n].du.p, &out.data[n].du.q};
            double* pv[5] = {&out.data[n].dv.x, &out.data[n].dv.y, &out.data[n].dv.z, &out.data[n].dv.p, &out.data[n].dv.q};
            *pu[k] = du[n];
            *pv[k] = dv[n];
        }
    }
    return out;
}

double integrability_residual(const ContactJet& j)
{
    return j.dv.p * j.du.x + j.dv.q * j.du.y - j.du.p * j.dv.x - j.du.q * j.dv.y;
}

double contact_residual(const ContactJet& j)
{
    const double ru = j.du.z - j.e.p * j.du.x - j.e.q * j.du.y;
    const double rv = j.dv.z - j.e.p * j.dv.x - j.e.q * j.dv.y;
    return std::max(std::fabs(ru), std::fabs(rv));
}

namespace {

struct DualCoords {
    Jet2 x, y, z;
};

DualCoords dual_coords(const Field& f, DualMap m, double u, double v)
{
    const Jet3 t = f.jet3(u, v);
    const Jet2 F = t.lower();
    const Jet2 Fu{t.d1[0], t.d2[0][0], t.d2[0][1], t.d3[0][0][0], t.d3[0][0][1], t.d3[0][1][1]};
    const Jet2 Fv{t.d1[1], t.d2[1][0], t.d2[1][1], t.d3[1][0][0], t.d3[1][0][1], t.d3[1][1][1]};
    const Jet2 U = Jet2::var_u(u), V = Jet2::var_v(v);
    if (m == DualMap::Delta)
        return {Fu, Fv, U * Fu + V * Fv - F};
    return {Fv, -Fu, F - U * Fu - V * Fv};
}

// Top-view Jacobian of the dual parametrization and the dual height gradient as
// functions of (u, v).
void dual_frame(const Jet2& f, DualMap m, double u, double v, Mat2& DT, Mat2& DG, Vec2& top, Vec2& grad)
{
    if (m == DualMap::Delta) {
        DT << f.fuu, f.fuv, f.fuv, f.fvv;
        DG << 1, 0, 0, 1;
        top = Vec2(f.fu, f.fv);
        grad = Vec2(u, v);
    } else {
        DT << f.fuv, f.fvv, -f.fuu, -f.fuv;
        DG << 0, -1, 1, 0;
        top = Vec2(f.fv, -f.fu);
        grad = Vec2(-v, u);
    }
}

} // namespace

ParamSurface dual_param_surface(const HeightField& f, DualMap m)
{
    const Field base = f.f;
    const bool an = base.is_analytic();
    ParamSurface s;
    s.x = Field::function([base, m](double u, double v) { return dual_coords(base, m, u, v).x; }, an);
    s.y = Field::function([base, m](double u, double v) { return dual_coords(base, m, u, v).y; }, an);
    s.z = Field::function([base, m](double u, double v) { return dual_coords(base, m, u, v).z; }, an);
    return s;
}

DualGraph dualize_graph(const HeightField& f, DualMap m, const Grid2& g)
{
    DualGraph out;
    out.contact = contact_grid_of_graph(f.f, g);
    for (auto& c : out.contact.data)
        c = dual(c, m);
    out.surface = dual_param_surface(f, m);

    struct Seed {
        Vec2 top, uv;
    };
    std::vector<Seed> seeds;
    bool regular = true;
    for (int j = 0; j < g.nv && regular; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const Jet2 jf = f.jet(g.u(i), g.v(j));
            if (!(std::fabs(jf.fuu * jf.fvv - jf.fuv * jf.fuv) > 1e-12)) {
                regular = false;
                break;
            }
            seeds.push_back({m == DualMap::Delta ? Vec2(jf.fu, jf.fv) : Vec2(jf.fv, -jf.fu),
                             Vec2(g.u(i), g.v(j))});
        }
    if (!regular)
        return out;

    const Field base = f.f;
    auto graph_jet = [base, m, seeds](double X, double Y) {
        const Vec2 target(X, Y);
        Vec2 uv = seeds.front().uv;
        double best = (seeds.front().top - target).squaredNorm();
        for (const Seed& s : seeds) {
            const double d = (s.top - target).squaredNorm();
            if (d < best) {
                best = d;
                uv = s.uv;
            }
        }
        Mat2 DT, DG;
        Vec2 top, grad;
        for (int it = 0; it < 60; ++it) {
            const Jet2 jf = base.jet(uv.x(), uv.y());
            dual_frame(jf, m, uv.x(), uv.y(), DT, DG, top, grad);
            const Vec2 step = DT.inverse() * (top - target);
            uv -= step;
            if (step.norm() < 1e-15 * (1 + uv.norm()))
                break;
        }
        const Jet2 jf = base.jet(uv.x(), uv.y());
        dual_frame(jf, m, uv.x(), uv.y(), DT, DG, top, grad);
        if ((top - target).norm() > 1e-9 * (1 + target.norm()))
            throw FieldDomainError("dual graph: point outside the dual top view");
        const Mat2 hess = DG * DT.inverse();
        const double z = m == DualMap::Delta ? uv.x() * jf.fu + uv.y() * jf.fv - jf.f
                                             : jf.f - uv.x() * jf.fu - uv.y() * jf.fv;
        return Jet2{z, grad.x(), grad.y(), hess(0, 0), 0.5 * (hess(0, 1) + hess(1, 0)), hess(1, 1)};
    };
    out.graph = HeightField(Field::function(graph_jet, base.is_analytic()));
    return out;
}

ParamSurface surface_from_support(const SupportField& h)
{
    return dual_param_surface(HeightField(h.h), DualMap::Delta);
}

Vec3 support_point(const SupportField& h, double u, double v)
{
    const Jet2 j = h.jet(u, v);
    return Vec3(j.fu, j.fv, j.fu * u + j.fv * v - j.f);
}

Vec3 envelope(const Field n[3], const Field& d, double u, double v, double tol)
{
    Mat3 N;
    Vec3 D;
    const Jet2 a = n[0].jet(u, v), b = n[1].jet(u, v), c = n[2].jet(u, v), e = d.jet(u, v);
    N << a.f, b.f, c.f, a.fu, b.fu, c.fu, a.fv, b.fv, c.fv;
    D << e.f, e.fu, e.fv;
    const double det = N.determinant();
    if (!(std::fabs(det) > tol))
        throw DegeneracyError("envelope: singular plane system", det);
    return N.partialPivLu().solve(D);
}

CurvatureSample curvature_from_support(const SupportField& h, double u, double v, double tol)
{
    const Jet2 j = h.jet(u, v);
    const double det = j.fuu * j.fvv - j.fuv * j.fuv;
    if (!(std::fabs(det) > tol))
        throw DegeneracyError("support function with singular Hessian", det);
    // Hessian of the surface over its top view is the inverse Hessian of h.
    Mat2 hess;
    hess << j.fvv / det, -j.fuv / det, -j.fuv / det, j.fuu / det;
    CurvatureSample s = principal_from_hessian(hess);
    s.K = 1.0 / det;
    s.H = (j.fuu + j.fvv) / (2 * det);
    return s;
}

DualCurvature dual_curvature_rule(double K, double H, double tol)
{
    if (!(std::fabs(K) > tol))
        throw DegeneracyError("dual curvature: K = 0", K);
    return {1.0 / K, H / K};
}

} // namespace isowreath
