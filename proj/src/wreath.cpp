#include "isowreath/wreath.hpp"

#include "isowreath/curvature.hpp"
#include "isowreath/errors.hpp"
#include "isowreath/lineint.hpp"

#include <algorithm>
#include <cmath>

namespace isowreath {

double flex_residual(const Jet2& f, const Jet2& n)
{
    return f.fuu * n.fvv - 2 * f.fuv * n.fuv + f.fvv * n.fuu;
}

double flex_residual(const FlexPair& p, double u, double v)
{
    return flex_residual(p.f.jet(u, v), p.n.jet(u, v));
}

double max_flex_residual(const FlexPair& p, const Grid2& g, Exec exec)
{
    std::vector<double> r(g.size());
    for_each_index(g.size(), exec, [&](std::size_t k) {
        r[k] = std::fabs(flex_residual(p, g.u(static_cast<int>(k % g.nu)), g.v(static_cast<int>(k / g.nu))));
    });
    return *std::max_element(r.begin(), r.end());
}

LwVelocity lw_velocity(const HeightField& f, double a, double b, const Grid2& g, double tol)
{
    const Grid2 r = jet_region(f.f, g);
    LwVelocity out;
    out.n = HeightField(Field::combine(1.0, Field::analytic("a/2*(u^2 + v^2)", {{"a", a}}), b, f.f));
    double nmax = 0;
    for (int j = 0; j < r.nv; ++j)
        for (int i = 0; i < r.nu; ++i) {
            const CurvatureSample s = curvature_graph(f.f, r.u(i), r.v(j));
            out.lw_residual = std::max(out.lw_residual, std::fabs(a * s.H + b * s.K));
            const Jet2 n = out.n.jet(r.u(i), r.v(j));
            const CurvatureSample sv = curvature_graph(n);
            out.v_residual = std::max(out.v_residual, std::fabs(-a * sv.H + sv.K));
            nmax = std::max({nmax, std::fabs(n.f), std::fabs(n.fu), std::fabs(n.fv), std::fabs(n.fuu),
                             std::fabs(n.fuv), std::fabs(n.fvv)});
        }
    if (out.lw_residual > tol)
        throw PreconditionError("lw_velocity: a H + b K = 0 violated (residual " +
                                std::to_string(out.lw_residual) + ")");
    out.trivial = nmax <= tol;
    return out;
}

IntegratedC integrate_c(const FlexPair& p, const Grid2& g, double tol)
{
    const Grid2 r = jet_region(p.n.f, jet_region(p.f.f, g));
    std::vector<double> cu(r.size()), cv(r.size());
    double flex = 0;
    for (int j = 0; j < r.nv; ++j)
        for (int i = 0; i < r.nu; ++i) {
            const Jet2 f = p.f.jet(r.u(i), r.v(j)), n = p.n.jet(r.u(i), r.v(j));
            cu[r.index(i, j)] = f.fu * n.fuv - f.fv * n.fuu;
            cv[r.index(i, j)] = f.fu * n.fvv - f.fv * n.fuv;
            flex = std::max(flex, std::fabs(flex_residual(f, n)));
        }
    if (flex > tol)
        throw PreconditionError("integrate_c: pair is not flexible (flex residual " + std::to_string(flex) + ")");
    const GradientIntegral gi = integrate_gradient(r, cu, cv);
    if (gi.closure > 10 * tol)
        throw PreconditionError("integrate_c: loop closure " + std::to_string(gi.closure) + " exceeds 10 tol");
    return {r, gi.z, gi.closure};
}

WreathSet build_wreath(const FlexPair& p, const Grid2& g, double tol)
{
    const IntegratedC ic = integrate_c(p, g, tol);
    const Grid2& r = ic.grid;
    WreathSet w;
    w.grid = r;
    w.c = ic.c;
    w.c_closure = ic.closure;
    w.analytic = p.f.f.is_analytic() && p.n.f.is_analytic();
    for (ContactGrid* cg : {&w.F, &w.V, &w.C, &w.Cbar, &w.B, &w.Bbar}) {
        cg->grid = r;
        cg->data.resize(r.size());
    }
    for (int j = 0; j < r.nv; ++j)
        for (int i = 0; i < r.nu; ++i) {
            const double u = r.u(i), v = r.v(j);
            const Jet2 f = p.f.jet(u, v), n = p.n.jet(u, v);
            const double c = ic.c[r.index(i, j)];
            const double cu = f.fu * n.fuv - f.fv * n.fuu, cv = f.fu * n.fvv - f.fv * n.fuv;
            const ContactJet F = contact_jet_of_graph(f, u, v);
            const ContactJet V{{-v, u, n.f, -n.fv, n.fu}, {0, 1, n.fu, -n.fuv, n.fuu}, {-1, 0, n.fv, -n.fvv, n.fuv}};
            const ContactJet C{{-n.fu, -n.fv, c, f.fv, -f.fu},
                               {-n.fuu, -n.fuv, cu, f.fuv, -f.fuu},
                               {-n.fuv, -n.fvv, cv, f.fvv, -f.fuv}};
            w.F.at(i, j) = F;
            w.V.at(i, j) = V;
            w.C.at(i, j) = C;
            w.Cbar.at(i, j) = delta(V);
            w.B.at(i, j) = delta(F);
            w.Bbar.at(i, j) = delta(C);
        }
    return w;
}

double pair_mixed_curvature(const ContactJet& X, const ContactJet& Y, double tol)
{
    Mat2 Tx, Ty, Px, Py;
    Tx << X.du.x, X.dv.x, X.du.y, X.dv.y;
    Ty << Y.du.x, Y.dv.x, Y.du.y, Y.dv.y;
    Px << X.du.p, X.dv.p, X.du.q, X.dv.q;
    Py << Y.du.p, Y.dv.p, Y.du.q, Y.dv.q;
    const double det = Tx.determinant();
    if (!(std::fabs(det) > tol))
        throw DegeneracyError("pair_mixed_curvature: singular top view", det);
    const Mat2 Ti = Tx.inverse();
    const Mat2 A = Ty * Ti;
    const Mat2 Hx = Px * Ti;
    const Mat2 Hm = A.transpose() * Py * Ti;
    const double hx01 = 0.5 * (Hx(0, 1) + Hx(1, 0)), hm01 = 0.5 * (Hm(0, 1) + Hm(1, 0));
    return 0.5 * (Hx(0, 0) * Hm(1, 1) - 2 * hx01 * hm01 + Hx(1, 1) * Hm(0, 0));
}

double WreathReport::max_residual() const
{
    double m = 0;
    for (const auto& [name, r] : residuals)
        m = std::max(m, r);
    return m;
}

namespace {

double orth(const ContactJet& X, const ContactJet& Y)
{
    const double uu = X.du.x * Y.du.x + X.du.y * Y.du.y;
    const double vv = X.dv.x * Y.dv.x + X.dv.y * Y.dv.y;
    const double uv = X.du.x * Y.dv.x + X.du.y * Y.dv.y + X.dv.x * Y.du.x + X.dv.y * Y.du.y;
    return std::max({std::fabs(uu), std::fabs(vv), std::fabs(uv)});
}

double same(const ContactElement& a, const ContactElement& b)
{
    return (a - b).max_abs();
}

double parallel(const ContactElement& a, const ContactElement& b)
{
    return std::max(std::fabs(a.p - b.p), std::fabs(a.q - b.q));
}

double top(const ContactElement& a, const ContactElement& b)
{
    return std::max(std::fabs(a.x - b.x), std::fabs(a.y - b.y));
}

const char* const kRelations[] = {
    "orthogonal F,V",   "orthogonal C,Cbar", "orthogonal B,Bbar", "delta V,Cbar",     "delta F,B",
    "delta C,Bbar",     "parallel F,JC",     "parallel Cbar,JB",  "parallel Bbar,JV", "flex F,V",
    "flex C,Cbar",      "flex B,Bbar",       "nu LV,Cbar",        "nu LB,F",          "nu LC,Bbar",
    "parallel F,LC",    "parallel Cbar,LB",  "parallel Bbar,LV",  "top LV,F",         "top LC,Cbar",
    "top LB,Bbar"};
constexpr int kNumRelations = sizeof(kRelations) / sizeof(kRelations[0]);

} // namespace

WreathReport wreath_report(const WreathSet& w, Exec exec)
{
    const Grid2& g = w.grid;
    std::vector<std::array<double, kNumRelations>> res(g.size());
    std::vector<char> degen(g.size(), 0);
    for_each_index(g.size(), exec, [&](std::size_t k) {
        const ContactJet &F = w.F.data[k], &V = w.V.data[k], &C = w.C.data[k];
        const ContactJet &Cb = w.Cbar.data[k], &B = w.B.data[k], &Bb = w.Bbar.data[k];
        const ContactElement LV = map_l(V.e), LB = map_l(B.e), LC = map_l(C.e);
        auto& r = res[k];
        r[0] = orth(F, V);
        r[1] = orth(C, Cb);
        r[2] = orth(B, Bb);
        r[3] = same(delta(V.e), Cb.e);
        r[4] = same(delta(F.e), B.e);
        r[5] = same(delta(C.e), Bb.e);
        r[6] = parallel(F.e, rot_j(C.e));
        r[7] = parallel(Cb.e, rot_j(B.e));
        r[8] = parallel(Bb.e, rot_j(V.e));
        r[9] = std::fabs(pair_mixed_curvature(F, V));
        r[10] = r[11] = 0;
        try {
            r[10] = std::fabs(pair_mixed_curvature(C, Cb));
            r[11] = std::fabs(pair_mixed_curvature(B, Bb));
        } catch (const DegeneracyError&) {
            degen[k] = 1;
            r[10] = r[11] = 0;
        }
        r[12] = same(nu(LV), Cb.e);
        r[13] = same(nu(LB), F.e);
        r[14] = same(nu(LC), Bb.e);
        r[15] = parallel(F.e, LC);
        r[16] = parallel(Cb.e, LB);
        r[17] = parallel(Bb.e, LV);
        r[18] = top(LV, F.e);
        r[19] = top(LC, Cb.e);
        r[20] = top(LB, Bb.e);
    });

    WreathReport out;
    out.nodes = g.size();
    for (int q = 0; q < kNumRelations; ++q) {
        double m = 0;
        for (std::size_t k = 0; k < g.size(); ++k)
            m = std::max(m, res[k][q]);
        out.residuals[kRelations[q]] = m;
    }
    out.degenerate_nodes = static_cast<std::size_t>(std::count(degen.begin(), degen.end(), 1));
    out.degenerate = out.degenerate_nodes > 0;

    // Contact condition of every diagram, with derivatives taken from the nodal values.
    const std::pair<const char*, const ContactGrid*> grids[] = {{"contact F", &w.F},   {"contact V", &w.V},
                                                                {"contact C", &w.C},   {"contact Cbar", &w.Cbar},
                                                                {"contact B", &w.B},   {"contact Bbar", &w.Bbar}};
    for (const auto& [name, cg] : grids) {
        const ContactGrid fd = refresh_derivatives(*cg);
        double m = 0;
        for (const ContactJet& j : fd.data)
            m = std::max(m, contact_residual(j));
        out.residuals[name] = m;
    }
    out.residuals["c closure"] = w.c_closure;
    return out;
}

RelativeWeingarten relative_weingarten(const FlexPair& p, double u, double v)
{
    const Jet2 n = p.n.jet(u, v);
    RelativeWeingarten r;
    r.W << -n.fuv, n.fuu, -n.fvv, n.fuv;
    r.trace = r.W.trace();
    const double disc = n.fuv * n.fuv - n.fuu * n.fvv;
    r.real = disc >= 0;
    const std::complex<double> s = std::sqrt(std::complex<double>(disc, 0));
    r.kappa1 = s;
    r.kappa2 = -s;
    return r;
}

SplitPair split_pair(const FlexPair& p, const Grid2& g, double tol)
{
    const double flex = max_flex_residual(p, jet_region(p.n.f, jet_region(p.f.f, g)));
    if (flex > tol)
        throw PreconditionError("split_pair: pair is not flexible (flex residual " + std::to_string(flex) + ")");
    return {HeightField(Field::combine(1, p.f.f, 1, p.n.f)), HeightField(Field::combine(1, p.f.f, -1, p.n.f))};
}

MergedPair merge_pair(const HeightField& f1, const HeightField& f2)
{
    return {HeightField(Field::combine(0.5, f1.f, 0.5, f2.f)), HeightField(Field::combine(1, f1.f, -1, f2.f))};
}

} // namespace isowreath
