#include "isowreath/isometry.hpp"

#include "isowreath/errors.hpp"
#include "isowreath/lineint.hpp"

#include <algorithm>
#include <cmath>

namespace isowreath {

namespace {

IsometryReport finish(const std::vector<double>& d, const Grid2& grid, double tol)
{
    IsometryReport r;
    const auto it = std::max_element(d.begin(), d.end());
    const std::size_t k = static_cast<std::size_t>(it - d.begin());
    r.max_dK = *it;
    r.at_u = grid.u(static_cast<int>(k % grid.nu));
    r.at_v = grid.v(static_cast<int>(k / grid.nu));
    r.isometric = r.max_dK <= tol;
    return r;
}

} // namespace

IsometryReport is_isometric(const HeightField& f, const HeightField& g, const Grid2& grid, double tol, Exec exec)
{
    std::vector<double> d(grid.size());
    for_each_index(grid.size(), exec, [&](std::size_t k) {
        const double u = grid.u(static_cast<int>(k % grid.nu)), v = grid.v(static_cast<int>(k / grid.nu));
        d[k] = std::fabs(curvature_graph(f.f, u, v).K - curvature_graph(g.f, u, v).K);
    });
    return finish(d, grid, tol);
}

IsometryReport is_isometric(const ParamSurface& f, const ParamSurface& g, const Grid2& grid, double tol,
                            Exec exec)
{
    std::vector<double> d(grid.size());
    for_each_index(grid.size(), exec, [&](std::size_t k) {
        const double u = grid.u(static_cast<int>(k % grid.nu)), v = grid.v(static_cast<int>(k / grid.nu));
        d[k] = std::fabs(curvature_param(f, u, v).K - curvature_param(g, u, v).K);
    });
    return finish(d, grid, tol);
}

ParamSurface as_param_surface(const HeightField& f)
{
    return {Field::analytic(Expr::u()), Field::analytic(Expr::v()), f.f};
}

HarmonicConjugate harmonic_conjugate(const HeightField& x, const Grid2& grid, double tol)
{
    const Grid2 g = jet_region(x.f, grid);
    std::vector<double> gu(g.size()), gv(g.size());
    double lap = 0;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const Jet2 a = x.jet(g.u(i), g.v(j));
            gu[g.index(i, j)] = -a.fv;
            gv[g.index(i, j)] = a.fu;
            lap = std::max(lap, std::fabs(a.fuu + a.fvv));
        }
    if (lap > tol)
        throw PreconditionError("harmonic_conjugate: input is not harmonic (|Laplacian| = " +
                                std::to_string(lap) + ")");
    const GradientIntegral gi = integrate_gradient(g, gu, gv);
    HarmonicConjugate out;
    out.y = HeightField(Field::sampled(g, gi.z));
    out.grid = g;
    out.closure = gi.closure;
    out.laplacian = lap;
    return out;
}

double cauchy_riemann_residual(const HeightField& x, const HeightField& y, const Grid2& grid)
{
    const Grid2 g = jet_region(y.f, jet_region(x.f, grid));
    double r = 0;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const Jet2 a = x.jet(g.u(i), g.v(j)), b = y.jet(g.u(i), g.v(j));
            r = std::max({r, std::fabs(a.fu - b.fv), std::fabs(a.fv + b.fu)});
        }
    return r;
}

HeightField assoc_family(const HeightField& x, const HeightField& y, double t, const Grid2& grid, double tol)
{
    const double cr = cauchy_riemann_residual(x, y, grid);
    if (cr > tol)
        throw PreconditionError("assoc_family: Cauchy-Riemann residual " + std::to_string(cr) +
                                " exceeds tolerance");
    return HeightField(Field::combine(std::cos(t), x.f, std::sin(t), y.f));
}

double rotational_K(double fprime, double fsecond, double h, double v)
{
    if (v == 0)
        throw DegeneracyError("rotational_K: v = 0 lies on the axis", v);
    const double v2 = v * v;
    return (fprime * fsecond * v2 * v - h * h) / (v2 * v2);
}

ParamSurface helical_surface(const Field& profile, double h)
{
    ParamSurface s;
    s.x = Field::analytic("v*cos(u)");
    s.y = Field::analytic("v*sin(u)");
    s.z = Field::function(
        [profile, h](double u, double v) {
            const Jet2 p = profile.jet(0, v);
            return Jet2{p.f + h * u, h, p.fv, 0, 0, p.fvv};
        },
        profile.is_analytic());
    return s;
}

namespace {

double simpson_step(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, double min_width, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || (b - a) < min_width || std::fabs(delta) <= 15 * tol)
        return left + right + delta / 15;
    return simpson_step(g, a, m, fa, flm, fm, left, tol / 2, min_width, depth - 1) +
           simpson_step(g, m, b, fm, frm, fb, right, tol / 2, min_width, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double tol, double min_width)
{
    if (a == b)
        return 0;
    const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_step(g, a, b, fa, fm, fb, whole, tol, min_width, 50);
}

double bour_radicand(const Profile& f, double hbar, double c, double v)
{
    const double d = f.d1(v);
    return d * d - hbar * hbar / (v * v) + c;
}

double bour_tangent_c(const Profile& f, double hbar, double v_guess)
{
    // R' = 2 f' f'' + 2 hbar^2 / v^3 = 0 fixes v; then c = hbar^2 / v^2 - f'^2.
    auto Rp = [&](double v) { return 2 * f.d1(v) * f.d2(v) + 2 * hbar * hbar / (v * v * v); };
    double v = v_guess;
    for (int it = 0; it < 100; ++it) {
        const double h = 1e-6 * (1 + std::fabs(v));
        const double d = (Rp(v + h) - Rp(v - h)) / (2 * h);
        if (d == 0)
            break;
        const double step = Rp(v) / d;
        v -= step;
        if (std::fabs(step) < 1e-15 * (1 + std::fabs(v)))
            break;
    }
    const double d = f.d1(v);
    return hbar * hbar / (v * v) - d * d;
}

SignFn bour_cos_sign()
{
    return [](double v) {
        if (v < 2 * M_PI)
            return std::cos(v) >= 0 ? 1.0 : -1.0;
        return 1.0;
    };
}

SignFn bour_auto_sign(const Profile& f, double hbar, double c, double v0, double v1, double s0)
{
    // Locate interior minima of the radicand on a fine sampling, refine by golden section.
    const int n = 4000;
    const double h = (v1 - v0) / n;
    std::vector<double> flips;
    auto R = [&](double v) { return bour_radicand(f, hbar, c, v); };
    for (int k = 1; k < n; ++k) {
        const double a = v0 + (k - 1) * h, m = v0 + k * h, b = v0 + (k + 1) * h;
        if (!(R(m) <= R(a) && R(m) <= R(b)))
            continue;
        double lo = a, hi = b;
        const double gr = 0.5 * (std::sqrt(5.0) - 1);
        for (int it = 0; it < 100; ++it) {
            const double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            if (R(x1) < R(x2))
                hi = x2;
            else
                lo = x1;
        }
        const double vm = 0.5 * (lo + hi);
        if (std::fabs(R(vm)) < 1e-6)
            flips.push_back(vm);
    }
    return [flips, s0](double v) {
        double s = s0;
        for (double x : flips)
            if (v > x)
                s = -s;
        return s;
    };
}

BourProfile bour_family(const Profile& f, double hbar, double c, const SignFn& eps, const BourOptions& opt)
{
    if (opt.v0 <= 0 && opt.v1 >= 0)
        throw PreconditionError("bour_family: v range must exclude the axis v = 0");
    if (opt.nodes < 2 || !(opt.v1 > opt.v0))
        throw PreconditionError("bour_family: empty v range");

    BourProfile out;
    out.hbar = hbar;
    out.c = c;
    const int n = opt.nodes;
    const double h = (opt.v1 - opt.v0) / (n - 1);

    // Radicand must be non-negative on the whole range; scan finely.
    const int scan = std::max(20 * n, 2000);
    for (int k = 0; k <= scan; ++k) {
        const double v = opt.v0 + (opt.v1 - opt.v0) * k / scan;
        const double r = bour_radicand(f, hbar, c, v);
        if (r < -1e-14)
            throw DegeneracyError("bour_family: negative radicand at v = " + std::to_string(v) +
                                      " (no real isometric helical surface for these parameters)",
                                  r);
    }

    auto dfbar = [&](double v) {
        return eps(v) * std::sqrt(std::max(0.0, bour_radicand(f, hbar, c, v)));
    };

    out.v.resize(n);
    out.fbar.resize(n);
    out.dfbar.resize(n);
    out.ddfbar.resize(n);
    out.eps.resize(n);
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        const double v = opt.v0 + h * k;
        if (k > 0)
            acc += adaptive_simpson(dfbar, v - h, v, opt.quad_tol / n);
        out.v[k] = v;
        out.fbar[k] = acc;
        out.eps[k] = eps(v);
        const double R = bour_radicand(f, hbar, c, v);
        out.dfbar[k] = dfbar(v);
        // R' = 2 f' f'' + 2 hbar^2 / v^3
        const double Rp = 2 * f.d1(v) * f.d2(v) + 2 * hbar * hbar / (v * v * v);
        out.ddfbar[k] = R > 0 ? out.eps[k] * Rp / (2 * std::sqrt(R)) : 0.0;
    }
    for (int k = 0; k < n; ++k) {
        const double direct = adaptive_simpson(dfbar, opt.v0, out.v[k], opt.quad_tol);
        out.closure = std::max(out.closure, std::fabs(direct - out.fbar[k]));
    }

    // Jumps of fbar' at sign switches, located by bisection between nodes.
    for (int k = 0; k + 1 < n; ++k) {
        if (out.eps[k] == out.eps[k + 1])
            continue;
        double lo = out.v[k], hi = out.v[k + 1];
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double m = 0.5 * (lo + hi);
            (eps(m) == out.eps[k] ? lo : hi) = m;
        }
        const double jump = 2 * std::sqrt(std::max(0.0, bour_radicand(f, hbar, c, 0.5 * (lo + hi))));
        out.max_eps_jump = std::max(out.max_eps_jump, jump);
    }
    if (out.max_eps_jump > opt.jump_tol)
        throw DegeneracyError("bour_family: epsilon switches sign away from a radicand zero (fbar' jumps by " +
                                  std::to_string(out.max_eps_jump) + ")",
                              out.max_eps_jump);

    const Profile fp = f;
    const double v0 = opt.v0, qtol = opt.quad_tol;
    const std::vector<double> vs = out.v, fs = out.fbar;
    const SignFn e = eps;
    out.profile = Field::function([fp, hbar, c, e, v0, qtol, vs, fs, h](double, double v) {
        auto d = [&](double s) { return e(s) * std::sqrt(std::max(0.0, bour_radicand(fp, hbar, c, s))); };
        const int k = std::clamp(static_cast<int>(std::floor((v - v0) / h)), 0, static_cast<int>(vs.size()) - 1);
        const double val = fs[k] + adaptive_simpson(d, vs[k], v, qtol);
        const double R = bour_radicand(fp, hbar, c, v);
        const double Rp = 2 * fp.d1(v) * fp.d2(v) + 2 * hbar * hbar / (v * v * v);
        const double s = e(v);
        return Jet2{val, 0, s * std::sqrt(std::max(0.0, R)), 0, 0, R > 0 ? s * Rp / (2 * std::sqrt(R)) : 0.0};
    });
    out.surface = helical_surface(out.profile, hbar);
    return out;
}

ParabolicProfile parabolic_family(const Field& f, double a, double b, double abar, double bbar, double c1,
                                  double c2)
{
    ParabolicProfile out;
    if (abar == 0) {
        if (bbar == 0)
            throw PreconditionError("parabolic_family: abar = bbar = 0 is a plane");
        // Clifford cylinder: K = -bbar^2 regardless of the profile.
        out.clifford = true;
        out.constant_K = -bbar * bbar;
        out.profile = f;
        return out;
    }
    const double s = a / abar, q = (bbar * bbar - b * b) / (4 * abar);
    const Field extra = Field::analytic("q*v^2 + c1*v + c2", {{"q", q}, {"c1", c1}, {"c2", c2}});
    out.profile = Field::combine(s, f, 1.0, extra);
    return out;
}

HeightField parabolic_surface(const Field& profile, double a, double b)
{
    return HeightField(Field::function(
        [profile, a, b](double u, double v) {
            const Jet2 p = profile.jet(0, v);
            return Jet2{a * u * u + b * u * v + p.f, 2 * a * u + b * v, b * u + p.fv, 2 * a, b, p.fvv};
        },
        profile.is_analytic()));
}

} // namespace isowreath
