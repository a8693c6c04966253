#include "isowreath/verify.hpp"

#include "isowreath/curvature.hpp"
#include "isowreath/discrete.hpp"
#include "isowreath/duality.hpp"
#include "isowreath/errors.hpp"
#include "isowreath/isometry.hpp"
#include "isowreath/ruled.hpp"
#include "isowreath/wreath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace isowreath {

Expr random_expr(std::mt19937_64& rng, int depth)
{
    std::uniform_real_distribution<double> unit(0, 1);
    if (depth <= 0 || unit(rng) < 0.25) {
        const double r = unit(rng);
        if (r < 0.35)
            return Expr::u();
        if (r < 0.7)
            return Expr::v();
        return Expr::num(std::round(std::uniform_real_distribution<double>(-2, 2)(rng) * 100) / 100);
    }
    static const char* const fns[] = {"sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt", "abs"};
    const int op = std::uniform_int_distribution<int>(0, 6)(rng);
    switch (op) {
    case 0: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 1: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 2: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 3: return random_expr(rng, depth - 1) / random_expr(rng, depth - 1);
    case 4: return random_expr(rng, depth - 1).pow(Expr::num(std::uniform_int_distribution<int>(2, 3)(rng)));
    case 5: return -random_expr(rng, depth - 1);
    default: return Expr::call(fns[std::uniform_int_distribution<int>(0, 9)(rng)], random_expr(rng, depth - 1));
    }
}

DerivativeCheck check_derivatives(const Expr& e, double u, double v, double h)
{
    DerivativeCheck out;
    Jet2 ad;
    auto f = [&](double a, double b) {
        const double x = e.eval(a, b);
        if (!std::isfinite(x))
            throw EvalDomainError("non-finite value");
        return x;
    };
    // Richardson extrapolation of central differences at steps h and h / 2.
    auto rich = [](const std::function<double(double)>& d, double s) { return (4 * d(s / 2) - d(s)) / 3; };
    double fd[5];
    try {
        ad = e.eval_jet2(u, v);
        const double c = f(u, v);
        fd[0] = rich([&](double s) { return (f(u + s, v) - f(u - s, v)) / (2 * s); }, h);
        fd[1] = rich([&](double s) { return (f(u, v + s) - f(u, v - s)) / (2 * s); }, h);
        fd[2] = rich([&](double s) { return (f(u + s, v) - 2 * c + f(u - s, v)) / (s * s); }, 10 * h);
        fd[3] = rich([&](double s) { return (f(u + s, v + s) - f(u + s, v - s) - f(u - s, v + s) + f(u - s, v - s)) /
                                            (4 * s * s); },
                     10 * h);
        fd[4] = rich([&](double s) { return (f(u, v + s) - 2 * c + f(u, v - s)) / (s * s); }, 10 * h);
    } catch (const Error&) {
        return out;
    }
    const double adv[5] = {ad.fu, ad.fv, ad.fuu, ad.fuv, ad.fvv};
    // Points with large values or derivatives are outside the range where differences are reliable.
    if (std::fabs(ad.f) > 1e3)
        return out;
    for (double x : adv)
        if (!std::isfinite(x) || std::fabs(x) > 1e3)
            return out;
    out.usable = true;
    for (int k = 0; k < 5; ++k)
        out.max_rel = std::max(out.max_rel, std::fabs(adv[k] - fd[k]) / std::max(1.0, std::fabs(adv[k])));
    return out;
}

namespace {

using Check = std::function<double()>;

VerifyCheck run_check(const std::string& name, double tol, const Check& fn)
{
    VerifyCheck c;
    c.name = name;
    c.tol = tol;
    try {
        c.residual = fn();
        c.pass = std::isfinite(c.residual) && c.residual <= tol;
    } catch (const std::exception& e) {
        c.residual = NAN;
        c.note = e.what();
        c.pass = false;
    }
    return c;
}

double paraboloid(std::mt19937_64& rng)
{
    const Field f = Field::analytic("(2*u^2 + 3*v^2)/2");
    std::uniform_real_distribution<double> d(-1, 1);
    double r = 0;
    for (int k = 0; k < 100; ++k) {
        const CurvatureSample s = curvature_graph(f, d(rng), d(rng));
        r = std::max({r, std::fabs(s.K - 6), std::fabs(s.H - 2.5), std::fabs(s.k1 - 2), std::fabs(s.k2 - 3)});
    }
    return r;
}

double involutions(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-2, 2);
    double r = 0;
    for (int k = 0; k < 10000; ++k) {
        const ContactElement e{d(rng), d(rng), d(rng), d(rng), d(rng)};
        r = std::max({r, (delta(delta(e)) - e).max_abs(), (nu(nu(e)) - e).max_abs()});
    }
    return r;
}

double dual_rule()
{
    const HeightField f(Field::analytic("u^2 + v^2/2 + u^3/10 + sin(u*v)/20"));
    const ParamSurface d = dual_param_surface(f, DualMap::Delta);
    double r = 0;
    for (int j = 0; j < 9; ++j)
        for (int i = 0; i < 9; ++i) {
            const double u = -0.5 + i / 8.0, v = -0.5 + j / 8.0;
            const CurvatureSample a = curvature_graph(f.f, u, v);
            const CurvatureSample b = curvature_param(d, u, v);
            r = std::max({r, std::fabs(a.K * b.K - 1), std::fabs(b.H - a.H / a.K) / std::fabs(a.H / a.K)});
        }
    return r;
}

double support()
{
    const SupportField h(Field::analytic("u^2/(2*a) + v^2/(2*b)", {{"a", 2}, {"b", 3}}));
    double r = 0;
    for (double u : {-0.7, 0.0, 0.4})
        for (double v : {-0.2, 0.3}) {
            const CurvatureSample s = curvature_from_support(h, u, v);
            r = std::max({r, std::fabs(s.K - 6), std::fabs(s.H - 2.5)});
        }
    return r;
}

double split(Exec exec)
{
    const Field f = Field::analytic("(u^2 - v^2 + cos(1 + u)*cosh(1 + v) + cosh(v)*sin(u))/10");
    const Field h = Field::analytic("(u^2 + v^2)/6");
    const Grid2 g = Grid2::spanning(-1, 1, -1, 1, 33, 33);
    return is_isometric(HeightField(Field::combine(1, f, 1, h)), HeightField(Field::combine(1, f, -1, h)), g, 1,
                        exec)
        .max_dK;
}

double assoc(Exec exec)
{
    const HeightField x(Field::analytic("sin(u)*cosh(v)/2 + 10"));
    const HeightField y(Field::analytic("cos(u)*sinh(v)/2"));
    const Grid2 g = Grid2::spanning(-1, 1, -1, 1, 33, 33);
    double r = 0;
    for (double t : {0.3, 1.1, 2.7})
        r = std::max(r, is_isometric(assoc_family(x, y, t, g, 1e-12), x, g, 1, exec).max_dK);
    return r;
}

double bour()
{
    const Profile f{Field::analytic("-sin(v)")};
    const double c = bour_tangent_c(f, 1, 4.7);
    BourOptions opt;
    opt.v0 = 3;
    opt.v1 = 6;
    opt.nodes = 129;
    const BourProfile b = bour_family(f, 1, c, bour_auto_sign(f, 1, c, opt.v0, opt.v1), opt);
    double r = b.closure;
    for (int k = 1; k < 40; ++k) {
        const double v = 3 + 3.0 * k / 40;
        r = std::max(r, std::fabs(curvature_param(b.surface, 0.3 * k, v).K -
                                  rotational_K(f.d1(v), f.d2(v), 0, v)));
    }
    return r;
}

double wreath(Exec exec)
{
    const FlexPair p{HeightField(Field::analytic("(u^2 + v^2)/2")), HeightField(Field::analytic("u*v"))};
    const WreathSet w = build_wreath(p, Grid2::spanning(-1, 1, -1, 1, 33, 33), 1e-9);
    return wreath_report(w, exec).max_residual();
}

double paratactic()
{
    const Field f = Field::analytic("(u^2 + v^2)/2 + u^3/10 - u*v^2/20");
    const Grid2 g = Grid2::spanning(-1, 1, -1, 1, 65, 65);
    const ContactGrid c = contact_grid_of_graph(f, g);
    std::vector<Vec2> left(g.size()), right(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const ParatacticImage im = paratactic_forward(c.data[k].e);
        left[k] = im.left;
        right[k] = im.right;
    }
    const ParatacticResult r = paratactic_inverse(g, left, right, c.data[0].e.z, 1e-8);
    double err = r.closure;
    for (std::size_t k = 0; k < g.size(); ++k)
        err = std::max(err, (r.field.data[k].e - c.data[k].e).max_abs());
    return err;
}

QuadNet voss_net(int n)
{
    const std::vector<Vec2> top = circle_tangent_topview(n, n, 0, 0.8, 1.6, 2.4);
    std::vector<double> zr(n), zc(n);
    for (int k = 0; k < n; ++k) {
        zr[k] = 0.3 * std::sin(0.2 * k);
        zc[k] = 0.2 * std::cos(0.3 * k) - 0.2;
    }
    return voss_construct(n, n, top, zr, zc);
}

double voss()
{
    const QuadNet F = voss_net(21);
    double r = 0;
    for (double t : {0.5, 2.0}) {
        const VossFlex fl = voss_flex(F, t);
        r = std::max({r, is_qnet(fl.F, 1, Exec::Serial).max_residual, dihedral_angles(fl.F).max_variation()});
        for (std::size_t k = 0; k < F.p.size(); ++k)
            r = std::max(r, (fl.F.p[k].head<2>() - F.p[k].head<2>()).cwiseAbs().maxCoeff());
    }
    return r;
}

double koenigs()
{
    QuadNet A(8, 7);
    for (int j = 0; j < A.nv; ++j)
        for (int i = 0; i < A.nu; ++i)
            A.at(i, j) = Vec3(i + 0.1 * i * i, 0.3 * i, 0.005 * i * i * i) +
                         Vec3(0.2 * j, j - 0.05 * j * j, std::sin(j) / 3);
    const QuadNet B = koenigs_dualize(A, Vec3::Zero());
    const QuadNet A2 = koenigs_dualize(B, Vec3::Zero());
    const KoenigsReport k = koenigs_check(A, B, 1);
    return std::max({homothety_residual(A, A2), k.edge_residual, k.diagonal_residual});
}

double minding(std::mt19937_64& rng)
{
    std::vector<Ruling> r;
    for (int k = 0; k < 12; ++k) {
        const double a = 0.25 * k;
        r.push_back({Vec3(std::cos(a), std::sin(a), 0.1 * k * k), Vec3(-std::sin(a), std::cos(a), 0.3 + 0.1 * k)});
    }
    const auto s0 = minding_steps(r);
    std::normal_distribution<double> d(0, 1);
    double err = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> lambda(r.size() - 1);
        for (double& l : lambda)
            l = d(rng);
        const auto s = minding_steps(discrete_minding_shear(r, lambda));
        for (std::size_t k = 0; k < s.size(); ++k)
            err = std::max({err, std::fabs(s[k].rho - s0[k].rho), std::fabs(s[k].phi - s0[k].phi),
                            std::fabs(s[k].d - s0[k].d)});
    }
    return err;
}

double autodiff(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1, 1);
    double worst = 0;
    int done = 0;
    for (int tries = 0; done < 200 && tries < 20000; ++tries) {
        const Expr e = random_expr(rng, 4);
        const DerivativeCheck c = check_derivatives(e, d(rng), d(rng));
        if (!c.usable)
            continue;
        worst = std::max(worst, c.max_rel);
        ++done;
    }
    if (done < 200)
        throw Error("too few usable random expressions");
    return worst;
}

double serial_parallel()
{
    const Field f = Field::analytic("sin(2*u)*cosh(v) + u^3*v/5");
    const Grid2 g = Grid2::spanning(-1, 1, -1, 1, 65, 65);
    const CurvatureGrid a = curvature_grid(f, g, Exec::Serial), b = curvature_grid(f, g, Exec::Parallel);
    double r = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        r = std::max({r, std::fabs(a.K[k] - b.K[k]), std::fabs(a.H[k] - b.H[k])});
    return r;
}

} // namespace

std::vector<VerifyCheck> run_verify_suite(std::uint64_t seed, Exec exec)
{
    std::mt19937_64 rng(seed);
    std::vector<VerifyCheck> out;
    out.push_back(run_check("paraboloid curvature", 1e-12, [&] { return paraboloid(rng); }));
    out.push_back(run_check("delta and nu are involutions", 1e-12, [&] { return involutions(rng); }));
    out.push_back(run_check("dual curvature rule", 1e-8, [] { return dual_rule(); }));
    out.push_back(run_check("support function curvature", 1e-12, [] { return support(); }));
    out.push_back(run_check("isometric split pair", 1e-10, [&] { return split(exec); }));
    out.push_back(run_check("associated family", 1e-8, [&] { return assoc(exec); }));
    out.push_back(run_check("Bour pair (tangent c, v in [3, 6])", 1e-6, [] { return bour(); }));
    out.push_back(run_check("wreath relations", 1e-9, [&] { return wreath(exec); }));
    out.push_back(run_check("paratactic round trip", 1e-8, [] { return paratactic(); }));
    out.push_back(run_check("Voss flex", 1e-9, [] { return voss(); }));
    out.push_back(run_check("Koenigs round trip", 1e-10, [] { return koenigs(); }));
    out.push_back(run_check("discrete Minding shear", 1e-12, [&] { return minding(rng); }));
    out.push_back(run_check("AD vs central differences", 1e-5, [&] { return autodiff(rng); }));
    out.push_back(run_check("serial vs parallel curvature grid", 0, [] { return serial_parallel(); }));
    return out;
}

} // namespace isowreath
