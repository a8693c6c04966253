#include "isowreath/cli.hpp"

#include "isowreath/curvature.hpp"
#include "isowreath/discrete.hpp"
#include "isowreath/duality.hpp"
#include "isowreath/errors.hpp"
#include "isowreath/io.hpp"
#include "isowreath/isometry.hpp"
#include "isowreath/minkowski.hpp"
#include "isowreath/ruled.hpp"
#include "isowreath/verify.hpp"
#include "isowreath/wreath.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace isowreath {

namespace {

using nlohmann::json;

struct UsageError : Error {
    using Error::Error;
};

struct ValidationFailure : Error {
    using Error::Error;
};

struct Common {
    std::string grid;
    double tol = -1;
    std::string out = ".";
    std::uint64_t seed = 1;
    std::vector<std::string> params;

    Grid2 grid2(const Grid2& fallback = Grid2()) const
    {
        if (grid.empty())
            return fallback;
        std::vector<double> x;
        std::stringstream ss(grid);
        std::string tok;
        while (std::getline(ss, tok, ','))
            try {
                x.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw UsageError("--grid: not a number: '" + tok + "'");
            }
        if (x.size() != 6)
            throw UsageError("--grid expects u0,v0,hu,hv,nu,nv");
        try {
            return Grid2(x[0], x[1], x[2], x[3], static_cast<int>(x[4]), static_cast<int>(x[5]));
        } catch (const Error& e) {
            throw UsageError(std::string("--grid: ") + e.what());
        }
    }

    double tolerance(double fallback) const { return tol > 0 ? tol : fallback; }

    ParamMap param_map() const
    {
        ParamMap m;
        for (const auto& p : params) {
            const auto eq = p.find('=');
            if (eq == std::string::npos)
                throw UsageError("--param expects name=value, got '" + p + "'");
            try {
                m[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
            } catch (const std::exception&) {
                throw UsageError("--param: not a number in '" + p + "'");
            }
        }
        return m;
    }

    std::string path(const std::string& name) const
    {
        std::filesystem::create_directories(out);
        return (std::filesystem::path(out) / name).string();
    }
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--grid", c.grid, "u0,v0,hu,hv,nu,nv");
    app->add_option("--tol", c.tol, "Tolerance for validation");
    app->add_option("--out", c.out, "Output directory")->capture_default_str();
    app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app->add_option("--param", c.params, "Expression parameter name=value (repeatable)");
}

Field parse_field(const std::string& text, const ParamMap& params)
{
    try {
        return Field::analytic(text, params);
    } catch (const ParseError& e) {
        throw UsageError("cannot parse '" + text + "' at offset " + std::to_string(e.offset()) + ": " + e.what());
    }
}

void check_finite(const std::vector<double>& v, const std::string& what)
{
    for (double x : v)
        if (!std::isfinite(x))
            throw ValidationFailure(what + " contains non-finite values");
}

void check_finite(const QuadNet& n, const std::string& what)
{
    for (const Vec3& p : n.p)
        if (!p.allFinite())
            throw ValidationFailure(what + " has a non-finite vertex");
}

void export_net(const Common& c, const std::string& name, const QuadNet& n)
{
    check_finite(n, name);
    write_obj(c.path(name + ".obj"), n);
}

json read_scene(const std::string& path)
{
    try {
        return read_json(path);
    } catch (const IoError& e) {
        throw UsageError(e.what());
    }
}

template <typename T>
T get(const json& j, const char* key, T fallback)
{
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

ParamMap scene_params(const json& j, ParamMap base)
{
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items())
            base[k] = v.get<double>();
    return base;
}

Grid2 scene_grid(const json& j, const Common& c, const Grid2& fallback)
{
    if (!c.grid.empty())
        return c.grid2();
    if (j.contains("grid")) {
        const auto g = j.at("grid").get<std::vector<double>>();
        if (g.size() != 6)
            throw UsageError("scene grid expects [u0, v0, hu, hv, nu, nv]");
        return Grid2(g[0], g[1], g[2], g[3], static_cast<int>(g[4]), static_cast<int>(g[5]));
    }
    return fallback;
}

int finish(const Common& c, const json& report, bool ok, const std::string& name = "report.json")
{
    write_json(c.path(name), report);
    std::cout << report.dump(2) << '\n';
    if (!ok)
        std::cerr << "validation failed\n";
    return ok ? 0 : 1;
}

// curvature

int cmd_curvature(const Common& c, const std::string& expr, const std::string& csv)
{
    Field f;
    Grid2 g = c.grid2();
    if (!csv.empty()) {
        std::pair<Grid2, std::vector<double>> data;
        try {
            data = read_csv(csv);
        } catch (const IoError& e) {
            throw UsageError(e.what());
        }
        f = Field::sampled(data.first, data.second);
        g = jet_region(f, data.first);
    } else {
        f = parse_field(expr, c.param_map());
    }
    const CurvatureGrid cg = curvature_grid(f, g);
    check_finite(cg.K, "K");
    check_finite(cg.H, "H");
    write_csv(c.path("K.csv"), g, cg.K);
    write_csv(c.path("H.csv"), g, cg.H);
    write_csv(c.path("kappa1.csv"), g, cg.k1);
    write_csv(c.path("kappa2.csv"), g, cg.k2);
    const auto [kmin, kmax] = std::minmax_element(cg.K.begin(), cg.K.end());
    const auto [hmin, hmax] = std::minmax_element(cg.H.begin(), cg.H.end());
    std::cout << "K in [" << *kmin << ", " << *kmax << "], H in [" << *hmin << ", " << *hmax << "] on " << g.nu
              << "x" << g.nv << " nodes\n";
    return 0;
}

// dual

int cmd_dual(const Common& c, const std::string& expr, const std::string& map)
{
    const HeightField f(parse_field(expr, c.param_map()));
    const DualMap m = map == "nu" ? DualMap::Nu : DualMap::Delta;
    const Grid2 g = c.grid2();
    const ParamSurface d = dual_param_surface(f, m);
    double kres = 0, hres = 0;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const CurvatureSample a = curvature_graph(f.f, g.u(i), g.v(j));
            const CurvatureSample b = curvature_param(d, g.u(i), g.v(j));
            kres = std::max(kres, std::fabs(a.K * b.K - 1));
            const double hd = m == DualMap::Delta ? a.H / a.K : -a.H / a.K;
            hres = std::max(hres, std::fabs(b.H - hd) / std::max(1.0, std::fabs(hd)));
        }
    export_net(c, "dual", net_from_param(d, g));
    const double tol = c.tolerance(1e-8);
    return finish(c, {{"map", m == DualMap::Delta ? "delta" : "nu"}, {"K_product_residual", kres},
                      {"H_rule_residual", hres}, {"tol", tol}},
                  kres <= tol && hres <= tol);
}

// minkowski

int cmd_minkowski(const Common& c, const std::string& fe, const std::string& ge, const std::vector<double>& ts,
                  const std::string& mode)
{
    const ParamMap pm = c.param_map();
    const Field f = parse_field(fe, pm), g = parse_field(ge, pm);
    const Grid2 grid = c.grid2();
    const SumMode sm = mode == "plane" ? SumMode::Plane : SumMode::Point;
    const SumCurvatureReport r = sum_curvature_check(f, g, ts, grid, sm);
    if (sm == SumMode::Point && !ts.empty())
        export_net(c, "sum", net_from_height(sum_point(HeightField(f), HeightField(g), ts.front()).f, grid));
    const double tol = c.tolerance(1e-9);
    return finish(c, {{"mode", mode}, {"K_residual", r.max_K_residual}, {"H_residual", r.max_H_residual},
                      {"samples", r.samples}, {"tol", tol}},
                  r.max_K_residual <= tol && r.max_H_residual <= tol);
}

// family

std::string tag(double t)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

int family_assoc(const Common& c, const json& s)
{
    const ParamMap pm = scene_params(s, c.param_map());
    const HeightField x(parse_field(get<std::string>(s, "x", "sin(u)*cosh(v)/2 + 10"), pm));
    const Grid2 g = scene_grid(s, c, Grid2::spanning(-1, 1, -1, 1, 65, 65));
    HeightField y;
    double closure = 0;
    if (s.contains("y")) {
        y = HeightField(parse_field(s.at("y").get<std::string>(), pm));
    } else {
        const HarmonicConjugate hc = harmonic_conjugate(x, g, 1e-9);
        y = hc.y;
        closure = hc.closure;
    }
    const Grid2 region = jet_region(y.f, g);
    const auto ts = get<std::vector<double>>(s, "t", {0.3, 1.1, 2.7});
    const double tol = c.tolerance(get<double>(s, "tol", 1e-8));
    double worst = 0;
    json per = json::object();
    for (double t : ts) {
        const HeightField ft = assoc_family(x, y, t, region, 1e-6);
        const IsometryReport r = is_isometric(ft, x, region, tol);
        per[tag(t)] = r.max_dK;
        worst = std::max(worst, r.max_dK);
        export_net(c, "assoc_t" + tag(t), net_from_height(ft.f, region));
    }
    return finish(c, {{"family", "assoc"}, {"max_dK", worst}, {"per_t", per}, {"conjugate_closure", closure},
                      {"tol", tol}},
                  worst <= tol);
}

int family_bour(const Common& c, const json& s)
{
    const Profile f{parse_field(get<std::string>(s, "f", "-sin(v)"), scene_params(s, c.param_map()))};
    const double hbar = get<double>(s, "hbar", 1.0);
    BourOptions opt;
    opt.v0 = get<double>(s, "v0", 3.0);
    opt.v1 = get<double>(s, "v1", 6.0);
    opt.nodes = get<int>(s, "nodes", 257);
    double cc;
    if (s.contains("c"))
        cc = s.at("c").get<double>();
    else
        cc = bour_tangent_c(f, hbar, get<double>(s, "tangent_v", 4.7));
    const std::string rule = get<std::string>(s, "sign", "auto");
    const SignFn eps = rule == "cos" ? bour_cos_sign() : bour_auto_sign(f, hbar, cc, opt.v0, opt.v1);
    const BourProfile b = bour_family(f, hbar, cc, eps, opt);
    const int nu = 65, nv = 65;
    const Grid2 g = Grid2::spanning(0, 2 * M_PI, opt.v0, opt.v1, nu, nv);
    double worst = 0;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const double v = g.v(j);
            worst = std::max(worst, std::fabs(curvature_param(b.surface, g.u(i), v).K -
                                              rotational_K(f.d1(v), f.d2(v), 0, v)));
        }
    ParamSurface rot{Field::analytic("v*cos(u)"), Field::analytic("v*sin(u)"), f.f};
    export_net(c, "bour_rotational", net_from_param(rot, g));
    export_net(c, "bour_helical", net_from_param(b.surface, g));
    const double tol = c.tolerance(1e-6);
    return finish(c, {{"family", "bour"}, {"c", cc}, {"hbar", hbar}, {"max_dK", worst}, {"closure", b.closure},
                      {"max_eps_jump", b.max_eps_jump}, {"tol", tol}},
                  worst <= tol && b.closure <= 1e-8);
}

int family_parabolic(const Common& c, const json& s)
{
    const Field f = parse_field(get<std::string>(s, "f", "v^3/6 + sin(v)"), scene_params(s, c.param_map()));
    const double a = get<double>(s, "a", 1.0), b = get<double>(s, "b", 0.5);
    const double abar = get<double>(s, "abar", 2.0), bbar = get<double>(s, "bbar", 1.5);
    const ParabolicProfile pp =
        parabolic_family(f, a, b, abar, bbar, get<double>(s, "c1", 0.0), get<double>(s, "c2", 0.0));
    const Grid2 g = scene_grid(s, c, Grid2::spanning(-1, 1, -1, 1, 65, 65));
    const HeightField F = parabolic_surface(f, a, b);
    const HeightField G = parabolic_surface(pp.profile, abar, bbar);
    const double tol = c.tolerance(1e-10);
    const IsometryReport r = is_isometric(F, G, g, tol);
    export_net(c, "parabolic", net_from_height(F.f, g));
    export_net(c, "parabolic_mate", net_from_height(G.f, g));
    return finish(c, {{"family", "parabolic"}, {"clifford", pp.clifford}, {"max_dK", r.max_dK}, {"tol", tol}},
                  r.isometric);
}

RuledSurface ruled_from_json(const json& j, const ParamMap& pm)
{
    RuledSurface r;
    const auto c = j.at("c").get<std::vector<std::string>>(), e = j.at("e").get<std::vector<std::string>>();
    if (c.size() != 3 || e.size() != 3)
        throw UsageError("ruled surface needs three c and three e expressions");
    for (int k = 0; k < 3; ++k) {
        r.c[k] = parse_field(c[k], pm);
        r.e[k] = parse_field(e[k], pm);
    }
    return r;
}

int family_minding(const Common& c, const json& s)
{
    const ParamMap pm = scene_params(s, c.param_map());
    const json fdef = {{"c", {"u", "0", "sin(u)"}}, {"e", {"0", "1", "cos(u)"}}};
    const json rdef = {{"c", {"u", "0", "u^2/2"}}, {"e", {"0", "1", "0.7"}}};
    const RuledSurface F = ruled_from_json(get<json>(s, "surface", fdef), pm);
    const RuledSurface R = ruled_from_json(get<json>(s, "torsal", rdef), pm);
    const double u0 = get<double>(s, "u0", -1.0), u1 = get<double>(s, "u1", 1.0);
    const auto ss = get<std::vector<double>>(s, "s", {-1.0, 0.5, 2.0});
    const Grid2 g = Grid2::spanning(u0, u1, -1, 1, 33, 33);
    const ParamSurface pf = ruled_param_surface(F);
    double worst = 0;
    for (double sv : ss) {
        const RuledSurface M = minding_family(F, R, sv, u0, u1);
        const ParamSurface pm2 = ruled_param_surface(M);
        worst = std::max(worst, is_isometric(pf, pm2, g, 1).max_dK);
        export_net(c, "minding_s" + tag(sv), net_from_param(pm2, g));
    }
    export_net(c, "minding_base", net_from_param(pf, g));
    const double tol = c.tolerance(1e-8);
    return finish(c, {{"family", "minding"}, {"max_dK", worst}, {"tol", tol}}, worst <= tol);
}

int family_split(const Common& c, const json& s)
{
    const ParamMap pm = scene_params(s, c.param_map());
    const FlexPair p{
        HeightField(parse_field(get<std::string>(s, "f", "(u^2 - v^2 + cos(1 + u)*cosh(1 + v) + cosh(v)*sin(u))/10"), pm)),
        HeightField(parse_field(get<std::string>(s, "n", "(u^2 + v^2)/6"), pm))};
    const Grid2 g = scene_grid(s, c, Grid2::spanning(-1, 1, -1, 1, 65, 65));
    const double tol = c.tolerance(1e-10);
    const SplitPair sp = split_pair(p, g, 1e-9);
    const IsometryReport r = is_isometric(sp.plus, sp.minus, g, tol);
    export_net(c, "split_plus", net_from_height(sp.plus.f, g));
    export_net(c, "split_minus", net_from_height(sp.minus.f, g));
    return finish(c, {{"family", "split"}, {"max_dK", r.max_dK}, {"at", {r.at_u, r.at_v}}, {"tol", tol}},
                  r.isometric);
}

int cmd_family(const Common& c, std::string kind, const std::string& scene_path)
{
    json s = json::object();
    if (!scene_path.empty()) {
        s = read_scene(scene_path);
        const std::string sk = get<std::string>(s, "family", "");
        if (kind.empty())
            kind = sk;
        else if (!sk.empty() && sk != kind)
            throw UsageError("scene describes family '" + sk + "', not '" + kind + "'");
    }
    if (kind == "assoc")
        return family_assoc(c, s);
    if (kind == "bour")
        return family_bour(c, s);
    if (kind == "parabolic")
        return family_parabolic(c, s);
    if (kind == "minding")
        return family_minding(c, s);
    if (kind == "split")
        return family_split(c, s);
    throw UsageError("family: unknown kind '" + kind + "' (assoc, bour, parabolic, minding, split)");
}

// wreath

QuadNet net_of(const ContactGrid& cg)
{
    QuadNet n(cg.grid.nu, cg.grid.nv);
    for (std::size_t k = 0; k < cg.data.size(); ++k)
        n.p[k] = cg.data[k].e.point();
    return n;
}

int cmd_wreath(const Common& c, const std::string& fe, const std::string& ne, bool sampled)
{
    const ParamMap pm = c.param_map();
    Field f = parse_field(fe, pm), n = parse_field(ne, pm);
    const Grid2 g = c.grid2();
    if (sampled) {
        f = Field::sampled(g, f.sample(g));
        n = Field::sampled(g, n.sample(g));
    }
    const double tol = c.tolerance(sampled ? 10 * g.h() * g.h() : 1e-8);
    const WreathSet w = build_wreath({HeightField(f), HeightField(n)}, g, tol);
    const WreathReport r = wreath_report(w);
    const std::pair<const char*, const ContactGrid*> nets[] = {{"F", &w.F}, {"V", &w.V}, {"C", &w.C},
                                                               {"Cbar", &w.Cbar}, {"B", &w.B}, {"Bbar", &w.Bbar}};
    for (const auto& [name, cg] : nets)
        export_net(c, std::string("wreath_") + name, net_of(*cg));
    json res = json::object();
    for (const auto& [k, v] : r.residuals)
        res[k] = v;
    // The pair relations at degenerate nodes are not evaluated; those nodes are counted.
    return finish(c, {{"residuals", res}, {"max_residual", r.max_residual()}, {"nodes", r.nodes},
                      {"degenerate_nodes", r.degenerate_nodes}, {"tol", tol}},
                  r.max_residual() <= tol);
}

// paratactic

int cmd_paratactic(const Common& c, const std::string& fe)
{
    const Field f = parse_field(fe, c.param_map());
    const Grid2 g = c.grid2();
    const ContactGrid cg = contact_grid_of_graph(f, g);
    std::vector<Vec2> left(g.size()), right(g.size());
    std::vector<double> lx(g.size()), ly(g.size()), rx(g.size()), ry(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const ParatacticImage im = paratactic_forward(cg.data[k].e);
        left[k] = im.left;
        right[k] = im.right;
        lx[k] = im.left.x();
        ly[k] = im.left.y();
        rx[k] = im.right.x();
        ry[k] = im.right.y();
    }
    check_finite(lx, "left image");
    check_finite(rx, "right image");
    write_csv(c.path("left_x.csv"), g, lx);
    write_csv(c.path("left_y.csv"), g, ly);
    write_csv(c.path("right_x.csv"), g, rx);
    write_csv(c.path("right_y.csv"), g, ry);
    const double tol = c.tolerance(1e-8);
    const ParatacticResult r = paratactic_inverse(g, left, right, cg.data[0].e.z, tol);
    double err = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        err = std::max(err, (r.field.data[k].e - cg.data[k].e).max_abs());
    export_net(c, "paratactic", net_of(r.field));
    return finish(c, {{"round_trip", err}, {"closure", r.closure}, {"area_defect", r.area_defect}, {"tol", tol}},
                  err <= tol && r.closure <= tol);
}

// discrete

QuadNet voss_from_scene(const json& s)
{
    const int nu = s.at("nu").get<int>(), nv = s.at("nv").get<int>();
    std::vector<Vec2> top;
    const json& t = s.at("topview");
    if (t.contains("circle_tangents")) {
        const auto a = t.at("circle_tangents").get<std::vector<double>>();
        if (a.size() != 4)
            throw UsageError("circle_tangents expects [a0, a1, b0, b1]");
        top = circle_tangent_topview(nu, nv, a[0], a[1], a[2], a[3]);
    } else {
        for (const auto& p : t.at("points"))
            top.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    auto heights = [&](const char* key, int n) {
        const json& z = s.at(key);
        std::vector<double> out;
        if (z.is_string()) {
            const Expr e = Expr::parse(z.get<std::string>());
            for (int k = 0; k < n; ++k)
                out.push_back(e.eval(k, 0));
        } else {
            out = z.get<std::vector<double>>();
        }
        return out;
    };
    return voss_construct(nu, nv, top, heights("z_row0", nu), heights("z_col0", nv));
}

QuadNet net_from_scene(const json& s)
{
    if (s.contains("vertices"))
        return net_from_json(s);
    return voss_from_scene(s);
}

json qnet_json(const QNetReport& q)
{
    return {{"planar", q.planar}, {"max_planarity_residual", q.max_residual}};
}

int cmd_discrete(const Common& c, const std::string& what, const std::string& scene_path, double t,
                 const std::string& dual_path)
{
    const json s = read_scene(scene_path);
    const double tol = c.tolerance(1e-10);
    if (what == "voss") {
        const QuadNet F = voss_from_scene(s);
        write_net_json(c.path("voss.json"), F);
        export_net(c, "voss", F);
        const QNetReport q = is_qnet(F, tol);
        return finish(c, {{"qnet", qnet_json(q)}, {"tol", tol}}, q.planar);
    }
    if (what == "flex") {
        const QuadNet F = net_from_scene(s);
        const VossFlex fl = voss_flex(F, t);
        double top = 0;
        for (std::size_t k = 0; k < F.p.size(); ++k)
            top = std::max(top, (fl.F.p[k].head<2>() - F.p[k].head<2>()).cwiseAbs().maxCoeff());
        const QNetReport q = is_qnet(fl.F, tol);
        const double dih = dihedral_angles(fl.F).max_variation();
        write_net_json(c.path("flex.json"), fl.F);
        export_net(c, "flex", fl.F);
        export_net(c, "flex_dual", fl.LB);
        return finish(c, {{"t", t}, {"qnet", qnet_json(q)}, {"topview_change", top}, {"dihedral_variation", dih},
                          {"translational_defect", fl.translational_defect}, {"tol", tol}},
                      q.planar && top <= tol && dih <= 1e-9);
    }
    if (what == "koenigs") {
        const QuadNet A = net_from_scene(s);
        const QuadNet B = koenigs_dualize(A, A.p.front());
        const QuadNet A2 = koenigs_dualize(B, A.p.front());
        const KoenigsReport k = koenigs_check(A, B, 1e-9);
        const double h = homothety_residual(A, A2);
        write_net_json(c.path("koenigs_dual.json"), B);
        export_net(c, "koenigs_dual", B);
        return finish(c, {{"edge_residual", k.edge_residual}, {"diagonal_residual", k.diagonal_residual},
                          {"round_trip", h}, {"tol", tol}},
                      k.dual && h <= tol);
    }
    if (what == "check") {
        const QuadNet A = net_from_scene(s);
        const QNetReport q = is_qnet(A, tol);
        json rep = {{"qnet", qnet_json(q)}, {"tol", tol}};
        bool ok = q.planar;
        if (!dual_path.empty()) {
            QuadNet B;
            try {
                B = read_net_json(dual_path);
            } catch (const IoError& e) {
                throw UsageError(e.what());
            }
            const KoenigsReport k = koenigs_check(A, B, 1e-9);
            rep["koenigs"] = {{"dual", k.dual}, {"edge_residual", k.edge_residual},
                              {"diagonal_residual", k.diagonal_residual}};
            ok = ok && k.dual;
        }
        return finish(c, rep, ok);
    }
    throw UsageError("discrete: unknown operation '" + what + "'");
}

// verify

int cmd_verify(const Common& c)
{
    const auto checks = run_verify_suite(c.seed);
    bool ok = true;
    json rep = json::array();
    std::printf("%-40s %-13s %-10s %s\n", "check", "residual", "tol", "result");
    for (const auto& ch : checks) {
        std::printf("%-40s %-13.3e %-10.1e %s\n", ch.name.c_str(), ch.residual, ch.tol, ch.pass ? "PASS" : "FAIL");
        if (!ch.note.empty())
            std::printf("    %s\n", ch.note.c_str());
        ok = ok && ch.pass;
        rep.push_back({{"name", ch.name}, {"residual", std::isfinite(ch.residual) ? json(ch.residual) : json()},
                       {"tol", ch.tol}, {"pass", ch.pass}, {"note", ch.note}});
    }
    write_json(c.path("verify.json"), rep);
    if (!ok)
        std::cerr << "verify: some checks failed\n";
    return ok ? 0 : 1;
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Isotropic surface geometry toolkit"};
    app.require_subcommand(1);
    Common c;

    std::string f_expr = "(2*u^2 + 3*v^2)/2", csv;
    auto* curv = app.add_subcommand("curvature", "K, H and principal curvatures of a graph on a grid");
    add_common(curv, c);
    curv->add_option("--f", f_expr, "Height function f(u, v)");
    curv->add_option("--csv", csv, "Sampled heights (CSV) instead of --f");

    std::string dual_f = "(u^2 + v^2)/2", map = "delta";
    auto* dual = app.add_subcommand("dual", "Metric dual of a graph");
    add_common(dual, c);
    dual->add_option("--f", dual_f, "Height function");
    dual->add_option("--map", map, "delta or nu")->check(CLI::IsMember({"delta", "nu"}));

    std::string mk_f = "(u^2 + v^2)/2", mk_g = "u^2 + u*v + v^2", mode = "point";
    std::vector<double> ts = {0.5, 1, 2};
    auto* mink = app.add_subcommand("minkowski", "Curvature relations of sums");
    add_common(mink, c);
    mink->add_option("--f", mk_f, "First surface");
    mink->add_option("--g", mk_g, "Second surface");
    mink->add_option("--t", ts, "Sum parameters")->delimiter(',');
    mink->add_option("--mode", mode, "point or plane")->check(CLI::IsMember({"point", "plane"}));

    std::string kind, fam_scene;
    auto* fam = app.add_subcommand("family", "Isometric families (assoc, bour, parabolic, minding, split)");
    add_common(fam, c);
    fam->add_option("kind", kind, "Family kind");
    fam->add_option("--scene", fam_scene, "Scene JSON")->check(CLI::ExistingFile);

    std::string w_f = "(u^2 + v^2)/2", w_n = "u*v";
    bool sampled = false;
    auto* wr = app.add_subcommand("wreath", "Six-surface wreath of an infinitesimal flex");
    add_common(wr, c);
    wr->add_option("--f", w_f, "Surface f");
    wr->add_option("--n", w_n, "Velocity height n");
    wr->add_flag("--sampled", sampled, "Sample f and n on the grid first");

    std::string p_f = "(u^2 + v^2)/2 + u^3/10";
    auto* para = app.add_subcommand("paratactic", "Left/right images and reconstruction");
    add_common(para, c);
    para->add_option("--f", p_f, "Height function");

    std::string what, scene, dual_net;
    double t = 1;
    auto* disc = app.add_subcommand("discrete", "Discrete nets: voss, flex, koenigs, check");
    add_common(disc, c);
    disc->add_option("operation", what, "voss | flex | koenigs | check")
        ->required()
        ->check(CLI::IsMember({"voss", "flex", "koenigs", "check"}));
    disc->add_option("scene", scene, "Scene or net JSON")->required()->check(CLI::ExistingFile);
    auto* topt = disc->add_option("--t", t, "Flex parameter t > 0");
    disc->add_option("--dual", dual_net, "Second net for koenigs_check")->check(CLI::ExistingFile);

    auto* ver = app.add_subcommand("verify", "Run the invariant suite");
    add_common(ver, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        if (curv->parsed())
            return cmd_curvature(c, f_expr, csv);
        if (dual->parsed())
            return cmd_dual(c, dual_f, map);
        if (mink->parsed())
            return cmd_minkowski(c, mk_f, mk_g, ts, mode);
        if (fam->parsed())
            return cmd_family(c, kind, fam_scene);
        if (wr->parsed())
            return cmd_wreath(c, w_f, w_n, sampled);
        if (para->parsed())
            return cmd_paratactic(c, p_f);
        if (disc->parsed()) {
            if (what == "flex" && topt->count() == 0)
                throw UsageError("discrete flex requires --t");
            return cmd_discrete(c, what, scene, t, dual_net);
        }
        if (ver->parsed())
            return cmd_verify(c);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "scene error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace isowreath
