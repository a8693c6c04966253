#include "isowreath/curvature.hpp"
#include "isowreath/errors.hpp"
#include "isowreath/wreath.hpp"

#include <doctest.h>

#include <cmath>

using namespace isowreath;

namespace {

Grid2 square(int n) { return Grid2::spanning(-1, 1, -1, 1, n, n); }

FlexPair pair(const char* f, const char* n) { return {HeightField(Field::analytic(f)), HeightField(Field::analytic(n))}; }

// V = (-v, u, n, -n_v, n_u) with its partials, written out by hand.
ContactJet velocity_jet(const Jet2& n, double u, double v)
{
    ContactJet j;
    j.e = {-v, u, n.f, -n.fv, n.fu};
    j.du = {0, 1, n.fu, -n.fuv, n.fuu};
    j.dv = {-1, 0, n.fv, -n.fvv, n.fuv};
    return j;
}

} // namespace

TEST_CASE("flex residual")
{
    CHECK(flex_residual(pair("(u^2 + v^2)/2", "u*v"), 0.3, 0.4) == 0);
    // f = (u^2 + 2 v^2)/2, n = u^2/2 + v^3: residual = 6v + 2
    CHECK(flex_residual(pair("(u^2 + 2*v^2)/2", "u^2/2 + v^3"), 0.1, 0.5) == doctest::Approx(5));
    CHECK(max_flex_residual(pair("(u^2 + v^2)/2", "u^3 - 3*u*v^2"), square(17)) < 1e-13);
}

TEST_CASE("pair mixed curvature reads V over its own top view")
{
    const Field f = Field::analytic("(u^2 + 2*v^2)/2 + u*v/3");
    const Field n = Field::analytic("u^2/2 + v^3 + sin(u)*v");
    for (double u : {-0.4, 0.2})
        for (double v : {-0.3, 0.7}) {
            const ContactJet F = contact_jet_of_graph(f.jet(u, v), u, v);
            const ContactJet V = velocity_jet(n.jet(u, v), u, v);
            CHECK(pair_mixed_curvature(F, V) == doctest::Approx(mixed_curvature(f, n, u, v)).epsilon(1e-12));
        }
}

TEST_CASE("rotation diagram of the paraboloid with n = uv")
{
    const FlexPair p = pair("(u^2 + v^2)/2", "u*v");
    const Grid2 g = square(33);
    const IntegratedC ic = integrate_c(p, g, 1e-10);
    const double c0 = (g.u0 * g.u0 - g.v0 * g.v0) / 2;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const double u = g.u(i), v = g.v(j);
            CHECK(ic.c[g.index(i, j)] + c0 == doctest::Approx((u * u - v * v) / 2).epsilon(1e-12));
        }
    CHECK_THROWS_AS(integrate_c(pair("(u^2 + 2*v^2)/2", "u^2/2 + v^3"), g, 1e-10), PreconditionError);
}

TEST_CASE("property: every wreath relation holds for flexible pairs")
{
    const FlexPair pairs[] = {pair("(u^2 + v^2)/2", "u*v"), pair("(u^2 + v^2)/2", "u^3 - 3*u*v^2"),
                              pair("(u^2 - v^2)/2 + u^3/6", "u*v"),
                              pair("(u^2 - v^2 + cos(1 + u)*cosh(1 + v) + cosh(v)*sin(u))/10", "(u^2 + v^2)/6")};
    for (const FlexPair& p : pairs) {
        const WreathSet w = build_wreath(p, square(65), 1e-8);
        const WreathReport r = wreath_report(w);
        CHECK(r.residuals.size() >= 21);
        for (const auto& [name, value] : r.residuals)
            CHECK_MESSAGE(value < 1e-9, name);
        const WreathReport s = wreath_report(w, Exec::Serial);
        CHECK(s.residuals == r.residuals);
    }
}

TEST_CASE("wreath of a non-flexible pair is rejected")
{
    CHECK_THROWS_AS(build_wreath(pair("(u^2 + 2*v^2)/2", "u^2/2 + v^3"), square(17), 1e-8), PreconditionError);
}

TEST_CASE("sampled wreath stays within the discretization bound")
{
    const Grid2 g = square(41);
    const Field f = Field::analytic("(u^2 - v^2)/2 + u^3/6");
    const Field n = Field::analytic("u*v");
    const FlexPair p{HeightField(Field::sampled(g, f.sample(g))), HeightField(Field::sampled(g, n.sample(g)))};
    const double h = g.h();
    const WreathSet w = build_wreath(p, g, 10 * h * h);
    CHECK(wreath_report(w).max_residual() < 10 * h * h);
}

TEST_CASE("linear Weingarten velocity")
{
    // harmonic f has H = 0, so a = 1, b = 0 gives n = (u^2 + v^2)/2
    const HeightField f(Field::analytic("(u^3 - 3*u*v^2)/6"));
    const LwVelocity lw = lw_velocity(f, 1, 0, square(17), 1e-10);
    CHECK_FALSE(lw.trivial);
    CHECK(lw.lw_residual < 1e-12);
    CHECK(lw.v_residual < 1e-12);
    CHECK(max_flex_residual({f, lw.n}, square(17)) < 1e-12);
    // the unit paraboloid with a = 1, b = -1 gives n = 0
    CHECK(lw_velocity(HeightField(Field::analytic("(u^2 + v^2)/2")), 1, -1, square(9), 1e-10).trivial);
    CHECK_THROWS_AS(lw_velocity(HeightField(Field::analytic("u^2 + v^2")), 1, 0, square(9), 1e-10), PreconditionError);
}

TEST_CASE("relative Weingarten map is trace free")
{
    const RelativeWeingarten a = relative_weingarten(pair("(u^2 + v^2)/2", "u*v"), 0.2, 0.3);
    CHECK(a.trace == 0);
    CHECK(a.real);
    CHECK(std::abs(a.kappa1 - std::complex<double>(1, 0)) < 1e-14);
    CHECK(std::abs(a.kappa1 + a.kappa2) < 1e-14);
    const RelativeWeingarten b = relative_weingarten(pair("(u^2 - v^2)/2", "(u^2 + v^2)/2"), 0.2, 0.3);
    CHECK_FALSE(b.real);
    CHECK(std::abs(b.kappa1 * b.kappa1 + 1.0) < 1e-14);
}

TEST_CASE("split and merge are inverse")
{
    const FlexPair p = pair("(u^2 + v^2)/2", "u*v");
    const SplitPair s = split_pair(p, square(9), 1e-10);
    const MergedPair m = merge_pair(s.plus, s.minus);
    CHECK(m.middle.f.value(0.3, 0.7) == doctest::Approx(p.f.f.value(0.3, 0.7)));
    CHECK(m.n.f.value(0.3, 0.7) == doctest::Approx(2 * 0.21));
}

TEST_CASE("paratactic images round trip")
{
    const Field f = Field::analytic("(u^2 + v^2)/2 + u^3/10 + sin(v)/5");
    const Grid2 g = square(65);
    const ContactGrid cg = contact_grid_of_graph(f, g);
    std::vector<Vec2> left, right;
    for (const ContactJet& j : cg.data) {
        const ParatacticImage im = paratactic_forward(j.e);
        CHECK(im.left.isApprox(Vec2(j.e.x + j.e.q, j.e.y - j.e.p)));
        CHECK(im.right.isApprox(Vec2(j.e.x - j.e.q, j.e.y + j.e.p)));
        left.push_back(im.left);
        right.push_back(im.right);
    }
    const ParatacticResult r = paratactic_inverse(g, left, right, 7.0, 1e-8);
    CHECK(r.closure < 1e-8);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const ContactElement& a = r.field.data[k].e;
        const ContactElement& b = cg.data[k].e;
        CHECK(std::fabs(a.x - b.x) < 1e-12);
        CHECK(std::fabs(a.p - b.p) < 1e-12);
        CHECK(std::fabs(a.z - (b.z - cg.data[0].e.z + 7.0)) < 1e-9);
    }
}

TEST_CASE("paratactic inverse rejects maps that change area")
{
    const Grid2 g = square(17);
    std::vector<Vec2> left, right;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            left.emplace_back(g.u(i), g.v(j));
            right.emplace_back(2 * g.u(i), g.v(j));
        }
    CHECK_THROWS_AS(paratactic_inverse(g, left, right, 0, 1e-8), PreconditionError);
}

TEST_CASE("Euclidean rigid motion gives affine isotropic velocity")
{
    const Vec3 Ce(0.3, -0.7, 0.2), Cb(1.0, 2.0, -0.5);
    std::vector<Vec3> Fe, Ve, Cs, Cbs;
    for (double x : {-1.0, 0.0, 0.5})
        for (double y : {-0.5, 0.8}) {
            Fe.emplace_back(x, y, x * x - y / 3);
            Ve.push_back(Cb + Ce.cross(Fe.back()));
            Cs.push_back(Ce);
            Cbs.push_back(Cb);
        }
    const IsotropicDiagrams d = e2i_diagrams(Fe, Ve, Cs, Cbs, Mat3::Identity(), 1e-12);
    for (std::size_t k = 0; k < Fe.size(); ++k) {
        const double x = Fe[k].x(), y = Fe[k].y();
        CHECK(d.F[k].isApprox(Fe[k]));
        CHECK(d.V[k].x() == doctest::Approx(-y));
        CHECK(d.V[k].y() == doctest::Approx(x));
        CHECK(d.V[k].z() == doctest::Approx(Cb.z() + Ce.x() * y - Ce.y() * x));
        CHECK(d.C[k].isApprox(Vec3(Ce.y(), -Ce.x(), Ce.z())));
        CHECK(d.Cbar[k].z() == doctest::Approx(-Cb.z()));
    }
    Ve[2].z() += 1e-3;
    CHECK_THROWS_AS(e2i_diagrams(Fe, Ve, Cs, Cbs, Mat3::Identity(), 1e-9), PreconditionError);
    Mat3 T = Mat3::Identity();
    T(0, 0) = 2;
    CHECK_THROWS_AS(e2i_diagrams(Fe, Ve, Cs, Cbs, T, 1e-9), PreconditionError);
}
