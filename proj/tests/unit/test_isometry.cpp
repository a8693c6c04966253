#include "isowreath/curvature.hpp"
#include "isowreath/errors.hpp"
#include "isowreath/isometry.hpp"
#include "isowreath/ruled.hpp"

#include <doctest.h>

#include <cmath>

using namespace isowreath;

namespace {

Grid2 square(int n) { return Grid2::spanning(-1, 1, -1, 1, n, n); }

// f +- n for a flexible pair: K(f + n) - K(f - n) = 4 K(f, n) = 0
const char* const split_f = "(u^2 - v^2 + cos(1 + u)*cosh(1 + v) + cosh(v)*sin(u))/10";

} // namespace

TEST_CASE("isometric split of a harmonic surface")
{
    const HeightField a(Field::analytic(std::string(split_f) + " + (u^2 + v^2)/6"));
    const HeightField b(Field::analytic(std::string(split_f) + " - (u^2 + v^2)/6"));
    const IsometryReport r = is_isometric(a, b, square(41), 1e-10);
    CHECK(r.isometric);
    CHECK(r.max_dK < 1e-10);
    const HeightField c(Field::analytic(std::string(split_f) + " - (u^2 + 2*v^2)/6"));
    CHECK_FALSE(is_isometric(a, c, square(41), 1e-10).isometric);
}

TEST_CASE("harmonic conjugate of sin u cosh v")
{
    const HeightField x(Field::analytic("sin(u)*cosh(v)/2 + 10"));
    const Grid2 g = square(65);
    const HarmonicConjugate hc = harmonic_conjugate(x, g, 1e-9);
    CHECK(hc.closure < 1e-9);
    CHECK(hc.laplacian < 1e-12);
    const Grid2 r = jet_region(hc.y.f, g);
    const double y0 = std::cos(g.u0) * std::sinh(g.v0) / 2;
    for (int j = 0; j < r.nv; j += 7)
        for (int i = 0; i < r.nu; i += 7) {
            const double u = r.u(i), v = r.v(j);
            CHECK(hc.y.f.value(u, v) == doctest::Approx(std::cos(u) * std::sinh(v) / 2 - y0).epsilon(1e-9));
        }
    CHECK_THROWS_AS(harmonic_conjugate(HeightField(Field::analytic("u^2")), g, 1e-9), PreconditionError);
}

TEST_CASE("property: associated family is isometric for every t")
{
    const HeightField x(Field::analytic("sin(u)*cosh(v)/2 + 10"));
    const HeightField y(Field::analytic("cos(u)*sinh(v)/2"));
    const Grid2 g = square(33);
    CHECK(cauchy_riemann_residual(x, y, g) < 1e-14);
    for (double t = 0; t < 6.3; t += 0.35) {
        const HeightField ft = assoc_family(x, y, t, g, 1e-10);
        CHECK(is_isometric(ft, x, g, 1e-12).isometric);
    }
    const HeightField bad(Field::analytic("cos(u)*sinh(v)"));
    CHECK_THROWS_AS(assoc_family(x, bad, 0.3, g, 1e-8), PreconditionError);
}

TEST_CASE("rotational and helical curvature against the general formula")
{
    const Field prof = Field::analytic("-sin(v)");
    for (double h : {0.0, 1.0, 0.4}) {
        const ParamSurface s = helical_surface(prof, h);
        for (double v : {0.6, 1.3, 2.9})
            for (double u : {0.1, 2.0}) {
                const double K = curvature_param(s, u, v).K;
                CHECK(K == doctest::Approx(rotational_K(-std::cos(v), std::sin(v), h, v)).epsilon(1e-12));
            }
    }
    // flat helicoid: f' = 0 gives -h^2 / v^4
    CHECK(rotational_K(0, 0, 1, 2) == doctest::Approx(-1.0 / 16));
    CHECK_THROWS_AS(rotational_K(1, 1, 0, 0), DegeneracyError);
}

TEST_CASE("adaptive Simpson")
{
    CHECK(adaptive_simpson([](double x) { return std::exp(x); }, 0, 2, 1e-12) ==
          doctest::Approx(std::exp(2) - 1).epsilon(1e-12));
    CHECK(adaptive_simpson([](double x) { return std::sqrt(x); }, 0, 1, 1e-10) ==
          doctest::Approx(2.0 / 3).epsilon(1e-8));
}

TEST_CASE("Bour mate with a tangent constant")
{
    const Profile f{Field::analytic("-sin(v)")};
    const double c = bour_tangent_c(f, 1, 4.7);
    // double zero of cos^2 v - 1/v^2 + c
    double vz = 4.7;
    for (int k = 0; k < 50; ++k) {
        const double g = -2 * std::cos(vz) * std::sin(vz) + 2 / (vz * vz * vz);
        const double dg = -2 * std::cos(2 * vz) - 6 / (vz * vz * vz * vz);
        vz -= g / dg;
    }
    CHECK(c == doctest::Approx(1 / (vz * vz) - std::cos(vz) * std::cos(vz)).epsilon(1e-10));
    CHECK(std::fabs(bour_radicand(f, 1, c, vz)) < 1e-12);

    BourOptions opt;
    opt.v0 = 3;
    opt.v1 = 6;
    const BourProfile b = bour_family(f, 1, c, bour_auto_sign(f, 1, c, 3, 6), opt);
    CHECK(b.closure < 1e-8);
    for (double v : {3.2, 4.0, 4.69, 4.72, 5.5})
        for (double u : {0.3, 4.0}) {
            const double Kh = curvature_param(b.surface, u, v).K;
            CHECK(Kh == doctest::Approx(rotational_K(-std::cos(v), std::sin(v), 0, v)).epsilon(1e-7));
        }
}

TEST_CASE("Bour mate does not exist where the radicand is negative")
{
    const Profile f{Field::analytic("-sin(v)")};
    CHECK(bour_radicand(f, 1, 0.045124, 1.0) < 0);
    BourOptions opt;  // v in [0.5, 3]
    CHECK_THROWS_AS(bour_family(f, 1, 0.045124, bour_cos_sign(), opt), DegeneracyError);
    opt.v0 = -1;
    CHECK_THROWS_AS(bour_family(f, 1, 0.045124, bour_cos_sign(), opt), PreconditionError);
}

TEST_CASE("parabolic family")
{
    const Field f = Field::analytic("v^3/6 + sin(v)");
    const ParabolicProfile p = parabolic_family(f, 1, 0.5, 2, 1.5, 0.3, -1);
    CHECK_FALSE(p.clifford);
    const HeightField F = parabolic_surface(f, 1, 0.5), G = parabolic_surface(p.profile, 2, 1.5);
    // K = 2 a f'' - b^2
    const double v = 0.4;
    CHECK(curvature_graph(F.f, 0.7, v).K == doctest::Approx(2 * (v - std::sin(v)) - 0.25));
    CHECK(is_isometric(F, G, square(21), 1e-12).isometric);

    const ParabolicProfile cl = parabolic_family(Field::analytic("v^2"), 1, 1, 0, 3, 0, 0);
    CHECK(cl.clifford);
    CHECK(cl.constant_K == doctest::Approx(-9));
    CHECK(curvature_graph(parabolic_surface(cl.profile, 0, 3).f, 0.2, 0.1).K == doctest::Approx(-9));
    CHECK_THROWS_AS(parabolic_family(f, 1, 1, 0, 0, 0, 0), PreconditionError);
}

TEST_CASE("ruled surfaces of the three types")
{
    // type I: tangents of the unit circle with slope 0.5 along a helix of slope 0.3
    RuledSurface r1{{Field::analytic("cos(u)"), Field::analytic("sin(u)"), Field::analytic("0.3*u")},
                    {Field::analytic("-sin(u)"), Field::analytic("cos(u)"), Field::constant(0.5)}};
    CHECK(classify_ruled(r1, 0, 2) == RuledType::I);
    const StrictionData s1 = striction(r1, 0.8, RuledType::I);
    CHECK(s1.t_star == doctest::Approx(0).epsilon(1e-12));
    CHECK(s1.rho * s1.rho == doctest::Approx(0.04));
    const ParamSurface p1 = ruled_param_surface(r1);
    for (double t : {0.5, -1.2})
        CHECK(curvature_param(p1, 0.8, t).K == doctest::Approx(-0.04 / std::pow(t, 4)).epsilon(1e-10));
    CHECK(ruled_K(r1, RuledType::I, 0.8, 0.5) == doctest::Approx(-0.04 / std::pow(0.5, 4)).epsilon(1e-10));

    // type II: z = h(theta) in polar coordinates, K = -h'^2 / r^4
    RuledSurface r2{{Field::constant(0), Field::constant(0), Field::analytic("u^2/2")},
                    {Field::analytic("cos(u)"), Field::analytic("sin(u)"), Field::constant(0)}};
    CHECK(classify_ruled(r2, 0.2, 1.5) == RuledType::II);
    CHECK(ruled_K(r2, RuledType::II, 0.9, 1.5) == doctest::Approx(-0.81 / std::pow(1.5, 4)).epsilon(1e-10));
    CHECK(curvature_param(ruled_param_surface(r2), 0.9, 1.5).K ==
          doctest::Approx(-0.81 / std::pow(1.5, 4)).epsilon(1e-10));

    // type III: z = sin u + t cos u, K = -sin^2 u
    RuledSurface r3{{Field::analytic("u"), Field::constant(0), Field::analytic("sin(u)")},
                    {Field::constant(0), Field::constant(1), Field::analytic("cos(u)")}};
    CHECK(classify_ruled(r3, -1, 1) == RuledType::III);
    CHECK(ruled_K(r3, RuledType::III, 0.6, 3) == doctest::Approx(-std::sin(0.6) * std::sin(0.6)));
}

TEST_CASE("smooth Minding family")
{
    RuledSurface f{{Field::analytic("cos(u)"), Field::analytic("sin(u)"), Field::analytic("0.3*u + u^2/5")},
                   {Field::analytic("-sin(u)"), Field::analytic("cos(u)"), Field::analytic("0.5 + u/4")}};
    // torsal surface over the same rulings: tangent surface of a curve over the circle
    RuledSurface r{{Field::analytic("cos(u)"), Field::analytic("sin(u)"), Field::analytic("exp(u/2)")},
                   {Field::analytic("-sin(u)"), Field::analytic("cos(u)"), Field::analytic("exp(u/2)/2")}};
    const Grid2 g = Grid2::spanning(0.1, 1.4, 0.3, 1.5, 17, 17);
    const ParamSurface pf = ruled_param_surface(f);
    for (double s : {-1.0, 0.5, 2.0}) {
        const ParamSurface pm = ruled_param_surface(minding_family(f, r, s, 0.1, 1.4));
        CHECK(is_isometric(pf, pm, g, 1e-8).isometric);
    }
    CHECK_THROWS_AS(minding_family(f, f, 1, 0.1, 1.4), PreconditionError);
    RuledSurface moved = r;
    moved.c[0] = Field::analytic("cos(u) + 0.1");
    CHECK_THROWS_AS(minding_family(f, moved, 1, 0.1, 1.4), PreconditionError);
}
