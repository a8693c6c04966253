#include "isowreath/duality.hpp"
#include "isowreath/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace isowreath;

namespace {

ContactElement random_element(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> x(-3, 3);
    return {x(rng), x(rng), x(rng), x(rng), x(rng)};
}

bool on_plane(const Vec3& a, double p, double q, double d, double tol = 1e-12)
{
    return std::fabs(a.z() - (p * a.x() + q * a.y() + d)) < tol;
}

} // namespace

TEST_CASE("property: dualities are involutions")
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 2000; ++k) {
        const ContactElement e = random_element(rng);
        CHECK((delta(delta(e)) - e).max_abs() < 1e-12);
        CHECK((nu(nu(e)) - e).max_abs() < 1e-12);
    }
}

TEST_CASE("property: nu factors through delta")
{
    std::mt19937_64 rng(4);
    for (int k = 0; k < 2000; ++k) {
        const ContactElement e = random_element(rng);
        ContactElement r = rot_j(e);
        r = {r.x, r.y, -r.z, -r.p, -r.q};  // reflection z -> -z
        CHECK((nu(e) - delta(r)).max_abs() < 1e-12);
    }
}

TEST_CASE("polarity is incidence preserving")
{
    // delta maps the point a to the plane z = a_x X + a_y Y - a_z: the dual point lies on
    // the dual plane of every point of the original tangent plane.
    std::mt19937_64 rng(9);
    for (int k = 0; k < 200; ++k) {
        const ContactElement e = random_element(rng);
        const ContactElement d = delta(e);
        CHECK(on_plane(d.point(), e.x, e.y, -e.z, 1e-10));
        const ContactElement n = nu(e);
        CHECK(on_plane(n.point(), -e.y, e.x, e.z, 1e-10));
    }
}

TEST_CASE("unit sphere is self-dual under delta")
{
    for (double x : {-1.0, 0.2, 1.7})
        for (double y : {-0.5, 0.9}) {
            const ContactElement e{x, y, (x * x + y * y) / 2, x, y};
            CHECK((delta(e) - e).max_abs() == 0);
        }
}

TEST_CASE("delta dual of an elliptic paraboloid")
{
    // Dual of (a u^2 + b v^2)/2 is X^2/(2a) + Y^2/(2b).
    const double a = 2, b = 5;
    const HeightField f(Field::analytic("(2*u^2 + 5*v^2)/2"));
    const Grid2 g = Grid2::spanning(-1, 1, -1, 1, 9, 9);
    const DualGraph d = dualize_graph(f, DualMap::Delta, g);
    REQUIRE(d.graph.has_value());
    for (double X : {-0.5, 0.3})
        for (double Y : {-0.2, 0.8}) {
            const Jet2 j = d.graph->jet(X, Y);
            CHECK(j.f == doctest::Approx(X * X / (2 * a) + Y * Y / (2 * b)).epsilon(1e-12));
            CHECK(j.fuu == doctest::Approx(1 / a).epsilon(1e-12));
            CHECK(j.fvv == doctest::Approx(1 / b).epsilon(1e-12));
        }
    const CurvatureSample s = curvature_param(d.surface, 0.4, -0.3);
    CHECK(s.K == doctest::Approx(1 / (a * b)));
    CHECK(s.H == doctest::Approx((a + b) / 2 / (a * b)));
}

TEST_CASE("property: curvature of the delta dual")
{
    const char* fs[] = {"(u^2 + 2*v^2)/2 + u^3/7", "exp(u/3)*cosh(v/2) + u*v/5", "cosh(u) + cosh(v) + u*v/4"};
    for (const char* fe : fs) {
        const HeightField f(Field::analytic(fe));
        const ParamSurface d = dual_param_surface(f, DualMap::Delta);
        for (double u : {-0.4, 0.1, 0.5})
            for (double v : {-0.3, 0.6}) {
                const CurvatureSample a = curvature_graph(f.f, u, v);
                const CurvatureSample b = curvature_param(d, u, v);
                CHECK(a.K * b.K == doctest::Approx(1).epsilon(1e-9));
                CHECK(b.H == doctest::Approx(a.H / a.K).epsilon(1e-9));
                const DualCurvature r = dual_curvature_rule(a.K, a.H);
                CHECK(r.K == doctest::Approx(b.K).epsilon(1e-9));
                CHECK(r.H == doctest::Approx(b.H).epsilon(1e-9));
            }
    }
    CHECK_THROWS_AS(dual_curvature_rule(0, 1), DegeneracyError);
}

TEST_CASE("support function surfaces")
{
    // h = u^2/(2a) + v^2/(2b) describes the paraboloid (a x^2 + b y^2)/2.
    const double a = 2, b = 3;
    const SupportField h(Field::analytic("u^2/4 + v^2/6"));
    const Vec3 p = support_point(h, 0.8, -0.6);
    CHECK(p.z() == doctest::Approx((a * p.x() * p.x() + b * p.y() * p.y()) / 2));
    const CurvatureSample s = curvature_from_support(h, 0.8, -0.6);
    CHECK(s.K == doctest::Approx(a * b));
    CHECK(s.H == doctest::Approx((a + b) / 2));
    const CurvatureSample t = curvature_param(surface_from_support(h), 0.8, -0.6);
    CHECK(t.K == doctest::Approx(a * b));
    CHECK(t.H == doctest::Approx((a + b) / 2));
}

TEST_CASE("envelope of tangent planes")
{
    // planes of the unit paraboloid: -u x - v y + z = -(u^2 + v^2)/2
    const Field n[3] = {Field::analytic("-u"), Field::analytic("-v"), Field::constant(1)};
    const Vec3 e = envelope(n, Field::analytic("-(u^2 + v^2)/2"), 0.3, 0.7);
    CHECK(e.isApprox(Vec3(0.3, 0.7, (0.09 + 0.49) / 2)));
}

TEST_CASE("contact grids of graphs satisfy the contact condition")
{
    const ContactGrid c = contact_grid_of_graph(Field::analytic("sin(u)*v + v^3/3"), Grid2::spanning(-1, 1, -1, 1, 9, 9));
    for (const ContactJet& j : c.data) {
        CHECK(contact_residual(j) < 1e-14);
        CHECK(contact_residual(delta(j)) < 1e-12);
        CHECK(contact_residual(nu(j)) < 1e-12);
        CHECK(std::fabs(integrability_residual(j)) < 1e-14);
    }
}
