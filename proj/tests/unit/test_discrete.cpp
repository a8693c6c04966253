#include "isowreath/discrete.hpp"
#include "isowreath/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace isowreath;

namespace {

double shoelace(const Quad2& q)
{
    double a = 0;
    for (int k = 0; k < 4; ++k) {
        const Vec2& p = q[k];
        const Vec2& n = q[(k + 1) % 4];
        a += p.x() * n.y() - p.y() * n.x();
    }
    return a / 2;
}

double mixed_by_polarization(const Quad2& P, const Quad2& Q)
{
    Quad2 S;
    for (int k = 0; k < 4; ++k)
        S[k] = P[k] + Q[k];
    return (shoelace(S) - shoelace(P) - shoelace(Q)) / 2;
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Quad with edges parallel to those of P; Q2 closes the quad.
Quad2 parallel_quad(const Quad2& P, const Vec2& q0, double l0, double l3)
{
    Quad2 Q;
    Q[0] = q0;
    Q[1] = q0 + l0 * (P[1] - P[0]);
    Q[3] = q0 + l3 * (P[3] - P[0]);
    const Vec2 e1 = P[2] - P[1], e2 = P[2] - P[3];
    // Q1 + s e1 = Q3 + r e2
    const double s = cross2(Q[3] - Q[1], e2) / cross2(e1, e2);
    Q[2] = Q[1] + s * e1;
    return Q;
}

QuadNet single_face(const Quad2& q)
{
    QuadNet n(2, 2);
    n.at(0, 0) = Vec3(q[0].x(), q[0].y(), 0);
    n.at(1, 0) = Vec3(q[1].x(), q[1].y(), 0);
    n.at(1, 1) = Vec3(q[2].x(), q[2].y(), 0);
    n.at(0, 1) = Vec3(q[3].x(), q[3].y(), 0);
    return n;
}

QuadNet sample_voss(int n = 21)
{
    const auto top = circle_tangent_topview(n, n, 0, 0.8, 1.6, 2.4);
    std::vector<double> zr(n), zc(n);
    for (int k = 0; k < n; ++k) {
        zr[k] = 0.3 * std::sin(0.2 * k);
        zc[k] = 0.2 * std::cos(0.3 * k) - 0.2;
    }
    return voss_construct(n, n, top, zr, zc);
}

QuadNet translational(int nu, int nv)
{
    QuadNet A(nu, nv);
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            const Vec3 a(i + 0.1 * i * i, 0.05 * i * i, std::sin(0.4 * i));
            const Vec3 b(0.2 * j * j, j + 0.03 * j * j * j, std::cos(0.5 * j));
            A.at(i, j) = a + b;
        }
    return A;
}

} // namespace

TEST_CASE("face planarity and face planes")
{
    const std::array<Vec3, 4> flat{Vec3(0, 0, 1), Vec3(1, 0, 3), Vec3(1.2, 1, 2.5), Vec3(0, 1.1, 0.45)};
    // z = 1 + 2x - 0.5y
    std::array<Vec3, 4> f = flat;
    for (auto& p : f)
        p.z() = 1 + 2 * p.x() - 0.5 * p.y();
    CHECK(face_planarity(f) < 1e-15);
    const FacePlane pl = face_plane(f);
    CHECK(pl.p == doctest::Approx(2));
    CHECK(pl.q == doctest::Approx(-0.5));
    CHECK(pl.d == doctest::Approx(1));
    CHECK(face_planarity(flat) > 0.01);
    CHECK_THROWS_AS(face_plane({Vec3(0, 0, 0), Vec3(1, 1, 0), Vec3(2, 2, 1), Vec3(3, 3, 0)}), DegeneracyError);
}

TEST_CASE("property: mixed area is the polarization of the shoelace area")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> x(-2, 2);
    for (int k = 0; k < 500; ++k) {
        Quad2 P, Q;
        for (int c = 0; c < 4; ++c) {
            P[c] = Vec2(x(rng), x(rng));
            Q[c] = Vec2(x(rng), x(rng));
        }
        CHECK(mixed_area(P, P) == doctest::Approx(shoelace(P)).epsilon(1e-12));
        CHECK(mixed_area(P, Q) == doctest::Approx(mixed_by_polarization(P, Q)).epsilon(1e-12));
        CHECK(mixed_area(P, Q) == doctest::Approx(mixed_area(Q, P)).epsilon(1e-12));
    }
}

TEST_CASE("property: Koenigs duality of a face is vanishing mixed area")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> x(-1, 1), l(0.3, 2);
    int dual_found = 0;
    for (int k = 0; k < 500; ++k) {
        const Quad2 P{Vec2(0, 0) + 0.2 * Vec2(x(rng), x(rng)), Vec2(1, 0) + 0.2 * Vec2(x(rng), x(rng)),
                      Vec2(1, 1) + 0.2 * Vec2(x(rng), x(rng)), Vec2(0, 1) + 0.2 * Vec2(x(rng), x(rng))};
        const Vec2 q0(x(rng), x(rng));
        const double l0 = l(rng);
        Quad2 Q;
        if (k % 2 == 0) {
            Q = parallel_quad(P, q0, l0, l(rng));
        } else {
            // mixed area is affine in l3; choose its root
            const double m0 = mixed_by_polarization(P, parallel_quad(P, q0, l0, 0.0));
            const double m1 = mixed_by_polarization(P, parallel_quad(P, q0, l0, 1.0));
            Q = parallel_quad(P, q0, l0, -m0 / (m1 - m0));
        }
        const bool zero = std::fabs(mixed_by_polarization(P, Q)) < 1e-9;
        const KoenigsReport r = koenigs_check(single_face(P), single_face(Q), 1e-9);
        CHECK(r.dual == zero);
        dual_found += r.dual;
    }
    CHECK(dual_found >= 250);
}

TEST_CASE("Koenigs dual of a translational net")
{
    const QuadNet A = translational(8, 7);
    const QuadNet B = koenigs_dualize(A, Vec3(1, 2, 3));
    CHECK(B.at(0, 0).isApprox(Vec3(1, 2, 3)));
    // dual of alpha_i + beta_j is proportional to alpha_i - beta_j
    for (int j = 0; j + 1 < A.nv; ++j)
        for (int i = 0; i + 1 < A.nu; ++i) {
            CHECK(B.edge_u(i, j).cross(A.edge_u(i, j)).norm() < 1e-10);
            CHECK(B.edge_v(i, j).cross(A.edge_v(i, j)).norm() < 1e-10);
            CHECK(B.edge_u(i, j).dot(A.edge_u(i, j)) > 0);
            CHECK(B.edge_v(i, j).dot(A.edge_v(i, j)) < 0);
        }
    const KoenigsReport r = koenigs_check(A, B, 1e-9);
    CHECK(r.dual);
    const QuadNet A2 = koenigs_dualize(B, A.at(0, 0));
    CHECK(homothety_residual(A, A2) < 1e-10);
}

TEST_CASE("Koenigs dualization rejects other nets")
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> x(-0.2, 0.2);
    QuadNet flat(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            flat.at(i, j) = Vec3(i + x(rng), j + x(rng), 0);
    CHECK_THROWS_AS(koenigs_dualize(flat, Vec3::Zero()), PreconditionError);
    QuadNet bent = translational(3, 3);
    bent.at(1, 1).z() += 0.3;
    CHECK_THROWS_AS(koenigs_dualize(bent, Vec3::Zero()), PreconditionError);
}

TEST_CASE("nu of points and planes")
{
    const Vec3 a(0.5, -1.5, 2);
    const FacePlane pl = nu_plane_of_point(a);
    CHECK(pl.p == doctest::Approx(1.5));
    CHECK(pl.q == doctest::Approx(0.5));
    CHECK(pl.d == doctest::Approx(2));
}

TEST_CASE("property: nu applied twice returns the interior vertices")
{
    const QuadNet F = sample_voss(9);
    const QuadNet D = net_dual_nu(F, 1e-10);
    CHECK(D.nu == F.nu - 1);
    const QuadNet DD = net_dual_nu(D, 1e-9);
    for (int j = 0; j < DD.nv; ++j)
        for (int i = 0; i < DD.nu; ++i)
            CHECK((DD.at(i, j) - F.at(i + 1, j + 1)).norm() < 1e-10);
    QuadNet bent = F;
    bent.at(3, 3).z() += 0.1;
    CHECK_THROWS_AS(net_dual_nu(bent, 1e-10), PreconditionError);
}

TEST_CASE("circle tangent top views")
{
    const int nu = 6, nv = 5;
    const auto top = circle_tangent_topview(nu, nv, 0, 0.8, 1.6, 2.4);
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            const double a = 0.8 * i / (nu - 1), b = 1.6 + 0.8 * j / (nv - 1);
            const Vec2& p = top[static_cast<std::size_t>(j) * nu + i];
            CHECK(p.dot(Vec2(std::cos(a), std::sin(a))) == doctest::Approx(1));
            CHECK(p.dot(Vec2(std::cos(b), std::sin(b))) == doctest::Approx(1));
        }
}

TEST_CASE("Voss construction")
{
    const QuadNet F = sample_voss();
    CHECK(is_qnet(F, 1e-12).planar);
    CHECK(F.at(0, 4).z() == doctest::Approx(0.2 * std::cos(1.2) - 0.2));
    CHECK(F.at(5, 0).z() == doctest::Approx(0.3 * std::sin(1.0)));
    auto top = circle_tangent_topview(5, 5, 0, 0.8, 1.6, 2.4);
    top[7].x() += 0.05;
    const std::vector<double> z(5, 0.0);
    CHECK_THROWS_AS(voss_construct(5, 5, top, z, z), PreconditionError);
}

TEST_CASE("property: Voss flex keeps top view, planarity and dihedral angles")
{
    const QuadNet F = sample_voss();
    const Dihedrals d0 = dihedral_angles(F);
    CHECK(d0.max_variation() < 1e-10);
    const VossFlex one = voss_flex(F, 1);
    for (std::size_t k = 0; k < F.p.size(); ++k)
        CHECK((one.F.p[k] - F.p[k]).norm() < 1e-10);
    double area0 = 0;
    for (double t : {0.5, 0.8, 2.0}) {
        const VossFlex fl = voss_flex(F, t);
        CHECK(fl.translational_defect < 1e-10);
        CHECK(is_qnet(fl.F, 1e-10).planar);
        for (std::size_t k = 0; k < F.p.size(); ++k)
            CHECK((fl.F.p[k].head<2>() - F.p[k].head<2>()).norm() < 1e-10);
        CHECK(dihedral_angles(fl.F).max_variation() < 1e-9);
        // faces of the scaled dual are parallelograms of constant area
        double area = 0;
        for (int j = 0; j + 1 < fl.LB.nv; ++j)
            for (int i = 0; i + 1 < fl.LB.nu; ++i) {
                const auto q = fl.LB.face(i, j);
                CHECK((q[0] + q[2] - q[1] - q[3]).norm() < 1e-12);
                area += shoelace(top_quad(q));
            }
        if (area0 == 0)
            area0 = area;
        CHECK(area == doctest::Approx(area0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(voss_flex(F, -1), PreconditionError);
}

TEST_CASE("discrete flex fit")
{
    const QuadNet F = sample_voss(7);
    QuadNet V = F;
    for (auto& p : V.p)
        p = Vec3(-p.y(), p.x(), 0.3 * p.x() - 0.2 * p.y() + 1);
    const FlexFitReport r = discrete_flex_fit(F, V, 1e-9);
    CHECK(r.flexible);
    CHECK(r.topview_residual < 1e-12);
    QuadNet W = V;
    W.at(3, 3).z() += 0.2;
    CHECK_FALSE(discrete_flex_fit(F, W, 1e-9).flexible);
}

TEST_CASE("property: discrete Minding shears preserve the ruling invariants")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> x(-1, 1);
    std::vector<Ruling> r;
    for (int k = 0; k < 12; ++k) {
        const double a = 0.25 * k;
        r.push_back({Vec3(std::cos(a), std::sin(a), 0.3 * a + x(rng) * 0.1), Vec3(-std::sin(a), std::cos(a), 0.5 + 0.1 * x(rng))});
    }
    const auto s0 = minding_steps(r);
    // hand check of the first step
    {
        const Vec2 p0 = r[0].point.head<2>(), p1 = r[1].point.head<2>();
        const Vec2 e0 = r[0].dir.head<2>(), e1 = r[1].dir.head<2>();
        const double det = cross2(e0, e1);
        const double s = cross2(p1 - p0, e1) / det, t = cross2(p1 - p0, e0) / det;
        const double d = (r[1].point + t * r[1].dir).z() - (r[0].point + s * r[0].dir).z();
        CHECK(s0[0].d == doctest::Approx(d).epsilon(1e-12));
        CHECK(s0[0].phi == doctest::Approx(std::atan2(det, e0.dot(e1))).epsilon(1e-12));
    }
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> lambda(r.size() - 1);
        for (double& l : lambda)
            l = x(rng);
        const auto s1 = minding_steps(discrete_minding_shear(r, lambda));
        for (std::size_t i = 0; i < s0.size(); ++i) {
            CHECK(std::fabs(s1[i].d - s0[i].d) < 1e-12);
            CHECK(std::fabs(s1[i].phi - s0[i].phi) < 1e-12);
            CHECK(std::fabs(s1[i].rho - s0[i].rho) < 1e-12);
        }
    }
    CHECK_THROWS_AS(discrete_minding_shear(r, {1.0}), PreconditionError);
}
