#include "isowreath/curvature.hpp"
#include "isowreath/discrete.hpp"
#include "isowreath/errors.hpp"
#include "isowreath/isometry.hpp"
#include "isowreath/parallel.hpp"
#include "isowreath/wreath.hpp"

#include <doctest.h>

#include <atomic>
#include <stdexcept>

using namespace isowreath;

TEST_CASE("for_each_index visits every index once")
{
    for (Exec e : {Exec::Serial, Exec::Parallel}) {
        std::vector<std::atomic<int>> hits(1000);
        for_each_index(hits.size(), e, [&](std::size_t k) { hits[k]++; });
        for (const auto& h : hits)
            CHECK(h.load() == 1);
    }
    CHECK(worker_threads() >= 1);
}

TEST_CASE("for_each_index rethrows the lowest failing index")
{
    for (Exec e : {Exec::Serial, Exec::Parallel}) {
        try {
            for_each_index(500, e, [](std::size_t k) {
                if (k == 137 || k == 400)
                    throw std::runtime_error(std::to_string(k));
            });
            FAIL("expected an exception");
        } catch (const std::runtime_error& ex) {
            CHECK(std::string(ex.what()) == "137");
        }
    }
}

TEST_CASE("parallel kernels reproduce the serial reference")
{
    const Grid2 g = Grid2::spanning(-1, 1, -1, 1, 45, 37);
    const Field f = Field::analytic("sin(u)*cosh(v)/2 + u^3*v/5");
    const CurvatureGrid a = curvature_grid(f, g, Exec::Serial), b = curvature_grid(f, g, Exec::Parallel);
    CHECK(a.K == b.K);
    CHECK(a.H == b.H);
    CHECK(a.k1 == b.k1);
    CHECK(a.k2 == b.k2);

    const HeightField x(f), y(Field::analytic("sin(u)*cosh(v)/2 + u^3*v/5 + u*v/100"));
    const IsometryReport ia = is_isometric(x, y, g, 1e-3, Exec::Serial);
    const IsometryReport ib = is_isometric(x, y, g, 1e-3, Exec::Parallel);
    CHECK(ia.max_dK == ib.max_dK);
    CHECK(ia.at_u == ib.at_u);
    CHECK(ia.at_v == ib.at_v);

    const FlexPair p{HeightField(Field::analytic("(u^2 + v^2)/2")), HeightField(Field::analytic("u*v + v^3"))};
    CHECK(max_flex_residual(p, g, Exec::Serial) == max_flex_residual(p, g, Exec::Parallel));
}

TEST_CASE("parallel net kernels reproduce the serial reference")
{
    const int n = 15;
    const auto top = circle_tangent_topview(n, n, 0, 0.8, 1.6, 2.4);
    std::vector<double> zr(n), zc(n);
    for (int k = 0; k < n; ++k) {
        zr[k] = 0.1 * k * k / n;
        zc[k] = 0.05 * k;
    }
    zc[0] = zr[0];
    const QuadNet F = voss_construct(n, n, top, zr, zc);
    const QNetReport qa = is_qnet(F, 1e-10, Exec::Serial), qb = is_qnet(F, 1e-10, Exec::Parallel);
    CHECK(qa.residual == qb.residual);

    const QuadNet B = koenigs_dualize(F, Vec3::Zero());
    const KoenigsReport ka = koenigs_check(F, B, 1e-9, Exec::Serial), kb = koenigs_check(F, B, 1e-9, Exec::Parallel);
    CHECK(ka.face_residual == kb.face_residual);
    CHECK(ka.dual == kb.dual);

    QuadNet V = F;
    for (auto& v : V.p)
        v = Vec3(-v.y(), v.x(), v.x() * v.x());
    const FlexFitReport fa = discrete_flex_fit(F, V, 1e-9, Exec::Serial);
    const FlexFitReport fb = discrete_flex_fit(F, V, 1e-9, Exec::Parallel);
    CHECK(fa.face_fit == fb.face_fit);
    CHECK(fa.face_mixed == fb.face_mixed);
}
