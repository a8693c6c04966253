#include "isowreath/errors.hpp"
#include "isowreath/expr.hpp"
#include "isowreath/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace isowreath;

TEST_CASE("parse and evaluate")
{
    CHECK(Expr::parse("1 + 2*3").eval(0, 0) == doctest::Approx(7));
    CHECK(Expr::parse("-u^2").eval(3, 0) == doctest::Approx(-9));
    CHECK(Expr::parse("2^3^2").eval(0, 0) == doctest::Approx(512));
    CHECK(Expr::parse("sin(u)*cosh(v)").eval(0.4, -0.7) == doctest::Approx(std::sin(0.4) * std::cosh(-0.7)));
    CHECK(Expr::parse("1.5e-2*u").eval(2, 0) == doctest::Approx(0.03));
    CHECK(Expr::parse("pi").eval(0, 0) == doctest::Approx(M_PI));
}

TEST_CASE("parameters bind at evaluation")
{
    const Expr e = Expr::parse("a/2*(u^2 + v^2) + b");
    CHECK(e.parameters() == std::vector<std::string>{"a", "b"});
    CHECK(e.eval(1, 2, {{"a", 4}, {"b", -1}}) == doctest::Approx(9));
    CHECK_THROWS_AS(e.eval(1, 2, {{"a", 4}}), UnboundParameterError);
}

TEST_CASE("parse errors carry offsets")
{
    try {
        Expr::parse("u + * v");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK(!e.expected().empty());
    }
    CHECK_THROWS_AS(Expr::parse("sin(u"), ParseError);
    CHECK_THROWS_AS(Expr::parse(""), ParseError);
    CHECK_THROWS_AS(Expr::parse("u v"), ParseError);
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(Expr::parse("log(u)").eval(-1, 0), EvalDomainError);
    CHECK_THROWS_AS(Expr::parse("sqrt(u)").eval(-1, 0), EvalDomainError);
    CHECK_THROWS_AS(Expr::parse("1/u").eval(0, 0), EvalDomainError);
    CHECK_THROWS_AS(Expr::parse("abs(u)").eval_jet2(0, 0), NondifferentiableError);
    CHECK(Expr::parse("abs(u)").eval_jet2(-2, 0).fu == doctest::Approx(-1));
}

TEST_CASE("jets of a polynomial match hand derivatives")
{
    // f = u^3 v + 2 u v^2
    const Jet2 j = Expr::parse("u^3*v + 2*u*v^2").eval_jet2(1.5, -0.5);
    const double u = 1.5, v = -0.5;
    CHECK(j.f == doctest::Approx(u * u * u * v + 2 * u * v * v));
    CHECK(j.fu == doctest::Approx(3 * u * u * v + 2 * v * v));
    CHECK(j.fv == doctest::Approx(u * u * u + 4 * u * v));
    CHECK(j.fuu == doctest::Approx(6 * u * v));
    CHECK(j.fuv == doctest::Approx(3 * u * u + 4 * v));
    CHECK(j.fvv == doctest::Approx(4 * u));
}

TEST_CASE("third-order jets")
{
    // f = exp(u) sin(v): every derivative is exp(u) times sin or cos of v.
    const double u = 0.3, v = 0.8;
    const Jet3 j = Expr::parse("exp(u)*sin(v)").eval_jet3(u, v);
    const double e = std::exp(u), s = std::sin(v), c = std::cos(v);
    CHECK(j.d3[0][0][0] == doctest::Approx(e * s));
    CHECK(j.d3[0][0][1] == doctest::Approx(e * c));
    CHECK(j.d3[0][1][1] == doctest::Approx(-e * s));
    CHECK(j.d3[1][1][1] == doctest::Approx(-e * c));
    CHECK(j.d3[1][0][1] == doctest::Approx(j.d3[0][1][1]));
    const Jet2 l = j.lower();
    CHECK(l.fuv == doctest::Approx(e * c));
}

TEST_CASE("printing round-trips")
{
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const Expr e = random_expr(rng, 4);
        const Expr back = Expr::parse(e.to_string());
        CHECK_MESSAGE(back.structurally_equal(e), e.to_string());
    }
}

TEST_CASE("property: AD agrees with central differences on random expressions")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pt(-1.5, 1.5);
    int used = 0;
    for (int k = 0; k < 300; ++k) {
        const Expr e = random_expr(rng, 4);
        const DerivativeCheck d = check_derivatives(e, pt(rng), pt(rng));
        if (!d.usable)
            continue;
        ++used;
        CHECK_MESSAGE(d.max_rel < 1e-5, e.to_string());
    }
    CHECK(used > 100);
}
