#pragma once

#include "isowreath/expr.hpp"
#include "isowreath/parallel.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace isowreath {

struct VerifyCheck {
    std::string name;
    double residual = 0;
    double tol = 0;
    bool pass = false;
    std::string note;  // exception text when the check could not run
};

// Random expression tree in u and v with at most `depth` levels.
Expr random_expr(std::mt19937_64& rng, int depth);

struct DerivativeCheck {
    bool usable = false;   // false when a stencil point left the function domain
    double max_rel = 0;    // over the five first and second partials
};

// Jet2 of e at (u, v) against central differences with step h.
DerivativeCheck check_derivatives(const Expr& e, double u, double v, double h = 1e-4);

// Invariant suite behind `isowreath verify`. Deterministic for a given seed.
std::vector<VerifyCheck> run_verify_suite(std::uint64_t seed, Exec exec = Exec::Parallel);

} // namespace isowreath
