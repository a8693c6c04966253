#include "isowreath/lineint.hpp"

#include "isowreath/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace isowreath {

namespace {

// Lagrange basis polynomial s on integer nodes 0..m-1, evaluated at x.
double basis(int s, int m, double x)
{
    double r = 1;
    for (int k = 0; k < m; ++k)
        if (k != s)
            r *= (x - k) / double(s - k);
    return r;
}

double basis_deriv(int s, int m, double x)
{
    double sum = 0;
    for (int skip = 0; skip < m; ++skip) {
        if (skip == s)
            continue;
        double r = 1.0 / double(s - skip);
        for (int k = 0; k < m; ++k)
            if (k != s && k != skip)
                r *= (x - k) / double(s - k);
        sum += r;
    }
    return sum;
}

// Weights of interval [a, a+1] in an m-node window; 3-point Gauss is exact up to degree 5.
std::vector<double> interval_weights(int m, int a)
{
    static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    static const double gw[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
    std::vector<double> w(m, 0.0);
    for (int s = 0; s < m; ++s)
        for (int q = 0; q < 3; ++q)
            w[s] += 0.5 * gw[q] * basis(s, m, a + 0.5 + 0.5 * gx[q]);
    return w;
}

} // namespace

std::vector<double> cumulative_integral(const std::vector<double>& f, double h)
{
    const int n = static_cast<int>(f.size());
    std::vector<double> out(n, 0.0);
    if (n < 2)
        return out;
    const int m = std::min(n, 6);
    std::vector<std::vector<double>> table(m - 1);
    for (int a = 0; a < m - 1; ++a)
        table[a] = interval_weights(m, a);
    for (int k = 0; k + 1 < n; ++k) {
        const int start = std::clamp(k - (m / 2 - 1), 0, n - m);
        const auto& w = table[k - start];
        double s = 0;
        for (int q = 0; q < m; ++q)
            s += w[q] * f[start + q];
        out[k + 1] = out[k] + h * s;
    }
    return out;
}

std::vector<double> line_derivative(const std::vector<double>& f, double h)
{
    const int n = static_cast<int>(f.size());
    if (n < 2)
        throw PreconditionError("line_derivative needs at least 2 samples");
    const int m = std::min(n, 7);
    std::vector<std::vector<double>> table(m);
    for (int a = 0; a < m; ++a) {
        table[a].resize(m);
        for (int s = 0; s < m; ++s)
            table[a][s] = basis_deriv(s, m, a);
    }
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        const int start = std::clamp(k - m / 2, 0, n - m);
        const auto& w = table[k - start];
        double s = 0;
        for (int q = 0; q < m; ++q)
            s += w[q] * f[start + q];
        out[k] = s / h;
    }
    return out;
}

GradientIntegral integrate_gradient(const Grid2& g, const std::vector<double>& gu,
                                    const std::vector<double>& gv)
{
    if (gu.size() != g.size() || gv.size() != g.size())
        throw PreconditionError("integrate_gradient: sample count does not match grid");
    auto row = [&](const std::vector<double>& a, int j) {
        std::vector<double> r(g.nu);
        for (int i = 0; i < g.nu; ++i)
            r[i] = a[g.index(i, j)];
        return r;
    };
    auto col = [&](const std::vector<double>& a, int i) {
        std::vector<double> c(g.nv);
        for (int j = 0; j < g.nv; ++j)
            c[j] = a[g.index(i, j)];
        return c;
    };

    GradientIntegral out;
    out.z.assign(g.size(), 0.0);
    const std::vector<double> r0 = cumulative_integral(row(gu, 0), g.hu);
    for (int i = 0; i < g.nu; ++i) {
        const std::vector<double> c = cumulative_integral(col(gv, i), g.hv);
        for (int j = 0; j < g.nv; ++j)
            out.z[g.index(i, j)] = r0[i] + c[j];
    }

    const std::vector<double> c0 = cumulative_integral(col(gv, 0), g.hv);
    double closure = 0;
    for (int j = 0; j < g.nv; ++j) {
        const std::vector<double> r = cumulative_integral(row(gu, j), g.hu);
        for (int i = 0; i < g.nu; ++i)
            closure = std::max(closure, std::fabs(c0[j] + r[i] - out.z[g.index(i, j)]));
    }
    out.closure = closure;
    return out;
}

std::vector<double> grid_du(const Grid2& g, const std::vector<double>& f)
{
    std::vector<double> out(g.size());
    std::vector<double> r(g.nu);
    for (int j = 0; j < g.nv; ++j) {
        for (int i = 0; i < g.nu; ++i)
            r[i] = f[g.index(i, j)];
        const std::vector<double> d = line_derivative(r, g.hu);
        for (int i = 0; i < g.nu; ++i)
            out[g.index(i, j)] = d[i];
    }
    return out;
}

std::vector<double> grid_dv(const Grid2& g, const std::vector<double>& f)
{
    std::vector<double> out(g.size());
    std::vector<double> c(g.nv);
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nv; ++j)
            c[j] = f[g.index(i, j)];
        const std::vector<double> d = line_derivative(c, g.hv);
        for (int j = 0; j < g.nv; ++j)
            out[g.index(i, j)] = d[j];
    }
    return out;
}

} // namespace isowreath
