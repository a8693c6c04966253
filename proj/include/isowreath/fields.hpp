#pragma once

#include "isowreath/expr.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace isowreath {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

struct Grid2 {
    double u0 = -1, v0 = -1, hu = 2.0 / 128, hv = 2.0 / 128;
    int nu = 129, nv = 129;

    Grid2() = default;
    Grid2(double u0_, double v0_, double hu_, double hv_, int nu_, int nv_);

    static Grid2 spanning(double ua, double ub, double va, double vb, int nu, int nv);

    double u(int i) const { return u0 + hu * i; }
    double v(int j) const { return v0 + hv * j; }
    double u1() const { return u(nu - 1); }
    double v1() const { return v(nv - 1); }
    std::size_t size() const { return static_cast<std::size_t>(nu) * nv; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nu + i; }
    double h() const { return std::max(hu, hv); }
    bool contains(double u, double v) const;

    // Same spacing, k nodes dropped on every side.
    Grid2 shrink(int k) const;

    bool operator==(const Grid2& o) const;
};

class Field {
public:
    struct Impl {
        virtual ~Impl() = default;
        virtual Jet2 jet(double u, double v) const = 0;
        // Default: Richardson-extrapolated central differences of jet().
        virtual Jet3 jet3(double u, double v) const;
        virtual bool analytic() const { return true; }
        virtual const Grid2* grid() const { return nullptr; }
    };

    Field() = default;
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static Field analytic(const Expr& e, ParamMap params = {});
    static Field analytic(const std::string& text, ParamMap params = {});
    static Field sampled(const Grid2& g, std::vector<double> values);
    static Field function(std::function<Jet2(double, double)> fn, bool analytic = true);
    static Field constant(double c);
    static Field combine(double a, const Field& f, double b, const Field& g);

    Jet2 jet(double u, double v) const;
    Jet3 jet3(double u, double v) const;
    double value(double u, double v) const { return jet(u, v).f; }

    // Sampled fields expose their grid; jets are only defined 2 cells inside it.
    bool is_analytic() const;
    const Grid2* grid() const;
    bool valid() const { return static_cast<bool>(impl_); }

    std::vector<double> sample(const Grid2& g) const;

    // Partial derivative fields; their jets use third derivatives of this field.
    Field du() const;
    Field dv() const;

private:
    std::shared_ptr<const Impl> impl_;
};

struct HeightField {
    Field f;
    HeightField() = default;
    explicit HeightField(Field field) : f(std::move(field)) {}
    Jet2 jet(double u, double v) const { return f.jet(u, v); }
};

struct SupportField {
    Field h;
    SupportField() = default;
    explicit SupportField(Field field) : h(std::move(field)) {}
    Jet2 jet(double u, double v) const { return h.jet(u, v); }
};

// Parametrized surface (x(u,v), y(u,v), z(u,v)).
struct ParamSurface {
    Field x, y, z;
};

// Grid region where a field delivers jets: the full grid for analytic fields,
// the 2-cell interior for sampled ones.
Grid2 jet_region(const Field& f, const Grid2& g);

Vec2 top_view(const Vec3& p);
double iso_distance(const Vec3& a, const Vec3& b);
// Isotropic angle between planes z = u1 x + v1 y + w1 and z = u2 x + v2 y + w2.
double iso_plane_angle(double u1, double v1, double u2, double v2);

} // namespace isowreath
