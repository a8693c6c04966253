#pragma once

#include "isowreath/curvature.hpp"
#include "isowreath/fields.hpp"

#include <optional>
#include <vector>

namespace isowreath {

// Point (x, y, z) with tangent plane z = p x + q y + (z - p x - q y).
struct ContactElement {
    double x = 0, y = 0, z = 0, p = 0, q = 0;

    Vec3 point() const { return Vec3(x, y, z); }
    double offset() const { return z - p * x - q * y; }
    double operator[](int k) const;
    double max_abs() const;
};

ContactElement operator+(const ContactElement& a, const ContactElement& b);
ContactElement operator-(const ContactElement& a, const ContactElement& b);
ContactElement operator*(double s, const ContactElement& a);

// Value and first partials in (u, v) of a contact element field.
struct ContactJet {
    ContactElement e, du, dv;
};

enum class DualMap { Delta, Nu };

ContactElement delta(const ContactElement& e);
ContactElement nu(const ContactElement& e);
ContactElement rot_j(const ContactElement& e);   // rotation by +pi/2 about the z-axis
ContactElement map_l(const ContactElement& e);   // rotation by -pi/2 and z -> -z
ContactElement dual(const ContactElement& e, DualMap m);

ContactJet delta(const ContactJet& j);
ContactJet nu(const ContactJet& j);
ContactJet rot_j(const ContactJet& j);
ContactJet map_l(const ContactJet& j);
ContactJet dual(const ContactJet& j, DualMap m);

// Contact element field sampled at the nodes of a grid.
struct ContactGrid {
    Grid2 grid;
    std::vector<ContactJet> data;

    const ContactJet& at(int i, int j) const { return data[grid.index(i, j)]; }
    ContactJet& at(int i, int j) { return data[grid.index(i, j)]; }
};

ContactJet contact_jet_of_graph(const Jet2& f, double u, double v);
ContactGrid contact_grid_of_graph(const Field& f, const Grid2& g);
ContactGrid map_grid(const ContactGrid& c, ContactJet (*fn)(const ContactJet&));

// Replace the stored derivatives by 6th-order finite differences of the nodal values.
ContactGrid refresh_derivatives(const ContactGrid& c);

// p_v x_u + q_v y_u - p_u x_v - q_u y_v
double integrability_residual(const ContactJet& j);
// max of |z_u - p x_u - q y_u| and |z_v - p x_v - q y_v|
double contact_residual(const ContactJet& j);

struct DualGraph {
    ContactGrid contact;
    ParamSurface surface;              // dual surface parametrized by (u, v)
    std::optional<HeightField> graph;  // dual as a graph over its own top view
};

// Dual of a graph under delta or nu. The graph form needs K != 0 on the grid.
DualGraph dualize_graph(const HeightField& f, DualMap m, const Grid2& g);

// Dual surface of a graph as a parametrized surface (jets use third derivatives of f).
ParamSurface dual_param_surface(const HeightField& f, DualMap m);

// Surface with support function h: point (h_u, h_v, h_u u + h_v v - h).
ParamSurface surface_from_support(const SupportField& h);
Vec3 support_point(const SupportField& h, double u, double v);

// Envelope point of the planes <n(u,v), x> = d(u,v).
Vec3 envelope(const Field n[3], const Field& d, double u, double v, double tol = 1e-12);

// K = 1 / det Hess h, H = (h_uu + h_vv) / (2 det Hess h)
CurvatureSample curvature_from_support(const SupportField& h, double u, double v, double tol = 1e-14);

struct DualCurvature {
    double K, H;
};
// Curvatures of the delta-dual from those of the primal.
DualCurvature dual_curvature_rule(double K, double H, double tol = 1e-14);

} // namespace isowreath
