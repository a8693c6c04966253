#pragma once

#include "isowreath/fields.hpp"

#include <vector>

namespace isowreath {

// R(u, t) = c(u) + t e(u); component fields are evaluated as functions of u only.
struct RuledSurface {
    Field c[3];
    Field e[3];

    Vec3 point(double u, double t) const;
};

enum class RuledType {
    I,   // top views of the rulings envelop a curve
    II,  // top views of the rulings pass through one point
    III  // top views of the rulings are parallel
};

struct RuledFrame {
    Vec3 c, dc;   // directrix and its u-derivative
    Vec3 e, de;   // ruling direction with unit top view, and its u-derivative
    double speed; // |top view of the raw direction|
};

RuledFrame ruled_frame(const RuledSurface& r, double u);

struct StrictionData {
    RuledType type;
    double t_star = 0;     // striction point c + t_star e (unit top-view direction)
    Vec3 point{0, 0, 0};
    double rho = 0;        // pitch
    double sigma = 0;      // NaN for types II and III
    double kappa = 0;      // top-view curvature of the striction curve (type I)
};

RuledType classify_ruled(const RuledSurface& r, double u0, double u1, int samples = 64, double tol = 1e-9);
StrictionData striction(const RuledSurface& r, double u, RuledType type);
// -rho^2 / w^4 (types I, II) or -rho^2 (type III); w is the isotropic distance to the striction point.
double ruled_K(const RuledSurface& r, RuledType type, double u, double t);

// (u, t) -> R(u, t) with jets built from the component jets.
ParamSurface ruled_param_surface(const RuledSurface& r);

// F + s R over the common top view of the rulings; R must be torsal.
RuledSurface minding_family(const RuledSurface& f, const RuledSurface& torsal, double s, double u0, double u1,
                            double tol = 1e-9);

} // namespace isowreath
