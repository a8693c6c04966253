#include "isowreath/discrete.hpp"

#include "isowreath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isowreath {

namespace {

double det2(const Vec2& a, const Vec2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

double sine(const Vec3& a, const Vec3& b)
{
    const double na = a.norm(), nb = b.norm();
    if (na == 0 || nb == 0)
        return 0;
    return a.cross(b).norm() / (na * nb);
}

std::string face_name(int i, int j)
{
    return "face (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

// nu images of the best-fit face planes, without the planarity precondition.
QuadNet nu_faces(const QuadNet& n)
{
    QuadNet out(n.nu - 1, n.nv - 1);
    for (int j = 0; j < out.nv; ++j)
        for (int i = 0; i < out.nu; ++i) {
            const FacePlane pl = face_plane(n.face(i, j));
            out.at(i, j) = Vec3(pl.q, -pl.p, pl.d);
        }
    return out;
}

} // namespace

QuadNet::QuadNet(int nu_, int nv_) : nu(nu_), nv(nv_)
{
    if (nu < 2 || nv < 2)
        throw PreconditionError("QuadNet needs at least 2 x 2 vertices");
    p.assign(static_cast<std::size_t>(nu) * nv, Vec3::Zero());
}

std::array<Vec3, 4> QuadNet::face(int i, int j) const
{
    return {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
}

Quad2 top_quad(const std::array<Vec3, 4>& f)
{
    return {f[0].head<2>(), f[1].head<2>(), f[2].head<2>(), f[3].head<2>()};
}

double face_planarity(const std::array<Vec3, 4>& f)
{
    const Vec3 e1 = f[1] - f[0], e2 = f[3] - f[0], e3 = f[2] - f[0];
    const double s = e1.norm() * e2.norm() * e3.norm();
    return s == 0 ? 0 : std::fabs(e1.dot(e2.cross(e3))) / s;
}

QNetReport is_qnet(const QuadNet& n, double tol, Exec exec)
{
    QNetReport r;
    r.residual.resize(n.face_count());
    for_each_index(n.face_count(), exec, [&](std::size_t k) {
        const int i = static_cast<int>(k % n.faces_u()), j = static_cast<int>(k / n.faces_u());
        r.residual[k] = face_planarity(n.face(i, j));
    });
    r.max_residual = *std::max_element(r.residual.begin(), r.residual.end());
    r.planar = r.max_residual <= tol;
    return r;
}

FacePlane face_plane(const std::array<Vec3, 4>& f)
{
    Eigen::Matrix<double, 4, 3> A;
    Eigen::Vector4d z;
    const Vec2 c = 0.25 * (f[0] + f[1] + f[2] + f[3]).head<2>();
    for (int k = 0; k < 4; ++k) {
        A.row(k) << f[k].x() - c.x(), f[k].y() - c.y(), 1;
        z(k) = f[k].z();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (!(s(2) > 1e-12 * s(0)))
        throw DegeneracyError("face plane: top view of the face is degenerate", s(2));
    const Vec3 x = svd.solve(z);
    FacePlane pl;
    pl.p = x(0);
    pl.q = x(1);
    pl.d = x(2) - pl.p * c.x() - pl.q * c.y();
    for (int k = 0; k < 4; ++k)
        pl.residual = std::max(pl.residual, std::fabs(pl.p * f[k].x() + pl.q * f[k].y() + pl.d - f[k].z()));
    return pl;
}

double mixed_area(const Quad2& P, const Quad2& Q)
{
    double s = 0;
    for (int k = 0; k < 4; ++k) {
        const int l = (k + 1) % 4;
        s += det2(P[k], Q[l]) + det2(Q[k], P[l]);
    }
    return 0.25 * s;
}

KoenigsReport koenigs_check(const QuadNet& A, const QuadNet& B, double tol, Exec exec)
{
    if (A.nu != B.nu || A.nv != B.nv)
        throw PreconditionError("koenigs_check: nets differ in combinatorics");
    KoenigsReport r;
    r.face_residual.resize(A.face_count());
    std::vector<double> edge(A.face_count()), diag(A.face_count());
    for_each_index(A.face_count(), exec, [&](std::size_t k) {
        const int i = static_cast<int>(k % A.faces_u()), j = static_cast<int>(k / A.faces_u());
        const auto a = A.face(i, j), b = B.face(i, j);
        double e = 0;
        for (int m = 0; m < 4; ++m) {
            const int l = (m + 1) % 4;
            e = std::max(e, sine(a[l] - a[m], b[l] - b[m]));
        }
        const double d = std::max(sine(a[2] - a[0], b[3] - b[1]), sine(a[3] - a[1], b[2] - b[0]));
        edge[k] = e;
        diag[k] = d;
        r.face_residual[k] = std::max(e, d);
    });
    r.edge_residual = *std::max_element(edge.begin(), edge.end());
    r.diagonal_residual = *std::max_element(diag.begin(), diag.end());
    r.dual = r.edge_residual <= tol && r.diagonal_residual <= tol;
    return r;
}

namespace {

// Dual face with D_0 = 0 and unit scale on edge 0: edge scales from closure plus
// parallelism of D_2 - D_0 with a_3 - a_1.
std::array<Vec3, 4> canonical_dual(const std::array<Vec3, 4>& a, int fi, int fj, std::array<double, 4>& lambda)
{
    Vec3 e[4];
    for (int k = 0; k < 4; ++k)
        e[k] = a[(k + 1) % 4] - a[k];
    const Vec3 d = a[3] - a[1];
    auto cross_matrix = [](const Vec3& w) {
        Mat3 m;
        m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
        return m;
    };
    Eigen::Matrix<double, 6, 3> M = Eigen::Matrix<double, 6, 3>::Zero();
    Eigen::Matrix<double, 6, 1> rhs;
    M.block<3, 1>(0, 0) = e[1];
    M.block<3, 1>(0, 1) = e[2];
    M.block<3, 1>(0, 2) = e[3];
    rhs.head<3>() = -e[0];
    // (e0 + l1 e1) x d = 0, written as -d x (.)
    const Mat3 Cd = -cross_matrix(d);
    M.block<3, 1>(3, 0) = Cd * e[1];
    rhs.tail<3>() = -(Cd * e[0]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (!(s(2) > 1e-10 * s(0)))
        throw DegeneracyError("koenigs_dualize: degenerate " + face_name(fi, fj), s(2));
    const Vec3 l = svd.solve(rhs);
    lambda = {1.0, l(0), l(1), l(2)};
    std::array<Vec3, 4> D;
    D[0] = Vec3::Zero();
    for (int k = 0; k < 3; ++k)
        D[k + 1] = D[k] + lambda[k] * e[k];
    return D;
}

} // namespace

QuadNet koenigs_dualize(const QuadNet& A, const Vec3& seed, double tol)
{
    const QNetReport q = is_qnet(A, tol, Exec::Serial);
    if (!q.planar)
        throw PreconditionError("koenigs_dualize: input is not a Q-net (planarity " +
                                std::to_string(q.max_residual) + ")");
    QuadNet B(A.nu, A.nv);
    B.at(0, 0) = seed;
    for (int j = 0; j < A.faces_v(); ++j)
        for (int i = 0; i < A.faces_u(); ++i) {
            const auto a = A.face(i, j);
            std::array<double, 4> lambda;
            const auto D = canonical_dual(a, i, j, lambda);
            // Known edge: edge 0 from the face below (or the seed), edge 3 in row 0.
            int k0 = 0;
            Vec3 b0 = B.at(i, j), b1;
            if (j == 0 && i == 0) {
                b1 = b0 + (a[1] - a[0]);
            } else if (j == 0) {
                k0 = 3;
                b0 = B.at(i, j + 1);
                b1 = B.at(i, j);
            } else {
                b1 = B.at(i + 1, j);
            }
            const int k1 = (k0 + 1) % 4;
            const Vec3 ek = a[k1] - a[k0];
            const Vec3 dk = D[k1] - D[k0];
            if (!(dk.norm() > 1e-12 * ek.norm()))
                throw DegeneracyError("koenigs_dualize: vanishing dual edge in " + face_name(i, j), dk.norm());
            const double s = (b1 - b0).dot(dk) / dk.squaredNorm();
            std::array<Vec3, 4> b;
            for (int m = 0; m < 4; ++m)
                b[m] = b0 + s * (D[m] - D[k0]);
            if (i > 0 && j > 0) {
                const double scale = std::max((b[1] - b[0]).norm(), (b[3] - b[0]).norm());
                const double res = (b[3] - B.at(i, j + 1)).norm();
                if (res > tol * (1 + scale))
                    throw PreconditionError("koenigs_dualize: not a Koenigs net, inconsistency " +
                                            std::to_string(res) + " at " + face_name(i, j));
            }
            B.at(i + 1, j) = b[1];
            B.at(i + 1, j + 1) = b[2];
            if (i == 0 || j == 0)
                B.at(i, j + 1) = b[3];
        }
    return B;
}

double homothety_residual(const QuadNet& A, const QuadNet& B)
{
    if (A.p.size() != B.p.size())
        throw PreconditionError("homothety_residual: nets differ in size");
    Vec3 ca = Vec3::Zero(), cb = Vec3::Zero();
    for (std::size_t k = 0; k < A.p.size(); ++k) {
        ca += A.p[k];
        cb += B.p[k];
    }
    ca /= static_cast<double>(A.p.size());
    cb /= static_cast<double>(B.p.size());
    double num = 0, den = 0;
    for (std::size_t k = 0; k < A.p.size(); ++k) {
        num += (A.p[k] - ca).dot(B.p[k] - cb);
        den += (A.p[k] - ca).squaredNorm();
    }
    const double s = den > 0 ? num / den : 0;
    double r = 0;
    for (std::size_t k = 0; k < A.p.size(); ++k)
        r = std::max(r, ((B.p[k] - cb) - s * (A.p[k] - ca)).cwiseAbs().maxCoeff());
    return r;
}

QuadNet net_dual_nu(const QuadNet& n, double tol)
{
    if (n.nu < 2 || n.nv < 2)
        throw PreconditionError("net_dual_nu: net has no faces");
    for (int j = 0; j < n.faces_v(); ++j)
        for (int i = 0; i < n.faces_u(); ++i) {
            const double r = face_planarity(n.face(i, j));
            if (r > tol)
                throw PreconditionError("net_dual_nu: non-planar " + face_name(i, j) + " (residual " +
                                        std::to_string(r) + ")");
        }
    return nu_faces(n);
}

FacePlane nu_plane_of_point(const Vec3& a)
{
    FacePlane pl;
    pl.p = -a.y();
    pl.q = a.x();
    pl.d = a.z();
    return pl;
}

FlexFitReport discrete_flex_fit(const QuadNet& F, const QuadNet& V, double tol, Exec exec)
{
    if (F.nu != V.nu || F.nv != V.nv)
        throw PreconditionError("discrete_flex_fit: nets differ in combinatorics");
    FlexFitReport r;
    QuadNet LV(V.nu, V.nv);
    for (std::size_t k = 0; k < V.p.size(); ++k) {
        LV.p[k] = Vec3(V.p[k].y(), -V.p[k].x(), -V.p[k].z());
        r.topview_residual =
            std::max(r.topview_residual, (LV.p[k].head<2>() - F.p[k].head<2>()).cwiseAbs().maxCoeff());
    }

    r.face_fit.resize(F.face_count());
    std::vector<double> vplan(F.face_count());
    for_each_index(F.face_count(), exec, [&](std::size_t k) {
        const int i = static_cast<int>(k % F.faces_u()), j = static_cast<int>(k / F.faces_u());
        const auto f = F.face(i, j), v = V.face(i, j);
        // Unknowns (D1, D2, D3, c1, c2, c3); V = D + T F with T = [[0, c3, 0], [-c3, 0, 0], [c1, c2, 0]].
        Eigen::Matrix<double, 12, 6> M = Eigen::Matrix<double, 12, 6>::Zero();
        Eigen::Matrix<double, 12, 1> rhs;
        for (int m = 0; m < 4; ++m) {
            M(3 * m, 0) = 1;
            M(3 * m, 5) = f[m].y();
            M(3 * m + 1, 1) = 1;
            M(3 * m + 1, 5) = -f[m].x();
            M(3 * m + 2, 2) = 1;
            M(3 * m + 2, 3) = f[m].x();
            M(3 * m + 2, 4) = f[m].y();
            rhs.segment<3>(3 * m) = v[m];
        }
        const Eigen::Matrix<double, 6, 1> x = M.colPivHouseholderQr().solve(rhs);
        r.face_fit[k] = (M * x - rhs).cwiseAbs().maxCoeff();
        vplan[k] = face_planarity(v);
    });
    r.max_fit_residual = *std::max_element(r.face_fit.begin(), r.face_fit.end());
    r.v_planarity = *std::max_element(vplan.begin(), vplan.end());

    if (F.nu >= 3 && F.nv >= 3) {
        const QuadNet LB = nu_faces(F), Cb = nu_faces(LV);
        r.face_mixed.resize(LB.face_count());
        for_each_index(LB.face_count(), exec, [&](std::size_t k) {
            const int i = static_cast<int>(k % LB.faces_u()), j = static_cast<int>(k / LB.faces_u());
            r.face_mixed[k] = std::fabs(mixed_area(top_quad(LB.face(i, j)), top_quad(Cb.face(i, j))));
        });
        r.max_mixed_area = *std::max_element(r.face_mixed.begin(), r.face_mixed.end());
    }
    r.flexible = r.topview_residual <= tol && r.max_mixed_area <= tol && r.max_fit_residual <= tol;
    return r;
}

std::vector<MindingStep> minding_steps(const std::vector<Ruling>& r)
{
    std::vector<MindingStep> out;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        const Vec3 E0 = r[k].dir / r[k].dir.head<2>().norm(), E1 = r[k + 1].dir / r[k + 1].dir.head<2>().norm();
        const Vec2 e0 = E0.head<2>(), e1 = E1.head<2>();
        const Vec2 dp = (r[k + 1].point - r[k].point).head<2>();
        const double det = det2(e0, e1);
        if (!(std::fabs(det) > 1e-12))
            throw DegeneracyError("minding_steps: parallel top views of consecutive rulings", det);
        const double s = det2(dp, e1) / det, t = det2(dp, e0) / det;
        MindingStep m;
        m.d = (r[k + 1].point.z() + t * E1.z()) - (r[k].point.z() + s * E0.z());
        m.phi = std::atan2(det, e0.dot(e1));
        m.rho = m.d / m.phi;
        m.w = s;
        out.push_back(m);
    }
    return out;
}

std::vector<Ruling> discrete_minding_shear(const std::vector<Ruling>& r, const std::vector<double>& lambda)
{
    if (r.size() < 2 || lambda.size() + 1 != r.size())
        throw PreconditionError("discrete_minding_shear: need one shear coefficient per step");
    std::vector<Ruling> out = r;
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
        const Vec2 e = out[k].dir.head<2>().normalized();
        const Vec2 n(e.y(), -e.x());
        const Vec2 o = out[k].point.head<2>();
        for (std::size_t j = k + 1; j < out.size(); ++j) {
            out[j].point.z() += lambda[k] * n.dot(out[j].point.head<2>() - o);
            out[j].dir.z() += lambda[k] * n.dot(out[j].dir.head<2>());
        }
    }
    return out;
}

double discrete_ruled_K(const MindingStep& s, double t)
{
    const double w = t - s.w;
    if (w == 0)
        throw DegeneracyError("discrete_ruled_K: at the striction point", 0);
    return -s.rho * s.rho / (w * w * w * w);
}

} // namespace isowreath
