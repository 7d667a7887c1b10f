#include "biphoton/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "biphoton/core.hpp"
#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

Vec3 to_vec(const StokesVector& s) { return {s.s1, s.s2, s.s3}; }

Vec3 sub(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 scale(double c, Vec3 a) { return {c * a.x, c * a.y, c * a.z}; }
double vdot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 vcross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double vnorm(Vec3 a) { return std::sqrt(vdot(a, a)); }
Vec3 vnormalize(Vec3 a) { return scale(1.0 / vnorm(a), a); }

}  // namespace

double SphereFrame::orthogonality_defect() const {
    const auto& r = rotation;
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double e = r[3 * i] * r[3 * j] + r[3 * i + 1] * r[3 * j + 1] +
                       r[3 * i + 2] * r[3 * j + 2];
            if (i == j) e -= 1.0;
            d2 += e * e;
        }
    }
    return std::sqrt(d2);
}

double SphereFrame::det() const {
    const auto& r = rotation;
    return r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) +
           r[2] * (r[3] * r[7] - r[4] * r[6]);
}

StokesVector stokes_of_jones(const JonesVector& j, const Tolerances& tol) {
    if (std::abs(j.norm() - 1.0) > tol.norm) throw NotNormalizedError{};
    const Complex hv = std::conj(j.h) * j.v;
    return {2.0 * hv.real(), 2.0 * hv.imag(), std::norm(j.h) - std::norm(j.v)};
}

double angle_between(const StokesVector& a, const StokesVector& b) {
    const double na = a.norm(), nb = b.norm();
    if (na < 1e-15 || nb < 1e-15) throw ZeroVectorError{};
    const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
    return std::acos(c);
}

double concurrence_from_angle(double theta_ab) {
    if (!(theta_ab >= 0.0 && theta_ab <= kPi))
        throw OutOfRangeError("theta_ab must lie in [0, pi]");
    const double c = std::cos(theta_ab);
    return (1.0 - c) / (3.0 + c);
}

double polarization_from_angle(double theta_ab) {
    if (!(theta_ab >= 0.0 && theta_ab <= kPi))
        throw OutOfRangeError("theta_ab must lie in [0, pi]");
    return 4.0 * std::abs(std::cos(0.5 * theta_ab)) / (3.0 + std::cos(theta_ab));
}

StokesVector biphoton_stokes_composition(double lambda_plus, double lambda_minus,
                                         const StokesVector& s_plus,
                                         const StokesVector& s_minus,
                                         const Tolerances& tol) {
    if (dot(s_plus, s_minus) > -1.0 + tol.geometric) throw NotAntipodalError{};
    return lambda_plus * s_plus + lambda_minus * s_minus;
}

BisectorReport bisector_check(const QutritState& q, const Tolerances& tol) {
    BisectorReport rep;
    const double p = degree_of_polarization(q);
    const StokesVector s_biph = stokes_vector(q);
    rep.residual_norm = std::abs(s_biph.norm() - p);
    if (p < tol.geometric) {
        rep.degenerate = true;
        return rep;
    }
    const FactorizationResult f = factorize(q);
    const StokesVector sa = stokes_of_jones(f.mode_a, tol);
    const StokesVector sb = stokes_of_jones(f.mode_b, tol);
    rep.theta_ab = angle_between(sa, sb);
    rep.coefficient = 2.0 / (3.0 + std::cos(rep.theta_ab));
    rep.residual_bisector = (s_biph - rep.coefficient * (sa + sb)).norm();
    return rep;
}

SphereFrame schmidt_frame(const QutritState& q, const Tolerances& tol) {
    const SchmidtDecomposition sd = schmidt_decomposition(q);
    const FactorizationResult f = factorize(q);

    const Vec3 axis = vnormalize(to_vec(stokes_of_jones(sd.mode_plus, tol)));
    const Vec3 sa = to_vec(stokes_of_jones(f.mode_a, tol));

    // e2 along the part of S_A perpendicular to the Schmidt axis, so the
    // rotated mode-A vector lands in the s2 > 0 half-plane.
    Vec3 perp = sub(sa, scale(vdot(sa, axis), axis));
    if (vnorm(perp) < tol.geometric) {
        // disentangled state: S_A is parallel to the axis, complete the frame
        // from a fixed reference direction instead
        const Vec3 ref = (std::abs(axis.y) < 0.9) ? Vec3{0.0, 1.0, 0.0} : Vec3{1.0, 0.0, 0.0};
        perp = sub(ref, scale(vdot(ref, axis), axis));
    }
    const Vec3 e2 = vnormalize(perp);
    const Vec3 e1 = vcross(e2, axis);

    SphereFrame frame;
    frame.rotation = {e1.x, e1.y, e1.z, e2.x, e2.y, e2.z, axis.x, axis.y, axis.z};
    frame.degenerate = sd.basis_free;
    return frame;
}

SphereScene sphere_scene(const QutritState& q, SceneFrame which, const Tolerances& tol) {
    const FactorizationResult f = factorize(q);
    const SchmidtDecomposition sd = schmidt_decomposition(q);

    SphereScene scene;
    scene.frame = which;
    scene.degenerate = sd.basis_free;
    scene.vectors = {
        {"S_A", stokes_of_jones(f.mode_a, tol), 1.0},
        {"S_B", stokes_of_jones(f.mode_b, tol), 1.0},
        {"S_plus", stokes_of_jones(sd.mode_plus, tol), sd.lambda_plus},
        {"S_minus", stokes_of_jones(sd.mode_minus, tol), sd.lambda_minus},
        {"S_biph", stokes_vector(q), 1.0},
    };
    if (which == SceneFrame::schmidt) {
        const SphereFrame frame = schmidt_frame(q, tol);
        for (SceneVector& v : scene.vectors) v.s = frame.apply(v.s);
    }
    return scene;
}

std::string scene_to_csv(const SphereScene& scene) {
    std::string out = "name,s1,s2,s3,weight\n";
    char row[256];
    for (const SceneVector& v : scene.vectors) {
        std::snprintf(row, sizeof(row), "%s,%.17g,%.17g,%.17g,%.17g\n", v.name.c_str(),
                      v.s.s1, v.s.s2, v.s.s3, v.weight);
        out += row;
    }
    return out;
}

}  // namespace biphoton
