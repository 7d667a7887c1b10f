// Poincare-sphere geometry: Stokes vectors of the factorizing-operator modes
// and Schmidt modes, angle relations to concurrence and polarization, the
// bisector identity for the biphoton Stokes vector, and the rotation taking
// the sphere into the Schmidt frame.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "biphoton/types.hpp"

namespace biphoton {

/// Proper rotation of the Poincare sphere, row-major 3x3.
/// degenerate marks frames built for lambda_plus = lambda_minus states,
/// where the Schmidt axis is not unique and a canonical choice is returned.
struct SphereFrame {
    std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};
    bool degenerate = false;

    StokesVector apply(const StokesVector& v) const {
        const auto& r = rotation;
        return {r[0] * v.s1 + r[1] * v.s2 + r[2] * v.s3,
                r[3] * v.s1 + r[4] * v.s2 + r[5] * v.s3,
                r[6] * v.s1 + r[7] * v.s2 + r[8] * v.s3};
    }

    double orthogonality_defect() const;  // ||R R^T - I||_F
    double det() const;
};

/// Residuals of the bisector identity
/// S_biph = 2/(3 + cos theta_AB) (S_A + S_B).
struct BisectorReport {
    double theta_ab = 0.0;
    double coefficient = 0.0;       // 2/(3 + cos theta_AB)
    double residual_bisector = 0.0; // ||S_biph - coefficient (S_A + S_B)||
    double residual_norm = 0.0;     // | ||S_biph|| - P |
    bool degenerate = false;        // P below geometric tolerance: no direction
};

struct SceneVector {
    std::string name;
    StokesVector s;
    double weight = 1.0;
};

enum class SceneFrame { lab, schmidt };

/// Named Stokes vectors of one qutrit (factorizing modes, Schmidt modes
/// weighted by their eigenvalues, biphoton vector), optionally rotated into
/// the Schmidt frame, for external plotting.
struct SphereScene {
    SceneFrame frame = SceneFrame::lab;
    bool degenerate = false;
    std::vector<SceneVector> vectors;
};

/// Stokes vector of a unit Jones vector:
/// (2 Re(h* v), 2 Im(h* v), |h|^2 - |v|^2). Throws NotNormalizedError.
StokesVector stokes_of_jones(const JonesVector& j, const Tolerances& tol = {});

/// arccos of the normalized scalar product, in [0, pi].
/// Throws ZeroVectorError for vanishing inputs.
double angle_between(const StokesVector& a, const StokesVector& b);

/// C = (1 - cos theta)/(3 + cos theta) for the angle between the
/// factorizing-mode Stokes vectors. Throws OutOfRangeError outside [0, pi].
double concurrence_from_angle(double theta_ab);

/// P = 4 |cos(theta/2)| / (3 + cos theta). Throws OutOfRangeError.
double polarization_from_angle(double theta_ab);

/// Weighted sum lambda_plus S_plus + lambda_minus S_minus of the antipodal
/// Schmidt-mode Stokes vectors; the result has norm lambda_plus - lambda_minus.
/// Throws NotAntipodalError when s_plus . s_minus > -1 + geometric tolerance.
StokesVector biphoton_stokes_composition(double lambda_plus, double lambda_minus,
                                         const StokesVector& s_plus,
                                         const StokesVector& s_minus,
                                         const Tolerances& tol = {});

/// Checks that the biphoton Stokes vector lies along the bisector of the
/// factorizing-mode vectors with the closed-form coefficient.
BisectorReport bisector_check(const QutritState& q, const Tolerances& tol = {});

/// Rotation sending the plus-Schmidt-mode Stokes vector to (0,0,1) and the
/// mode-A vector into the s1 = 0, s2 > 0 half-plane.
SphereFrame schmidt_frame(const QutritState& q, const Tolerances& tol = {});

/// Scene with S_A, S_B (weight 1), S_plus/S_minus (weights lambda+-) and
/// S_biph, in the lab or Schmidt frame.
SphereScene sphere_scene(const QutritState& q, SceneFrame frame,
                         const Tolerances& tol = {});

/// CSV rendering "name,s1,s2,s3,weight" with 17-significant-digit floats.
std::string scene_to_csv(const SphereScene& scene);

}  // namespace biphoton
