// Canonical JSON/CSV serialization of the value types and the assembled
// reports consumed by the CLI. Field order is fixed (insertion order) and
// doubles use the shortest round-trip representation, so equal inputs
// produce byte-identical documents.

#pragma once

#include <string>

#include "json.hpp"

#include "biphoton/expsim.hpp"
#include "biphoton/poincare.hpp"
#include "biphoton/types.hpp"

namespace biphoton {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);                   // {"re": ..., "im": ...}
Json to_json(const QutritState& q);        // {"c1": ..., "c2": ..., "c3": ...}
Json to_json(const JonesVector& j);        // {"h": ..., "v": ...}
Json to_json(const StokesVector& s);       // {"s1": ..., "s2": ..., "s3": ...}
Json to_json(const PolynomialRoot& r);     // complex or {"at_infinity": true}
Json to_json(const FactorizationResult& f);
Json to_json(const SchmidtDecomposition& sd);
Json to_json(const CoincidenceRecord& rec);
Json to_json(const EstimationResult& est);
Json to_json(const SphereScene& scene);
Json to_json(const SimulationReport& rep);

/// Parses the canonical state document and validates it through make_qutrit.
QutritState qutrit_from_json(const Json& j);

/// Residuals of every consistency route for one state, all of which must
/// stay below epsilon_rec for a healthy report.
struct AnalysisResiduals {
    double schmidt_reconstruction = 0.0;
    double factorization_reconstruction = 0.0;
    double stokes_norm_vs_polarization = 0.0;
    double commutator_vs_schmidt = 0.0;   // | |<a|b>| - sqrt((1-C)/(1+C)) |
    double mode_orthogonality = 0.0;      // |<mode+|mode->|
    double oracle_mode_overlap = 0.0;     // 1 - |<mode+|eigenvector+>| (0 when basis-free)
};

AnalysisResiduals analysis_residuals(const QutritState& q);

/// Full analysis document: canonical state, measures, factorization and
/// Schmidt summaries, biphoton Stokes vector and the residuals above.
Json analysis_report(const QutritState& q, double epsilon_rec);

/// CSV of a phi sweep: "phi,r0,r90,r45" rows at 17 significant digits.
std::string sweep_to_csv(const std::vector<SweepPoint>& sweep);

}  // namespace biphoton
