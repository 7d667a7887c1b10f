#include "biphoton/report.hpp"

#include <cmath>
#include <cstdio>

#include "biphoton/core.hpp"
#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const QutritState& q) {
    return Json{{"c1", to_json(q.c1)}, {"c2", to_json(q.c2)}, {"c3", to_json(q.c3)}};
}

Json to_json(const JonesVector& j) {
    return Json{{"h", to_json(j.h)}, {"v", to_json(j.v)}};
}

Json to_json(const StokesVector& s) {
    return Json{{"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}};
}

Json to_json(const PolynomialRoot& r) {
    if (r.at_infinity) return Json{{"at_infinity", true}};
    return to_json(r.value);
}

Json to_json(const FactorizationResult& f) {
    return Json{{"x_a", to_json(f.x_a)},       {"x_b", to_json(f.x_b)},
                {"phi0", f.phi0},              {"mode_a", to_json(f.mode_a)},
                {"mode_b", to_json(f.mode_b)}, {"commutator", f.commutator},
                {"norm_n", f.norm_n}};
}

Json to_json(const SchmidtDecomposition& sd) {
    return Json{{"lambda_plus", sd.lambda_plus},
                {"lambda_minus", sd.lambda_minus},
                {"mode_plus", to_json(sd.mode_plus)},
                {"mode_minus", to_json(sd.mode_minus)},
                {"phi", sd.phi},
                {"basis_free", sd.basis_free}};
}

Json to_json(const CoincidenceRecord& rec) {
    return Json{{"r0", rec.r0}, {"r90", rec.r90}, {"r45", rec.r45},
                {"n_pairs", rec.n_pairs}};
}

Json to_json(const EstimationResult& est) {
    return Json{{"lambda_plus", est.lambda_plus},
                {"lambda_minus", est.lambda_minus},
                {"cos_2phi", est.cos_2phi},
                {"phase_undefined", est.phase_undefined},
                {"cos_2phi_out_of_range", est.out_of_range}};
}

Json to_json(const SphereScene& scene) {
    Json vectors = Json::array();
    for (const SceneVector& v : scene.vectors) {
        Json entry{{"name", v.name}};
        entry["s1"] = v.s.s1;
        entry["s2"] = v.s.s2;
        entry["s3"] = v.s.s3;
        entry["weight"] = v.weight;
        vectors.push_back(entry);
    }
    return Json{{"frame", scene.frame == SceneFrame::lab ? "lab" : "schmidt"},
                {"degenerate", scene.degenerate},
                {"vectors", vectors}};
}

Json to_json(const SimulationReport& rep) {
    Json plates{
        {"quarter_axis", rep.plates.quarter.axis_angle},
        {"half_axis", rep.plates.half.axis_angle},
        {"degenerate", rep.plates.degenerate},
    };
    Json j{{"input_state", to_json(rep.input)},
           {"plates", plates},
           {"aligned_state", to_json(rep.aligned)},
           {"true_parameters",
            Json{{"lambda_plus", rep.lambda_plus_true},
                 {"lambda_minus", rep.lambda_minus_true},
                 {"phi", rep.phi_true}}},
           {"detector",
            Json{{"eta1", rep.detector.eta1},
                 {"eta2", rep.detector.eta2},
                 {"dark_rate", rep.detector.dark_rate}}},
           {"n_pairs", rep.n_pairs},
           {"seed", rep.seed},
           {"exact", rep.exact},
           {"expected", to_json(rep.expected)},
           {"expected_cross", rep.expected_cross}};
    j["sampled"] = rep.sampled ? to_json(*rep.sampled) : Json(nullptr);
    j["sampled_cross"] = rep.sampled_cross ? Json(*rep.sampled_cross) : Json(nullptr);
    j["estimate"] = to_json(rep.estimate);
    return j;
}

QutritState qutrit_from_json(const Json& j) {
    return make_qutrit(complex_from_json(j.at("c1")), complex_from_json(j.at("c2")),
                       complex_from_json(j.at("c3")));
}

AnalysisResiduals analysis_residuals(const QutritState& q) {
    const BiphotonWaveFunction wf = wave_function(q);
    const FactorizationResult f = factorize(q);
    const SchmidtDecomposition sd = schmidt_decomposition(q);
    const double c = concurrence(q);

    AnalysisResiduals r;
    r.schmidt_reconstruction = residual_up_to_phase(wf, reconstruct(sd));
    r.factorization_reconstruction = residual_up_to_phase(wf, reconstruct(f));
    r.stokes_norm_vs_polarization =
        std::abs(stokes_vector(q).norm() - degree_of_polarization(q));
    r.commutator_vs_schmidt = std::abs(f.commutator - std::sqrt((1.0 - c) / (1.0 + c)));
    r.mode_orthogonality = std::abs(inner(sd.mode_plus, sd.mode_minus));
    if (!sd.basis_free) {
        const EigenDecomposition e = eigen_oracle(reduced_density(q));
        r.oracle_mode_overlap = 1.0 - std::abs(inner(sd.mode_plus, e.vectors[0]));
    }
    return r;
}

Json analysis_report(const QutritState& q, double epsilon_rec) {
    const auto [lp, lm] = schmidt_eigenvalues(q);
    const auto [k, entropy] = schmidt_k_and_entropy(q);
    const AnalysisResiduals res = analysis_residuals(q);

    Json residuals{{"schmidt_reconstruction", res.schmidt_reconstruction},
                   {"factorization_reconstruction", res.factorization_reconstruction},
                   {"stokes_norm_vs_polarization", res.stokes_norm_vs_polarization},
                   {"commutator_vs_schmidt", res.commutator_vs_schmidt},
                   {"mode_orthogonality", res.mode_orthogonality},
                   {"oracle_mode_overlap", res.oracle_mode_overlap}};
    const bool ok = res.schmidt_reconstruction < epsilon_rec &&
                    res.factorization_reconstruction < epsilon_rec &&
                    res.stokes_norm_vs_polarization < epsilon_rec &&
                    res.commutator_vs_schmidt < epsilon_rec &&
                    res.mode_orthogonality < epsilon_rec &&
                    res.oracle_mode_overlap < epsilon_rec;

    return Json{{"state", to_json(q)},
                {"concurrence", concurrence(q)},
                {"polarization", degree_of_polarization(q)},
                {"lambda_plus", lp},
                {"lambda_minus", lm},
                {"schmidt_k", k},
                {"entropy", entropy},
                {"stokes_biphoton", to_json(stokes_vector(q))},
                {"factorization", to_json(factorize(q))},
                {"schmidt", to_json(schmidt_decomposition(q))},
                {"residuals", residuals},
                {"residuals_ok", ok},
                {"epsilon_rec", epsilon_rec}};
}

std::string sweep_to_csv(const std::vector<SweepPoint>& sweep) {
    std::string out = "phi,r0,r90,r45\n";
    char row[192];
    for (const SweepPoint& pt : sweep) {
        std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.17g\n", pt.phi, pt.r0,
                      pt.r90, pt.r45);
        out += row;
    }
    return out;
}

}  // namespace biphoton
