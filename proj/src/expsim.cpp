#include "biphoton/expsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "biphoton/core.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/poincare.hpp"
#include "biphoton/random.hpp"

namespace biphoton {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double wrap_half_turn(double angle) {
    double a = std::fmod(angle, kPi);
    if (a < 0.0) a += kPi;
    if (a >= kPi || a == 0.0) a = 0.0;
    return a;
}

// lambda+ = |c1|^2, lambda- = |c3|^2 and 2phi = arg(c3) of an aligned state.
void aligned_parameters(const QutritState& q, double tol_rec, double& lp, double& lm,
                        double& cos2phi) {
    if (std::abs(q.c2) > tol_rec) throw NotAlignedError{};
    lp = std::norm(q.c1);
    lm = std::norm(q.c3);
    cos2phi = (lm > 0.0) ? std::cos(std::arg(q.c3)) : 1.0;
}

}  // namespace

Mat2 jones_of_waveplate(const WaveplateSetting& w) {
    const double retardance = (w.kind == WaveplateKind::quarter) ? 0.5 * kPi : kPi;
    const Complex fast = std::polar(1.0, -0.5 * retardance);
    const Complex slow = std::polar(1.0, 0.5 * retardance);
    const double c = std::cos(w.axis_angle), s = std::sin(w.axis_angle);
    // R(theta) diag(fast, slow) R(-theta)
    return {fast * c * c + slow * s * s, (fast - slow) * s * c,
            (fast - slow) * s * c, fast * s * s + slow * c * c};
}

Mat2 composite_jones(const PlatePair& plates) {
    return jones_of_waveplate(plates.half) * jones_of_waveplate(plates.quarter);
}

QutritState transform_qutrit(const QutritState& q, const Mat2& u, const Tolerances& tol) {
    if ((u.adjoint() * u).frobenius_distance(Mat2::identity()) > tol.norm)
        throw NotUnitaryError{};
    const BiphotonWaveFunction wf = wave_function(q);
    // Psi' = U Psi U^T
    std::array<std::array<Complex, 2>, 2> out{};
    const std::array<std::array<Complex, 2>, 2> um{
        {{u.m00, u.m01}, {u.m10, u.m11}}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) s += um[i][k] * um[j][l] * wf.psi[k][l];
            out[i][j] = s;
        }
    return make_qutrit(out[0][0], std::sqrt(2.0) * out[0][1], out[1][1]);
}

PlatePair schmidt_aligning_plates(const QutritState& q) {
    const SchmidtDecomposition sd = schmidt_decomposition(q);

    PlatePair plates;
    plates.degenerate = sd.basis_free;

    // Quarter plate at the polarization-ellipse azimuth makes the mode linear.
    const StokesVector s = stokes_of_jones(sd.mode_plus);
    const double azimuth = 0.5 * std::atan2(s.s1, s.s3);
    plates.quarter = {WaveplateKind::quarter, wrap_half_turn(azimuth)};

    // Half plate at half the residual linear angle rotates it onto H.
    const JonesVector linear = jones_of_waveplate(plates.quarter).apply(sd.mode_plus);
    const StokesVector sl = stokes_of_jones(linear);
    const double linear_angle = 0.5 * std::atan2(sl.s1, sl.s3);
    plates.half = {WaveplateKind::half, wrap_half_turn(0.5 * linear_angle)};
    return plates;
}

CoincidenceRecord expected_rates(const QutritState& aligned, const DetectorModel& det,
                                 std::int64_t n_pairs, const Tolerances& tol) {
    double lp, lm, cos2phi;
    aligned_parameters(aligned, tol.reconstruction, lp, lm, cos2phi);
    const double n = static_cast<double>(n_pairs);
    const double eff = det.eta1 * det.eta2;
    const double dark = det.dark_rate * n;
    CoincidenceRecord rec;
    rec.r0 = eff * lp * n / 2.0 + dark;
    rec.r90 = eff * lm * n / 2.0 + dark;
    rec.r45 = eff * (1.0 + 2.0 * std::sqrt(lp * lm) * cos2phi) * n / 4.0 + dark;
    rec.n_pairs = n_pairs;
    return rec;
}

CoincidenceRecord sample_counts(const CoincidenceRecord& expected, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CoincidenceRecord rec;
    rec.r0 = static_cast<double>(poisson_sample(rng, expected.r0));
    rec.r90 = static_cast<double>(poisson_sample(rng, expected.r90));
    rec.r45 = static_cast<double>(poisson_sample(rng, expected.r45));
    rec.n_pairs = expected.n_pairs;
    return rec;
}

EstimationResult estimate_parameters(const CoincidenceRecord& rec) {
    const double total = rec.r0 + rec.r90;
    if (total <= 0.0) throw NoCountsError{};
    EstimationResult est;
    est.lambda_plus = rec.r0 / total;
    est.lambda_minus = rec.r90 / total;
    const double denom = 2.0 * std::sqrt(rec.r0 * rec.r90);
    if (denom == 0.0) {
        est.phase_undefined = true;
        est.cos_2phi = 0.0;
        return est;
    }
    const double raw = (2.0 * rec.r45 - rec.r0 - rec.r90) / denom;
    est.cos_2phi = std::clamp(raw, -1.0, 1.0);
    est.out_of_range = (raw < -1.0 || raw > 1.0);
    return est;
}

double phase_plate_delay(const PhasePlate& p) {
    if (!(std::abs(p.tilt_delta) < kPi))
        throw OutOfRangeError("phase plate tilt must satisfy |delta| < pi");
    return 2.0 * p.delta_n * p.length_l / std::cos(0.5 * p.tilt_delta);
}

QutritState apply_phase_delay(const QutritState& aligned, double delta_phi,
                              const Tolerances& tol) {
    if (std::abs(aligned.c2) > tol.reconstruction) throw NotAlignedError{};
    return make_qutrit(aligned.c1, aligned.c2,
                       aligned.c3 * std::polar(1.0, 2.0 * delta_phi));
}

TwoQubitState postselect_split(const QutritState& aligned, const Tolerances& tol) {
    if (std::abs(aligned.c2) > tol.reconstruction) throw NotAlignedError{};
    const double n = std::sqrt(std::norm(aligned.c1) + std::norm(aligned.c3));
    return {aligned.c1 / n, aligned.c3 / n};
}

std::vector<SweepPoint> phi_sweep(const QutritState& aligned, const DetectorModel& det,
                                  std::int64_t n_pairs, int steps, const Tolerances& tol) {
    std::vector<SweepPoint> sweep;
    if (steps < 1) return sweep;
    sweep.reserve(static_cast<std::size_t>(steps));
    double lp, lm, base_cos;
    aligned_parameters(aligned, tol.reconstruction, lp, lm, base_cos);
    const double n = static_cast<double>(n_pairs);
    const double eff = det.eta1 * det.eta2;
    const double dark = det.dark_rate * n;
    for (int i = 0; i < steps; ++i) {
        const double phi = kPi * static_cast<double>(i) / static_cast<double>(steps);
        SweepPoint pt;
        pt.phi = phi;
        pt.r0 = eff * lp * n / 2.0 + dark;
        pt.r90 = eff * lm * n / 2.0 + dark;
        pt.r45 = eff * (1.0 + 2.0 * std::sqrt(lp * lm) * std::cos(2.0 * phi)) * n / 4.0 + dark;
        sweep.push_back(pt);
    }
    return sweep;
}

double r45_visibility(const std::vector<SweepPoint>& sweep) {
    if (sweep.empty()) return 0.0;
    double lo = sweep.front().r45, hi = sweep.front().r45;
    for (const SweepPoint& pt : sweep) {
        lo = std::min(lo, pt.r45);
        hi = std::max(hi, pt.r45);
    }
    if (hi <= 0.0) return 0.0;
    return (hi - lo) / (2.0 * hi);
}

SimulationReport run_simulation(const SimulationOptions& opt, const Tolerances& tol) {
    SimulationReport rep;
    rep.input = opt.state;
    rep.detector = opt.detector;
    rep.n_pairs = opt.n_pairs;
    rep.seed = opt.seed;
    rep.exact = opt.exact;

    rep.plates = schmidt_aligning_plates(opt.state);
    rep.aligned = transform_qutrit(opt.state, composite_jones(rep.plates), tol);

    const SchmidtDecomposition sd = schmidt_decomposition(opt.state);
    rep.lambda_plus_true = sd.lambda_plus;
    rep.lambda_minus_true = sd.lambda_minus;
    rep.phi_true =
        (std::abs(rep.aligned.c3) > 0.0) ? 0.5 * std::arg(rep.aligned.c3) : 0.0;
    if (rep.phi_true < 0.0) rep.phi_true += kPi;

    rep.expected = expected_rates(rep.aligned, opt.detector, opt.n_pairs, tol);
    // cross-port coincidences vanish for aligned plates; dark counts still
    // land there, reported without judgement
    rep.expected_cross = opt.detector.dark_rate * static_cast<double>(opt.n_pairs);

    if (opt.exact) {
        rep.estimate = estimate_parameters(rep.expected);
    } else {
        std::mt19937_64 rng(opt.seed);
        CoincidenceRecord counts;
        counts.r0 = static_cast<double>(poisson_sample(rng, rep.expected.r0));
        counts.r90 = static_cast<double>(poisson_sample(rng, rep.expected.r90));
        counts.r45 = static_cast<double>(poisson_sample(rng, rep.expected.r45));
        counts.n_pairs = opt.n_pairs;
        rep.sampled = counts;
        rep.sampled_cross = static_cast<double>(poisson_sample(rng, rep.expected_cross));
        rep.estimate = estimate_parameters(counts);
    }
    return rep;
}

}  // namespace biphoton
