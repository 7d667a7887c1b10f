// Simulation of the coincidence-counting measurement of the Schmidt
// parameters: waveplate alignment of the Schmidt modes with the H/V axes,
// expected coincidence rates at PBS orientations 0/90/45 degrees, Poisson
// sampling, and the estimator recovering lambda+- and cos(2 phi) from counts.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "biphoton/types.hpp"

namespace biphoton {

enum class WaveplateKind { quarter, half };

/// Retarder with its fast axis at axis_angle (radians, period pi).
struct WaveplateSetting {
    WaveplateKind kind = WaveplateKind::quarter;
    double axis_angle = 0.0;
};

/// Quarter + half plate pair, applied in that order (quarter first).
/// degenerate marks lambda_plus = lambda_minus inputs, where any Schmidt
/// basis is valid and the plates align the canonical one.
struct PlatePair {
    WaveplateSetting quarter{WaveplateKind::quarter, 0.0};
    WaveplateSetting half{WaveplateKind::half, 0.0};
    bool degenerate = false;
};

/// Detector pair efficiencies and a per-trial dark-count rate that adds an
/// independent Poisson background to every coincidence channel.
struct DetectorModel {
    double eta1 = 1.0;
    double eta2 = 1.0;
    double dark_rate = 0.0;
};

/// Coincidence counts at PBS orientations 0, 90 and 45 degrees for n_pairs
/// input pairs. Values are real for expected rates and integral for sampled
/// counts (exact in a double up to 2^53).
struct CoincidenceRecord {
    double r0 = 0.0;
    double r90 = 0.0;
    double r45 = 0.0;
    std::int64_t n_pairs = 0;
};

/// Tilted birefringent plate pair of thickness length_l (in the
/// wavelength-normalized units of the phase convention), birefringence
/// delta_n, mutual tilt tilt_delta with |tilt_delta| < pi.
struct PhasePlate {
    double delta_n = 0.0;
    double length_l = 0.0;
    double tilt_delta = 0.0;
};

/// Estimates from one coincidence record. cos_2phi is clamped to [-1, 1];
/// out_of_range records that the raw value exceeded the bounds (legitimate
/// under finite-count noise). phase_undefined is set when r0 r90 = 0 and the
/// phase carries no information.
struct EstimationResult {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double cos_2phi = 0.0;
    bool phase_undefined = false;
    bool out_of_range = false;
};

/// Postselected two-qubit state a|1_H1,1_H2> + b|1_V1,1_V2> produced when
/// the pair splits between the beamsplitter output ports.
struct TwoQubitState {
    Complex amp_hh{};
    Complex amp_vv{};

    double concurrence() const { return 2.0 * std::abs(amp_hh * amp_vv); }
};

struct SweepPoint {
    double phi = 0.0;
    double r0 = 0.0;
    double r90 = 0.0;
    double r45 = 0.0;
};

struct SimulationOptions {
    QutritState state;
    DetectorModel detector;
    std::int64_t n_pairs = 1000000;
    std::uint64_t seed = 0;
    bool exact = false;  // skip sampling, estimate from expected rates
};

struct SimulationReport {
    QutritState input;
    PlatePair plates;
    QutritState aligned;
    double lambda_plus_true = 0.0;
    double lambda_minus_true = 0.0;
    double phi_true = 0.0;
    DetectorModel detector;
    std::int64_t n_pairs = 0;
    std::uint64_t seed = 0;
    bool exact = false;
    CoincidenceRecord expected;
    double expected_cross = 0.0;  // coincidences across PBS ports (dark only)
    std::optional<CoincidenceRecord> sampled;
    std::optional<double> sampled_cross;
    EstimationResult estimate;
};

/// Jones matrix R(theta) diag(e^{-i G/2}, e^{+i G/2}) R(-theta) with
/// retardance G = pi/2 (quarter) or pi (half); determinant exactly 1.
Mat2 jones_of_waveplate(const WaveplateSetting& w);

/// Composite Jones matrix of the pair: half applied after quarter.
Mat2 composite_jones(const PlatePair& plates);

/// Applies the same single-photon unitary to both photons
/// (Psi -> U Psi U^T on the wave function) and recanonicalizes.
/// Throws NotUnitaryError.
QutritState transform_qutrit(const QutritState& q, const Mat2& u,
                             const Tolerances& tol = {});

/// Plate orientations whose composite maps the plus Schmidt mode to H (up to
/// phase): the quarter plate at the polarization-ellipse azimuth turns the
/// mode linear, the half plate rotates that linear state onto H.
PlatePair schmidt_aligning_plates(const QutritState& q);

/// Expected rates for a Schmidt-aligned state (|c2| below tolerance):
/// r0 = e1 e2 l+ N/2, r90 = e1 e2 l- N/2,
/// r45 = e1 e2 (1 + 2 sqrt(l+ l-) cos 2phi) N/4, plus dark_rate * N on each
/// channel. Throws NotAlignedError.
CoincidenceRecord expected_rates(const QutritState& aligned, const DetectorModel& det,
                                 std::int64_t n_pairs, const Tolerances& tol = {});

/// Independent Poisson draw per channel, reproducible for a fixed seed.
CoincidenceRecord sample_counts(const CoincidenceRecord& expected, std::uint64_t seed);

/// lambda+ = r0/(r0+r90), lambda- = r90/(r0+r90),
/// cos 2phi = (2 r45 - r0 - r90)/(2 sqrt(r0 r90)). Throws NoCountsError when
/// r0 + r90 = 0; flags instead of failing on r0 r90 = 0 or out-of-range cosine.
EstimationResult estimate_parameters(const CoincidenceRecord& rec);

/// Per-photon phase delay 2 delta_n length_l / cos(tilt_delta/2) of the
/// tilted birefringent plate pair. Throws OutOfRangeError for |tilt| >= pi.
double phase_plate_delay(const PhasePlate& p);

/// Shifts the Schmidt phase of an aligned state, phi -> phi + delta_phi
/// (the V-pair amplitude picks up e^{2i delta_phi}). Throws NotAlignedError.
QutritState apply_phase_delay(const QutritState& aligned, double delta_phi,
                              const Tolerances& tol = {});

/// Postselected two-qubit state (sqrt(l+), e^{2i phi} sqrt(l-)); its
/// concurrence 2 sqrt(l+ l-) equals the source qutrit's.
/// Throws NotAlignedError.
TwoQubitState postselect_split(const QutritState& aligned, const Tolerances& tol = {});

/// Expected rates of the aligned state as its Schmidt phase is swept over
/// [0, pi) in `steps` points.
std::vector<SweepPoint> phi_sweep(const QutritState& aligned, const DetectorModel& det,
                                  std::int64_t n_pairs, int steps,
                                  const Tolerances& tol = {});

/// Fringe visibility of r45 over a sweep, (max - min)/(2 max): the
/// modulation depth relative to the peak, which equals C/(1+C).
double r45_visibility(const std::vector<SweepPoint>& sweep);

/// Full pipeline: align, expected rates, optional sampling, estimation.
SimulationReport run_simulation(const SimulationOptions& opt, const Tolerances& tol = {});

}  // namespace biphoton
