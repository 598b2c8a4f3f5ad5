#pragma once

// Propagation under static amplitude (epsilon) and off-resonance (delta) errors.
//
// Within a segment the Hamiltonian is
//   H' = (1+epsilon) rabi/2 (cos(phase) sx + sin(phase) sy) + delta/2 sz
// with time measured in units of 1/Omega (Omega = 1).

#include <utility>
#include <vector>

#include "geogate/pulses.hpp"
#include "geogate/su2.hpp"

namespace geogate {

struct StaticError {
    double epsilon = 0.0;
    double delta = 0.0;
};

// Exact propagator of one segment, or of its first `fraction` of duration.
Matrix2 segment_propagator(const PulseSegment& seg, const StaticError& err, double fraction = 1.0);

// Noise-free Hamiltonian of a segment.
Matrix2 segment_hamiltonian(const PulseSegment& seg, const StaticError& err = {});

Matrix2 propagate(const PulseSequence& seq, const StaticError& err);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec3> bloch_points;
    std::vector<Matrix2> propagators;
};

// Samples each segment at samples_per_segment evenly spaced points including
// both ends (shared endpoints are stored once). Zero-area segments are skipped.
// bloch_points track the image of the dressed state |psi+(0)> for seq.params.
Trajectory propagate_sampled(const PulseSequence& seq, const StaticError& err,
                             int samples_per_segment = 64);

// (|psi+>, |psi->) for the axis with polar angle theta and azimuth phi.
std::pair<Vector2, Vector2> dressed_states(double theta, double phi);

struct CyclicPhases {
    double phase_plus = 0.0;   // arg <psi+|U(T)|psi+>, in (-pi, pi]
    double phase_minus = 0.0;  // arg <psi-|U(T)|psi->
    double closure_defect = 0.0;  // max over +- of 1 - |<psi|U(T)|psi>|^2
};

// Noise-free; geometric families only.
CyclicPhases cyclic_phase_check(const PulseSequence& seq);

// max_t,+- |<psi(0)| U^dag(t) H(t) U(t) |psi(0)>| on `resolution` + 1 points
// per segment, noise-free.
double parallel_transport_residual(const PulseSequence& seq, int resolution = 64);

// The same maximum, per segment (0 for zero-area segments).
std::vector<double> parallel_transport_profile(const PulseSequence& seq, int resolution = 64);

// 1 - |<psi+(0)| U_delta(T) |psi+(0)>|^2. Geometric families only.
double loop_closure_infidelity(const PulseSequence& seq, double delta);

enum class ErrorKind { Amplitude, OffResonance };

// Second-order expansions for an x rotation by chi. Supported pairs:
// naive/geo with either kind, opt and twopi with OffResonance. The twopi value
// uses the coefficient fitted from the propagator (two_pi_delta_coefficient).
double analytic_fidelity(GateFamily family, ErrorKind kind, double chi, double magnitude);

// c(chi) in F = 1 - c delta^2 for the two-pi x rotation, from a symmetric
// Richardson fit of the exact propagator.
double two_pi_delta_coefficient(double chi);

// The printed closed form with gamma = -chi/2:
// 1 + cos(gamma^2/4) (cos(gamma/2) - 2 sin(gamma/2) - 3) delta^2.
double printed_two_pi_expansion(double chi, double delta);

struct ScanPoint {
    double error = 0.0;
    double fidelity = 0.0;
};

std::vector<ScanPoint> fidelity_scan(GateFamily family, const RotationSpec& rotation,
                                     const std::vector<double>& grid,
                                     ErrorKind kind = ErrorKind::OffResonance,
                                     bool perfect_pi = false);

struct ScanRow {
    double error = 0.0;
    double naive = 0.0;
    double geo = 0.0;
    double opt = 0.0;
    double opt_perfect = 0.0;
};

// All four columns of the robustness scan for one rotation.
std::vector<ScanRow> robustness_scan(const RotationSpec& rotation, const std::vector<double>& grid,
                                     ErrorKind kind = ErrorKind::OffResonance);

}  // namespace geogate
