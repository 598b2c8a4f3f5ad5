#pragma once

// First-order filter functions for sz (off-resonance) noise.
//
// Control matrix: R_jk(t) = Tr[U^dag(t) s_j U(t) s_k] / 2 for the noise-free
// propagator. Fourier transform: R_jk(w) = -i w int_0^T exp(i w t) R_jk(t) dt.
// Filter function: F_z(w) = sum_k |R_zk(w)|^2.
//
// Two frequency conventions are supported:
//   Angular: w = 2 pi f, and the sz coefficient pi * df (df: qubit frequency
//            noise, one-sided PSD S0 / f^alpha in Hz^2/Hz) gives
//            S_z(w) = pi^2 S0 (w / 2 pi)^-alpha, integrated over
//            w in [2 pi f_lo, 2 pi f_uv] with weight 1/(2 pi).
//   Literal: f in Hz goes straight into exp(i f t) and S0 / f^alpha, with
//            weight 1/(2 pi) over [f_lo, f_uv].

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "geogate/pulses.hpp"
#include "geogate/su2.hpp"

namespace geogate {

struct NoiseSpectrum {
    double S0 = 2.67e6;   // Hz^2
    double alpha = 1.01;
    double f_lo = 10.0;   // Hz, best of the {10, 100, 1000} sweep
    double f_uv = 320e3;  // Hz

    // S0 >= 0 (0 gives a noiseless channel), 0 < f_lo < f_uv, finite alpha.
    void validate() const;
};

enum class FrequencyConvention { Angular, Literal };

FrequencyConvention parse_convention(std::string_view name);
std::string_view to_string(FrequencyConvention convention);

struct ControlTrajectory {
    std::vector<double> times;  // seconds when rabi is in rad/s
    std::vector<Matrix3> R;
};

// Samples cover every segment with at least ceil(samples * area / total_area)
// steps and a rotation step below 0.1 rad; segment boundaries are grid points
// (stored once). Segment durations are area / (rabi * seg.rabi).
ControlTrajectory control_matrix(const PulseSequence& seq, double rabi, int samples);

using Matrix3c = Eigen::Matrix3cd;

// R_ij(w) at each angular frequency, composite trapezoid on the trajectory grid.
std::vector<Matrix3c> fourier_control(const ControlTrajectory& traj,
                                      const std::vector<double>& omegas);

// sum_k |int_0^T exp(i w t) R_zk(t) dt|^2 = F_z(w) / w^2, finite at w = 0.
double filter_over_omega2(const ControlTrajectory& traj, double omega);

struct FilterCurve {
    std::vector<double> freqs;
    std::vector<double> values;  // F_z(w) / w^2
};

// Angular frequencies in, F_z/w^2 out (units of time^2).
FilterCurve filter_function(const PulseSequence& seq, double rabi, const std::vector<double>& omegas,
                            int samples = 0);

struct FFResult {
    double fidelity = 1.0;
    double infidelity = 0.0;
    int frequency_points = 0;
    double relative_change = 0.0;  // last doubling step
};

struct FFOptions {
    FrequencyConvention convention = FrequencyConvention::Angular;
    int samples = 0;               // 0: 4000 per pi of pulse area
    double rel_tol = 1e-4;
    int max_frequency_points = 1 << 16;
};

// Simpson quadrature in log(frequency), doubled until the relative change is
// below rel_tol. Throws InvalidArgument for a divergent spectrum (f_lo == 0
// with alpha >= 1) and AccuracyFailure when the doubling does not settle.
FFResult ff_fidelity(const PulseSequence& seq, double rabi, const NoiseSpectrum& spectrum,
                     const FFOptions& options = {});

int default_samples(const PulseSequence& seq);

}  // namespace geogate
