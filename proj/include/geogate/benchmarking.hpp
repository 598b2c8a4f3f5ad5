#pragma once

// Standard and interleaved randomized benchmarking under quasi-static Gaussian
// off-resonance noise.

#include <cstdint>
#include <optional>
#include <vector>

#include "geogate/clifford.hpp"
#include "geogate/pulses.hpp"

namespace geogate {

// One delta per sequence realisation, or a fresh delta for every gate.
enum class DrawPer { Sequence, Gate };

DrawPer parse_draw_per(std::string_view name);
std::string_view to_string(DrawPer draw);

struct RBConfig {
    std::vector<int> lengths{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
    int sequences_per_length = 200;
    double sigma_delta = 0.02;  // in units of Omega
    GateFamily family = GateFamily::OptimizedGeometric;
    bool perfect_pi = false;
    std::uint64_t rng_seed = 20240601;
    std::optional<RotationSpec> interleaved_target;
    DrawPer draw_per = DrawPer::Sequence;
    CliffordCompile clifford_compile = CliffordCompile::Direct;
    int threads = 0;  // 0: hardware concurrency

    // Throws InvalidArgument.
    void validate() const;
};

struct RBCurve {
    std::vector<int> lengths;
    std::vector<double> mean_survival;
    std::vector<double> stderr_survival;
};

struct RBFit {
    double d = 0.0;
    double fidelity = 1.0;  // 1 - d
    double p = 1.0;         // exp(-d)
    double residual = 0.0;  // root mean square
};

// Survival is |<0|U|0>|^2 for every realisation; the recovery gate inverts the
// ideal product up to phase.
RBCurve run_standard_rb(const RBConfig& config);

// Least-squares fit of (1 + exp(-d n)) / 2. Throws FitFailure.
RBFit fit_rb(const RBCurve& curve);

struct InterleavedResult {
    RBCurve standard;
    RBCurve interleaved;
    RBFit standard_fit;
    RBFit interleaved_fit;
    double fidelity = 1.0;
};

// Runs the standard curve and the interleaved curve (C_1 T C_2 T ... C_n T R)
// with the same seed policy. Non-Clifford targets get a general compiled
// recovery.
InterleavedResult run_interleaved_rb(const RBConfig& config);

// 1 - (1 - p_in / p_st) / 2. Throws UndefinedResult when p_st == 0.
double interleaved_fidelity(double p_interleaved, double p_standard);

}  // namespace geogate
