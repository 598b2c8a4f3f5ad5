#pragma once

// Piecewise-constant drive sequences for the four gate families.
//
// Every segment holds a constant Rabi rate and phase. With the drive
// H = rabi/2 (cos(phase) sx + sin(phase) sy), a segment of pulse area A
// rotates by A about (cos(phase), sin(phase), 0). Natural units: rabi = 1,
// so duration equals area.

#include <string>
#include <string_view>
#include <vector>

#include "geogate/su2.hpp"

namespace geogate {

enum class GateFamily {
    NaiveDynamical,
    ConventionalGeometric,
    OptimizedGeometric,
    TwoPiCorrected,
};

std::string_view to_string(GateFamily family);
// Accepts "naive", "geo", "opt", "twopi" and the enum spellings.
GateFamily parse_family(std::string_view name);

bool is_geometric(GateFamily family);

struct PulseSegment {
    double area = 0.0;   // integral of the Rabi rate over the segment [rad]
    double phase = 0.0;  // drive phase [rad]
    double rabi = 1.0;   // Rabi rate, relative to the sequence time unit
    bool delta_suppressed = false;  // detuning switched off inside this segment

    double duration() const { return area / rabi; }
};

// theta, phi: polar and azimuthal angles of the rotation axis n.
// The gate realised by the geometric families is exp(+i gamma n.sigma).
struct GateParams {
    double theta = 0.0;
    double phi = 0.0;
    double gamma = 0.0;
};

struct PulseSequence {
    std::vector<PulseSegment> segments;
    GateFamily family = GateFamily::NaiveDynamical;
    GateParams params;

    double total_area() const;
    double duration() const;
};

PulseSequence conventional_sequence(const GateParams& params);
PulseSequence optimized_sequence(const GateParams& params, bool perfect_pi = false);
// Restricted to theta in [0, pi/2].
PulseSequence two_pi_sequence(const GateParams& params);

// One constant segment realising exp(-i chi/2 (cos(phase) sx + sin(phase) sy)).
// Negative chi is realised as |chi| at phase + pi.
PulseSequence dynamical_rotation(double phase, double chi);

struct XyxAngles {
    double chi_a = 0.0;  // first x rotation (applied first)
    double chi_b = 0.0;  // y rotation
    double chi_c = 0.0;  // last x rotation
};

// R(x, chi_c) R(y, chi_b) R(x, chi_a) == target up to global phase.
// Principal-value Euler extraction: chi_b in [0, pi], chi_a and chi_c in
// (-pi, pi]. When chi_b is 0 or pi the split is degenerate and chi_a = 0.
XyxAngles xyx_decompose(const Matrix2& target);

// exp(+i gamma n.sigma), n = (sin th cos ph, sin th sin ph, cos th).
Matrix2 target_unitary(const GateParams& params);

// Parameters whose target equals exp(-i chi/2 axis.sigma) up to global phase.
// chi is wrapped into (-pi, pi] and a negative angle is carried by the flipped
// axis, so gamma = -|chi|/2. The azimuth of a z-axis is fixed to 0.
GateParams rotation_to_gate_params(const Vec3& axis, double chi);

// A rotation request: exp(-i chi/2 axis.sigma).
struct RotationSpec {
    std::string name;
    Vec3 axis{1.0, 0.0, 0.0};
    double chi = 0.0;

    Matrix2 unitary() const { return su2_exp(axis, chi); }
};

// Parses "X/2", "Y/4", "Z/2", "-X/2", "X", "I" style labels.
RotationSpec parse_rotation(std::string_view label);

// Compiles an arbitrary unitary into a sequence of the given family.
// Geometric families: a single geometric loop (empty sequence for identity).
// Naive: up to three one-segment x/y rotations from xyx_decompose.
PulseSequence compile_unitary(const Matrix2& target, GateFamily family, bool perfect_pi = false);

// Convenience: sequence for a rotation spec in the chosen family.
PulseSequence build_rotation(const RotationSpec& rotation, GateFamily family, bool perfect_pi = false);

// Concatenate b after a (time order).
PulseSequence concatenate(const PulseSequence& a, const PulseSequence& b);

}  // namespace geogate
