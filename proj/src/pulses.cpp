#include "geogate/pulses.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "geogate/errors.hpp"

namespace geogate {

std::string_view to_string(GateFamily family) {
    switch (family) {
        case GateFamily::NaiveDynamical: return "naive";
        case GateFamily::ConventionalGeometric: return "geo";
        case GateFamily::OptimizedGeometric: return "opt";
        case GateFamily::TwoPiCorrected: return "twopi";
    }
    return "unknown";
}

GateFamily parse_family(std::string_view name) {
    if (name == "naive" || name == "NaiveDynamical") return GateFamily::NaiveDynamical;
    if (name == "geo" || name == "ConventionalGeometric") return GateFamily::ConventionalGeometric;
    if (name == "opt" || name == "OptimizedGeometric") return GateFamily::OptimizedGeometric;
    if (name == "twopi" || name == "TwoPiCorrected") return GateFamily::TwoPiCorrected;
    throw InvalidArgument("unknown gate family '" + std::string(name) + "'");
}

bool is_geometric(GateFamily family) { return family != GateFamily::NaiveDynamical; }

double PulseSequence::total_area() const {
    return std::accumulate(segments.begin(), segments.end(), 0.0,
                           [](double acc, const PulseSegment& s) { return acc + s.area; });
}

double PulseSequence::duration() const {
    return std::accumulate(segments.begin(), segments.end(), 0.0,
                           [](double acc, const PulseSegment& s) { return acc + s.duration(); });
}

namespace {

void require_theta(double theta, double upper, const char* who) {
    if (!(theta >= 0.0 && theta <= upper + 1e-12)) {
        throw InvalidArgument(std::string(who) + ": theta outside allowed range");
    }
}

}  // namespace

PulseSequence conventional_sequence(const GateParams& p) {
    require_theta(p.theta, kPi, "conventional_sequence");
    const double th = std::min(p.theta, kPi);
    PulseSequence seq;
    seq.family = GateFamily::ConventionalGeometric;
    seq.params = p;
    seq.segments = {
        {th, p.phi - kPi / 2},
        {kPi, p.phi + p.gamma + kPi / 2},
        {kPi - th, p.phi - kPi / 2},
    };
    return seq;
}

PulseSequence optimized_sequence(const GateParams& p, bool perfect_pi) {
    require_theta(p.theta, kPi, "optimized_sequence");
    const double th = std::min(p.theta, kPi);
    const double loop = p.phi + p.gamma;
    PulseSequence seq;
    seq.family = GateFamily::OptimizedGeometric;
    seq.params = p;
    seq.segments = {
        {th, p.phi - kPi / 2},
        {kPi / 2, loop + kPi},
        {kPi, loop + 3 * kPi / 2, 1.0, perfect_pi},
        {kPi / 2, loop + kPi},
        {kPi - th, p.phi - kPi / 2},
    };
    return seq;
}

PulseSequence two_pi_sequence(const GateParams& p) {
    require_theta(p.theta, kPi / 2, "two_pi_sequence");
    const double th = std::min(p.theta, kPi / 2);
    const double loop = p.phi + p.gamma;
    PulseSequence seq;
    seq.family = GateFamily::TwoPiCorrected;
    seq.params = p;
    seq.segments = {
        {th, p.phi - kPi / 2},
        {kPi / 2, loop + kPi / 2},
        {kPi, loop + kPi},
        {kPi / 2, loop + kPi / 2},
        {kPi / 2, p.phi - kPi / 2},
        {kPi, p.phi},
        {kPi / 2 - th, p.phi - kPi / 2},
    };
    return seq;
}

PulseSequence dynamical_rotation(double phase, double chi) {
    PulseSequence seq;
    seq.family = GateFamily::NaiveDynamical;
    const Vec3 axis(std::cos(phase), std::sin(phase), 0.0);
    seq.params = rotation_to_gate_params(axis, chi);
    if (chi >= 0.0) {
        seq.segments.push_back({chi, phase});
    } else {
        seq.segments.push_back({-chi, phase + kPi});
    }
    return seq;
}

XyxAngles xyx_decompose(const Matrix2& target) {
    if (!is_unitary(target, 1e-10)) {
        throw PreconditionViolation("xyx_decompose: input not unitary to 1e-10");
    }
    const Matrix3 r = adjoint_rotation(target);
    XyxAngles out;
    const double sin_b = std::hypot(r(0, 1), r(0, 2));
    out.chi_b = std::atan2(sin_b, r(0, 0));
    if (sin_b > 1e-7) {
        out.chi_a = std::atan2(r(0, 1), r(0, 2));
        out.chi_c = std::atan2(r(1, 0), -r(2, 0));
    } else {
        out.chi_a = 0.0;
        out.chi_c = std::atan2(r(2, 1), r(1, 1));
    }
    return out;
}

Matrix2 target_unitary(const GateParams& p) {
    const Vec3 n(std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi),
                 std::cos(p.theta));
    return std::cos(p.gamma) * Matrix2::Identity() + kI * std::sin(p.gamma) * dot_sigma(n);
}

GateParams rotation_to_gate_params(const Vec3& axis, double chi) {
    const double norm = axis.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("rotation_to_gate_params: axis must be a nonzero finite vector");
    }
    Vec3 n = axis / norm;
    double angle = wrap_angle(chi);
    if (angle < 0.0) {
        angle = -angle;
        n = -n;
    }
    GateParams p;
    p.theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    if (std::hypot(n.x(), n.y()) < 1e-12) {
        p.phi = 0.0;
    } else {
        p.phi = std::atan2(n.y(), n.x());
        if (p.phi < 0.0) p.phi += 2.0 * kPi;
    }
    p.gamma = -angle / 2.0;
    return p;
}

RotationSpec parse_rotation(std::string_view label) {
    RotationSpec spec;
    spec.name = std::string(label);
    std::size_t pos = 0;
    double sign = 1.0;
    if (pos < label.size() && (label[pos] == '-' || label[pos] == '+')) {
        if (label[pos] == '-') sign = -1.0;
        ++pos;
    }
    if (pos >= label.size()) throw InvalidArgument("empty rotation label");
    const char ax = static_cast<char>(std::toupper(static_cast<unsigned char>(label[pos])));
    ++pos;
    switch (ax) {
        case 'X': spec.axis = Vec3(1, 0, 0); break;
        case 'Y': spec.axis = Vec3(0, 1, 0); break;
        case 'Z': spec.axis = Vec3(0, 0, 1); break;
        case 'I':
            if (pos != label.size()) throw InvalidArgument("bad rotation label '" + spec.name + "'");
            spec.axis = Vec3(0, 0, 1);
            spec.chi = 0.0;
            return spec;
        default: throw InvalidArgument("bad rotation label '" + spec.name + "'");
    }
    double divisor = 1.0;
    if (pos < label.size()) {
        if (label[pos] != '/') throw InvalidArgument("bad rotation label '" + spec.name + "'");
        const std::string rest(label.substr(pos + 1));
        std::size_t used = 0;
        try {
            divisor = std::stod(rest, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("bad rotation label '" + spec.name + "'");
        }
        if (used != rest.size() || !(divisor > 0.0)) {
            throw InvalidArgument("bad rotation label '" + spec.name + "'");
        }
    }
    spec.chi = sign * kPi / divisor;
    return spec;
}

namespace {

void append_segments(PulseSequence& dst, const PulseSequence& src) {
    dst.segments.insert(dst.segments.end(), src.segments.begin(), src.segments.end());
}

// The two-pi protocol only covers theta <= pi/2; (pi - theta, phi + pi, -gamma)
// names the same unitary.
PulseSequence geometric_sequence(GateParams p, GateFamily family, bool perfect_pi) {
    switch (family) {
        case GateFamily::ConventionalGeometric: return conventional_sequence(p);
        case GateFamily::OptimizedGeometric: return optimized_sequence(p, perfect_pi);
        case GateFamily::TwoPiCorrected:
            if (p.theta > kPi / 2) {
                p.theta = kPi - p.theta;
                p.phi = std::fmod(p.phi + kPi, 2.0 * kPi);
                p.gamma = -p.gamma;
            }
            return two_pi_sequence(p);
        case GateFamily::NaiveDynamical: break;
    }
    throw InternalConsistencyError("geometric_sequence: not a geometric family");
}

}  // namespace

PulseSequence compile_unitary(const Matrix2& target, GateFamily family, bool perfect_pi) {
    const AxisAngle aa = axis_angle_decompose(target);
    const bool identity = aa.angle < 1e-12;

    if (family == GateFamily::NaiveDynamical) {
        PulseSequence seq;
        seq.family = family;
        seq.params = identity ? GateParams{} : rotation_to_gate_params(aa.axis, aa.angle);
        const XyxAngles xyx = xyx_decompose(target);
        for (const auto& [phase, chi] : {std::pair{0.0, xyx.chi_a}, std::pair{kPi / 2, xyx.chi_b},
                                         std::pair{0.0, xyx.chi_c}}) {
            if (std::abs(chi) > 1e-12) append_segments(seq, dynamical_rotation(phase, chi));
        }
        return seq;
    }

    if (identity) {
        PulseSequence seq;
        seq.family = family;
        return seq;
    }

    return geometric_sequence(rotation_to_gate_params(aa.axis, aa.angle), family, perfect_pi);
}

PulseSequence build_rotation(const RotationSpec& rotation, GateFamily family, bool perfect_pi) {
    if (family == GateFamily::NaiveDynamical) {
        return compile_unitary(rotation.unitary(), family, perfect_pi);
    }
    if (std::abs(wrap_angle(rotation.chi)) < 1e-12) {
        PulseSequence seq;
        seq.family = family;
        return seq;
    }
    return geometric_sequence(rotation_to_gate_params(rotation.axis, rotation.chi), family,
                              perfect_pi);
}

PulseSequence concatenate(const PulseSequence& a, const PulseSequence& b) {
    PulseSequence out = a;
    append_segments(out, b);
    return out;
}

}  // namespace geogate
