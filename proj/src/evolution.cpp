#include "geogate/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "geogate/errors.hpp"

namespace geogate {

namespace {

// Generator vector v with H = v.sigma / 2.
Vec3 generator(const PulseSegment& seg, const StaticError& err) {
    const double amp = (1.0 + err.epsilon) * seg.rabi;
    const double delta = seg.delta_suppressed ? 0.0 : err.delta;
    return Vec3(amp * std::cos(seg.phase), amp * std::sin(seg.phase), delta);
}

void require_geometric(const PulseSequence& seq, const char* who) {
    if (!is_geometric(seq.family)) {
        throw UnsupportedOperation(std::string(who) + ": requires a geometric gate family");
    }
}

}  // namespace

Matrix2 segment_propagator(const PulseSegment& seg, const StaticError& err, double fraction) {
    const Vec3 v = generator(seg, err);
    const double t = seg.duration() * fraction;
    const double norm = v.norm();
    if (norm == 0.0 || t == 0.0) return Matrix2::Identity();
    return su2_exp(v, norm * t);
}

Matrix2 segment_hamiltonian(const PulseSegment& seg, const StaticError& err) {
    return 0.5 * dot_sigma(generator(seg, err));
}

Matrix2 propagate(const PulseSequence& seq, const StaticError& err) {
    Matrix2 u = Matrix2::Identity();
    for (const auto& seg : seq.segments) u = segment_propagator(seg, err) * u;
    return u;
}

Trajectory propagate_sampled(const PulseSequence& seq, const StaticError& err,
                             int samples_per_segment) {
    if (samples_per_segment < 2) {
        throw InvalidArgument("propagate_sampled: need at least 2 samples per segment");
    }
    const Vector2 psi0 = dressed_states(seq.params.theta, seq.params.phi).first;
    Trajectory traj;
    Matrix2 u = Matrix2::Identity();
    double t0 = 0.0;
    auto record = [&](double t, const Matrix2& m) {
        traj.times.push_back(t);
        traj.propagators.push_back(m);
        traj.bloch_points.push_back(bloch_vector(m * psi0));
    };
    record(0.0, u);
    for (const auto& seg : seq.segments) {
        if (seg.area == 0.0) continue;
        const double dur = seg.duration();
        for (int j = 1; j < samples_per_segment; ++j) {
            const double frac = static_cast<double>(j) / (samples_per_segment - 1);
            record(t0 + frac * dur, segment_propagator(seg, err, frac) * u);
        }
        u = segment_propagator(seg, err) * u;
        t0 += dur;
    }
    return traj;
}

std::pair<Vector2, Vector2> dressed_states(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Vector2 plus(c, s * std::exp(kI * phi));
    Vector2 minus(s * std::exp(-kI * phi), -c);
    return {plus, minus};
}

CyclicPhases cyclic_phase_check(const PulseSequence& seq) {
    require_geometric(seq, "cyclic_phase_check");
    const Matrix2 u = propagate(seq, {});
    const auto [plus, minus] = dressed_states(seq.params.theta, seq.params.phi);
    const Complex ap = plus.dot(u * plus);
    const Complex am = minus.dot(u * minus);
    CyclicPhases out;
    out.phase_plus = std::arg(ap);
    out.phase_minus = std::arg(am);
    out.closure_defect = std::max(1.0 - std::norm(ap), 1.0 - std::norm(am));
    return out;
}

std::vector<double> parallel_transport_profile(const PulseSequence& seq, int resolution) {
    if (resolution < 1) throw InvalidArgument("parallel_transport: resolution < 1");
    const auto [plus, minus] = dressed_states(seq.params.theta, seq.params.phi);
    std::vector<double> out(seq.segments.size(), 0.0);
    Matrix2 u = Matrix2::Identity();
    for (std::size_t i = 0; i < seq.segments.size(); ++i) {
        const auto& seg = seq.segments[i];
        if (seg.area == 0.0) continue;
        const Matrix2 h = segment_hamiltonian(seg);
        for (int j = 0; j <= resolution; ++j) {
            const Matrix2 ut = segment_propagator(seg, {}, static_cast<double>(j) / resolution) * u;
            for (const Vector2* psi : {&plus, &minus}) {
                const Vector2 v = ut * (*psi);
                out[i] = std::max(out[i], std::abs(v.dot(h * v)));
            }
        }
        u = segment_propagator(seg, {}) * u;
    }
    return out;
}

double parallel_transport_residual(const PulseSequence& seq, int resolution) {
    const auto profile = parallel_transport_profile(seq, resolution);
    return profile.empty() ? 0.0 : *std::max_element(profile.begin(), profile.end());
}

double loop_closure_infidelity(const PulseSequence& seq, double delta) {
    require_geometric(seq, "loop_closure_infidelity");
    const Vector2 plus = dressed_states(seq.params.theta, seq.params.phi).first;
    const Matrix2 u = propagate(seq, {0.0, delta});
    return 1.0 - std::norm(plus.dot(u * plus));
}

double two_pi_delta_coefficient(double chi) {
    const RotationSpec rot{"x", Vec3(1, 0, 0), chi};
    if (std::abs(wrap_angle(chi)) < 1e-12) return 0.0;
    const PulseSequence seq = build_rotation(rot, GateFamily::TwoPiCorrected);
    const Matrix2 target = rot.unitary();
    auto even_part = [&](double h) {
        const double fp = trace_fidelity(target, propagate(seq, {0.0, h}));
        const double fm = trace_fidelity(target, propagate(seq, {0.0, -h}));
        return (2.0 - fp - fm) / (2.0 * h * h);
    };
    constexpr double h = 1e-2;
    return (4.0 * even_part(h / 2) - even_part(h)) / 3.0;
}

double printed_two_pi_expansion(double chi, double delta) {
    const double g = -chi / 2.0;
    return 1.0 + std::cos(g * g / 4.0) * (std::cos(g / 2.0) - 2.0 * std::sin(g / 2.0) - 3.0) *
                     delta * delta;
}

double analytic_fidelity(GateFamily family, ErrorKind kind, double chi, double magnitude) {
    const double m2 = magnitude * magnitude;
    const double c4 = std::pow(std::cos(chi / 4.0), 4);
    const double s4 = std::pow(std::sin(chi / 4.0), 4);
    if (kind == ErrorKind::OffResonance) {
        switch (family) {
            case GateFamily::NaiveDynamical: return 1.0 + (std::cos(chi) - 1.0) * m2 / 4.0;
            case GateFamily::ConventionalGeometric: return 1.0 - 2.0 * c4 * m2;
            case GateFamily::OptimizedGeometric: return 1.0 - 2.0 * s4 * m2;
            case GateFamily::TwoPiCorrected:
                if (m2 == 0.0) return 1.0;
                return 1.0 - two_pi_delta_coefficient(chi) * m2;
        }
    } else {
        switch (family) {
            case GateFamily::NaiveDynamical: return 1.0 - chi * chi * m2 / 8.0;
            case GateFamily::ConventionalGeometric: return 1.0 - kPi * kPi / 2.0 * s4 * m2;
            default: break;
        }
    }
    throw UnsupportedOperation("analytic_fidelity: no expansion for family '" +
                               std::string(to_string(family)) + "' with this error kind");
}

std::vector<ScanPoint> fidelity_scan(GateFamily family, const RotationSpec& rotation,
                                     const std::vector<double>& grid, ErrorKind kind,
                                     bool perfect_pi) {
    for (double e : grid) {
        if (!std::isfinite(e)) throw InvalidArgument("fidelity_scan: non-finite grid value");
    }
    const PulseSequence seq = build_rotation(rotation, family, perfect_pi);
    const Matrix2 target = rotation.unitary();
    std::vector<ScanPoint> out;
    out.reserve(grid.size());
    for (double e : grid) {
        const StaticError err = kind == ErrorKind::Amplitude ? StaticError{e, 0.0}
                                                             : StaticError{0.0, e};
        out.push_back({e, trace_fidelity(target, propagate(seq, err))});
    }
    return out;
}

std::vector<ScanRow> robustness_scan(const RotationSpec& rotation, const std::vector<double>& grid,
                                     ErrorKind kind) {
    const auto naive = fidelity_scan(GateFamily::NaiveDynamical, rotation, grid, kind);
    const auto geo = fidelity_scan(GateFamily::ConventionalGeometric, rotation, grid, kind);
    const auto opt = fidelity_scan(GateFamily::OptimizedGeometric, rotation, grid, kind);
    const auto perfect = fidelity_scan(GateFamily::OptimizedGeometric, rotation, grid, kind, true);
    std::vector<ScanRow> rows(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rows[i] = {grid[i], naive[i].fidelity, geo[i].fidelity, opt[i].fidelity,
                   perfect[i].fidelity};
    }
    return rows;
}

}  // namespace geogate
