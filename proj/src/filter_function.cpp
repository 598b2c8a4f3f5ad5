#include "geogate/filter_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geogate/errors.hpp"
#include "geogate/evolution.hpp"

namespace geogate {

void NoiseSpectrum::validate() const {
    if (!std::isfinite(S0) || S0 < 0.0) throw InvalidArgument("spectrum: S0 must be finite and >= 0");
    if (!std::isfinite(alpha)) throw InvalidArgument("spectrum: alpha must be finite");
    if (!std::isfinite(f_uv) || !(f_uv > 0.0)) throw InvalidArgument("spectrum: f_uv must be > 0");
    if (!std::isfinite(f_lo) || f_lo < 0.0 || f_lo >= f_uv) {
        throw InvalidArgument("spectrum: need 0 <= f_lo < f_uv");
    }
    if (f_lo == 0.0 && alpha >= 1.0) {
        throw InvalidArgument("spectrum: integral diverges at f = 0 for alpha >= 1; set f_lo > 0");
    }
}

FrequencyConvention parse_convention(std::string_view name) {
    if (name == "angular") return FrequencyConvention::Angular;
    if (name == "literal") return FrequencyConvention::Literal;
    throw InvalidArgument("frequency convention must be 'angular' or 'literal'");
}

std::string_view to_string(FrequencyConvention convention) {
    return convention == FrequencyConvention::Angular ? "angular" : "literal";
}

int default_samples(const PulseSequence& seq) {
    return std::max(1, static_cast<int>(std::ceil(4000.0 * seq.total_area() / kPi)));
}

ControlTrajectory control_matrix(const PulseSequence& seq, double rabi, int samples) {
    if (!(rabi > 0.0) || !std::isfinite(rabi)) throw InvalidArgument("control_matrix: rabi must be > 0");
    if (samples < 1) throw InvalidArgument("control_matrix: samples must be >= 1");
    const double total = seq.total_area();
    ControlTrajectory traj;
    traj.times.push_back(0.0);
    traj.R.push_back(Matrix3::Identity());
    Matrix2 u = Matrix2::Identity();
    double t0 = 0.0;
    for (const auto& seg : seq.segments) {
        if (seg.area == 0.0) continue;
        const int by_share = static_cast<int>(std::ceil(samples * seg.area / total));
        const int by_step = static_cast<int>(std::ceil(seg.area / 0.1));
        const int n = std::max({1, by_share, by_step});
        const double dur = seg.area / (rabi * seg.rabi);
        for (int j = 1; j <= n; ++j) {
            const double frac = static_cast<double>(j) / n;
            traj.times.push_back(t0 + frac * dur);
            traj.R.push_back(adjoint_rotation(segment_propagator(seg, {}, frac) * u));
        }
        u = segment_propagator(seg, {}) * u;
        t0 += dur;
    }
    return traj;
}

namespace {

// int_0^T exp(i w t) R_row(t) dt for one row (or all rows when row < 0).
Matrix3c integrate(const ControlTrajectory& traj, double omega, int row) {
    Matrix3c acc = Matrix3c::Zero();
    const std::size_t n = traj.times.size();
    Complex prev = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Complex next = std::polar(1.0, omega * traj.times[k + 1]);
        const double h = 0.5 * (traj.times[k + 1] - traj.times[k]);
        if (row < 0) {
            acc += h * (prev * traj.R[k].cast<Complex>() + next * traj.R[k + 1].cast<Complex>());
        } else {
            acc.row(row) += h * (prev * traj.R[k].row(row).cast<Complex>() +
                                 next * traj.R[k + 1].row(row).cast<Complex>());
        }
        prev = next;
    }
    return acc;
}

}  // namespace

std::vector<Matrix3c> fourier_control(const ControlTrajectory& traj,
                                      const std::vector<double>& omegas) {
    std::vector<Matrix3c> out;
    out.reserve(omegas.size());
    for (double w : omegas) out.push_back(Complex(0.0, -w) * integrate(traj, w, -1));
    return out;
}

double filter_over_omega2(const ControlTrajectory& traj, double omega) {
    return integrate(traj, omega, 2).row(2).squaredNorm();
}

FilterCurve filter_function(const PulseSequence& seq, double rabi, const std::vector<double>& omegas,
                            int samples) {
    const int s = samples > 0 ? samples : default_samples(seq);
    const ControlTrajectory traj = control_matrix(seq, rabi, s);
    FilterCurve curve;
    curve.freqs = omegas;
    curve.values.reserve(omegas.size());
    for (double w : omegas) curve.values.push_back(filter_over_omega2(traj, w));
    return curve;
}

FFResult ff_fidelity(const PulseSequence& seq, double rabi, const NoiseSpectrum& spectrum,
                     const FFOptions& options) {
    spectrum.validate();
    FFResult res;
    if (spectrum.S0 == 0.0 || seq.total_area() == 0.0) return res;

    const int s = options.samples > 0 ? options.samples : default_samples(seq);
    const ControlTrajectory traj = control_matrix(seq, rabi, s);
    const bool angular = options.convention == FrequencyConvention::Angular;
    const double scale = angular ? 2.0 * kPi : 1.0;

    // Density in x = log(variable): var * S(var) * F/var^2 / (2 pi).
    auto density = [&](double var) {
        const double f = var / scale;
        double sz = spectrum.S0 * std::pow(f, -spectrum.alpha);
        if (angular) sz *= kPi * kPi;
        return var * sz * filter_over_omega2(traj, var) / (2.0 * kPi);
    };

    double lo = spectrum.f_lo * scale;
    const double hi = spectrum.f_uv * scale;
    double head = 0.0;
    if (spectrum.f_lo == 0.0) {
        // alpha < 1: below lo the filter is flat at its w = 0 value.
        lo = hi * 1e-6;
        const double f_a = lo / scale;
        double w = scale * spectrum.S0 * std::pow(f_a, 1.0 - spectrum.alpha) / (1.0 - spectrum.alpha);
        if (angular) w *= kPi * kPi;
        head = w * filter_over_omega2(traj, 0.0) / (2.0 * kPi);
    }

    const double a = std::log(lo);
    const double b = std::log(hi);
    auto simpson = [&](int n) {
        const double h = (b - a) / n;
        double sum = density(lo) + density(hi);
        for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * density(std::exp(a + i * h));
        return sum * h / 3.0 + head;
    };

    int n = 32;
    double prev = simpson(n);
    while (true) {
        n *= 2;
        if (n > options.max_frequency_points) {
            throw AccuracyFailure("ff_fidelity: quadrature not converged at " + std::to_string(n / 2) +
                                  " frequency intervals");
        }
        const double cur = simpson(n);
        const double change = cur == 0.0 ? 0.0 : std::abs(cur - prev) / std::abs(cur);
        prev = cur;
        if (change < options.rel_tol) {
            res.relative_change = change;
            break;
        }
    }
    res.infidelity = prev;
    res.fidelity = 1.0 - prev;
    res.frequency_points = n + 1;
    return res;
}

}  // namespace geogate
