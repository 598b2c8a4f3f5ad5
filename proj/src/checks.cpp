#include "geogate/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "geogate/errors.hpp"
#include "geogate/evolution.hpp"

namespace geogate {

bool CheckReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

bool CheckReport::no_unexpected_failures() const {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed || r.known_deviation; });
}

namespace {

const double kChis[] = {kPi / 6, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};

PulseSequence make_sequence(GateFamily family, const GateParams& p, const CheckOptions& opts) {
    switch (family) {
        case GateFamily::ConventionalGeometric: return conventional_sequence(p);
        case GateFamily::OptimizedGeometric: return opts.optimized_builder(p, false);
        case GateFamily::TwoPiCorrected: return two_pi_sequence(p);
        case GateFamily::NaiveDynamical: break;
    }
    throw UnsupportedOperation("make_sequence: not a geometric family");
}

PulseSequence x_rotation(GateFamily family, double chi, const CheckOptions& opts) {
    const RotationSpec rot{"x", Vec3(1, 0, 0), chi};
    if (family == GateFamily::NaiveDynamical || family == GateFamily::TwoPiCorrected) {
        return build_rotation(rot, family);
    }
    return make_sequence(family, rotation_to_gate_params(rot.axis, chi), opts);
}

double numeric_fidelity(GateFamily family, ErrorKind kind, double chi, double m,
                        const CheckOptions& opts) {
    const Matrix2 target = su2_exp(Vec3(1, 0, 0), chi);
    const StaticError err = kind == ErrorKind::Amplitude ? StaticError{m, 0.0} : StaticError{0.0, m};
    return trace_fidelity(target, propagate(x_rotation(family, chi, opts), err));
}

std::string label(GateFamily family, ErrorKind kind) {
    return std::string(to_string(family)) +
           (kind == ErrorKind::Amplitude ? ".amplitude" : ".offresonance");
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

}  // namespace

CheckResult check_taylor(GateFamily family, ErrorKind kind, const CheckOptions& options) {
    CheckResult r{"taylor." + label(family, kind), false, 0.0, 1e-8, ""};
    for (double chi : kChis) {
        const double num = numeric_fidelity(family, kind, chi, 1e-3, options);
        const double ana = analytic_fidelity(family, kind, chi, 1e-3);
        r.value = std::max(r.value, std::abs(num - ana));
    }
    r.passed = r.value <= r.limit;
    return r;
}

CheckResult check_taylor_order(GateFamily family, ErrorKind kind, const CheckOptions& options) {
    // Remainder after the second-order term must shrink at least like h^3:
    // halving h cuts it by 8 (16 when the odd term vanishes). 0.2 leaves room.
    CheckResult r{"taylor_order." + label(family, kind), false, 0.0, 0.2, ""};
    auto remainder = [&](double chi, double h) {
        return std::abs(numeric_fidelity(family, kind, chi, h, options) -
                        analytic_fidelity(family, kind, chi, h));
    };
    bool bounded = true;
    for (double chi : kChis) {
        double prev = remainder(chi, 1e-2);
        for (double h : {5e-3, 2.5e-3}) {
            const double cur = remainder(chi, h);
            if (cur > 1e-13) r.value = std::max(r.value, cur / prev);
            prev = cur;
        }
        const double r1 = remainder(chi, 1e-1) / 1e-3;
        for (double h : {1e-2, 1e-3}) {
            if (remainder(chi, h) / (h * h * h) > 10.0 * std::max(r1, 1e-6)) bounded = false;
        }
    }
    r.passed = r.value <= r.limit && bounded;
    if (!bounded) r.detail = "remainder / h^3 grows as h decreases";
    return r;
}

CheckResult check_cyclic(GateFamily family, int grid, const CheckOptions& options) {
    CheckResult r{"cyclic." + std::string(to_string(family)), false, 0.0, 1e-9, ""};
    const double theta_max = family == GateFamily::TwoPiCorrected ? kPi / 2 : kPi;
    double worst_defect = 0.0;
    double worst_shifted = 0.0;  // same phases measured against +-gamma + pi
    for (double th : linspace(0.0, theta_max, grid)) {
        for (int j = 0; j < grid; ++j) {
            const double ph = 2.0 * kPi * j / grid;
            for (double g : linspace(-kPi, kPi, grid)) {
                const CyclicPhases c = cyclic_phase_check(make_sequence(family, {th, ph, g}, options));
                r.value = std::max({r.value, std::abs(wrap_angle(c.phase_plus - g)),
                                    std::abs(wrap_angle(c.phase_minus + g))});
                worst_shifted = std::max({worst_shifted, std::abs(wrap_angle(c.phase_plus - g - kPi)),
                                          std::abs(wrap_angle(c.phase_minus + g - kPi))});
                worst_defect = std::max(worst_defect, c.closure_defect);
            }
        }
    }
    r.passed = r.value <= r.limit && worst_defect <= 1e-12;
    std::ostringstream os;
    os << "max closure defect " << worst_defect;
    if (!r.passed && worst_defect <= 1e-12 && worst_shifted <= r.limit) {
        r.known_deviation = true;
        os << "; propagator is -exp(i gamma n.sigma), phases are +-gamma + pi";
    }
    r.detail = os.str();
    return r;
}

CheckResult check_parallel_transport(GateFamily family, int grid, const CheckOptions& options) {
    CheckResult r{"parallel_transport." + std::string(to_string(family)), false, 0.0, 1e-9, ""};
    const double theta_max = family == GateFamily::TwoPiCorrected ? kPi / 2 : kPi;
    // A segment whose drive axis carries the dressed states gives exactly 1/2.
    bool only_on_axis = true;
    std::vector<bool> on_axis;
    for (double th : linspace(0.0, theta_max, grid)) {
        for (int j = 0; j < grid; ++j) {
            const double ph = 2.0 * kPi * j / grid;
            for (double g : linspace(-kPi, kPi, grid)) {
                const auto prof =
                    parallel_transport_profile(make_sequence(family, {th, ph, g}, options), 16);
                on_axis.resize(prof.size(), false);
                for (std::size_t k = 0; k < prof.size(); ++k) {
                    r.value = std::max(r.value, prof[k]);
                    if (prof[k] <= r.limit) continue;
                    if (std::abs(prof[k] - 0.5) <= r.limit) {
                        on_axis[k] = true;
                    } else {
                        only_on_axis = false;
                    }
                }
            }
        }
    }
    r.passed = r.value <= r.limit;
    if (!r.passed && only_on_axis) {
        r.known_deviation = true;
        std::ostringstream os;
        os << "dressed states lie on the drive axis in segment(s)";
        for (std::size_t k = 0; k < on_axis.size(); ++k) {
            if (on_axis[k]) os << ' ' << k;
        }
        os << "; residual 1/2 there, <= 1e-9 elsewhere";
        r.detail = os.str();
    }
    return r;
}

CheckResult check_zero_noise(GateFamily family, int count, std::uint64_t seed,
                             const CheckOptions& options) {
    CheckResult r{"zero_noise." + std::string(to_string(family)), false, 0.0, 1e-10, ""};
    std::mt19937_64 rng(seed);
    const double theta_max = family == GateFamily::TwoPiCorrected ? kPi / 2 : kPi;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
        const GateParams p{theta_max * u01(rng), 2.0 * kPi * u01(rng), kPi * (2.0 * u01(rng) - 1.0)};
        const double f = trace_fidelity(target_unitary(p), propagate(make_sequence(family, p, options), {}));
        r.value = std::max(r.value, 1.0 - f);
    }
    r.passed = r.value <= r.limit;
    return r;
}

CheckResult check_two_pi_qualitative() {
    CheckResult r{"two_pi.not_better", false, 0.0, 1e-12, ""};
    const CheckOptions opts;
    for (double chi : linspace(-kPi, kPi, 25)) {
        if (std::abs(chi) < 1e-12) continue;
        for (double d : {0.01, 0.02, 0.05, 0.1}) {
            for (double s : {-1.0, 1.0}) {
                const double f2 = numeric_fidelity(GateFamily::TwoPiCorrected,
                                                   ErrorKind::OffResonance, chi, s * d, opts);
                for (GateFamily f : {GateFamily::NaiveDynamical, GateFamily::ConventionalGeometric,
                                     GateFamily::OptimizedGeometric}) {
                    const double other = numeric_fidelity(f, ErrorKind::OffResonance, chi, s * d, opts);
                    r.value = std::max(r.value, f2 - other);
                }
            }
        }
    }
    r.passed = r.value <= r.limit;
    return r;
}

CheckResult check_analytic_ordering() {
    CheckResult r{"analytic_ordering", false, 0.0, 1e-15, ""};
    constexpr double m = 0.1;
    for (double chi : linspace(-kPi, kPi, 201)) {
        const auto off = [&](GateFamily f) {
            return analytic_fidelity(f, ErrorKind::OffResonance, chi, m);
        };
        const auto amp = [&](GateFamily f) { return analytic_fidelity(f, ErrorKind::Amplitude, chi, m); };
        const double naive = off(GateFamily::NaiveDynamical);
        const double geo = off(GateFamily::ConventionalGeometric);
        const double opt = off(GateFamily::OptimizedGeometric);
        r.value = std::max({r.value, geo - naive,
                            amp(GateFamily::NaiveDynamical) - amp(GateFamily::ConventionalGeometric),
                            std::max(naive, geo) - opt});
    }
    r.passed = r.value <= r.limit;
    return r;
}

CheckReport run_checks(const CheckOptions& options) {
    CheckReport rep;
    const std::pair<GateFamily, ErrorKind> pairs[] = {
        {GateFamily::NaiveDynamical, ErrorKind::OffResonance},
        {GateFamily::ConventionalGeometric, ErrorKind::OffResonance},
        {GateFamily::NaiveDynamical, ErrorKind::Amplitude},
        {GateFamily::ConventionalGeometric, ErrorKind::Amplitude},
        {GateFamily::OptimizedGeometric, ErrorKind::OffResonance},
    };
    for (const auto& [f, k] : pairs) rep.results.push_back(check_taylor(f, k, options));
    for (const auto& [f, k] : pairs) rep.results.push_back(check_taylor_order(f, k, options));
    for (GateFamily f : {GateFamily::ConventionalGeometric, GateFamily::OptimizedGeometric}) {
        rep.results.push_back(check_cyclic(f, options.grid, options));
        rep.results.push_back(check_parallel_transport(f, options.grid, options));
    }
    for (GateFamily f : {GateFamily::ConventionalGeometric, GateFamily::OptimizedGeometric,
                         GateFamily::TwoPiCorrected}) {
        rep.results.push_back(check_zero_noise(f, 50, 7, options));
    }
    rep.results.push_back(check_analytic_ordering());
    rep.results.push_back(check_two_pi_qualitative());
    return rep;
}

}  // namespace geogate
