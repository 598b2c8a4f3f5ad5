#include "geogate/lindblad.hpp"

#include <cmath>
#include <string>

#include "geogate/errors.hpp"

namespace geogate {

namespace {

Matrix2 dissipator(const Matrix2& l, const Matrix2& rho) {
    const Matrix2 ld = l.adjoint();
    const Matrix2 ldl = ld * l;
    return l * rho * ld - 0.5 * (ldl * rho + rho * ldl);
}

Matrix2 lowering() {
    Matrix2 m = Matrix2::Zero();
    m(0, 1) = 1.0;
    return m;
}

void check_state(const Matrix2& rho, double t) {
    const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const double min_eig = min_eigenvalue(rho);
    if (tr_err > 1e-8 || herm_err > 1e-10 || min_eig < -1e-6) {
        throw AccuracyFailure("evolve_master: state invalid at t = " + std::to_string(t) +
                              " (trace error " + std::to_string(tr_err) + ", min eigenvalue " +
                              std::to_string(min_eig) + "); reduce dt");
    }
}

}  // namespace

double min_eigenvalue(const Matrix2& rho) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double off = std::abs(rho(0, 1));
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + off * off);
}

Matrix2 lindblad_rhs(const Matrix2& rho, const Matrix2& hamiltonian, const LindbladParams& params) {
    Matrix2 out = -kI * (hamiltonian * rho - rho * hamiltonian);
    if (params.gamma1 != 0.0) out += params.gamma1 * dissipator(lowering(), rho);
    if (params.gamma_phi != 0.0) out += 0.5 * params.gamma_phi * dissipator(pauli::z(), rho);
    return out;
}

std::vector<MasterSample> evolve_master(const PulseSequence& seq, const StaticError& err,
                                        const LindbladParams& params,
                                        const MasterOptions& options) {
    if (!(options.dt > 0.0) || options.dt > kPi / 100.0 * (1.0 + 1e-12)) {
        throw InvalidArgument("evolve_master: dt must be in (0, pi/100]");
    }
    if (params.gamma1 < 0.0 || params.gamma_phi < 0.0) {
        throw InvalidArgument("evolve_master: rates must be >= 0");
    }
    if (options.record_every < 1) throw InvalidArgument("evolve_master: record_every must be >= 1");

    const Vector2 psi0 = options.initial.normalized();
    Matrix2 rho = psi0 * psi0.adjoint();
    Vector2 ideal = psi0;
    double t = 0.0;
    std::vector<MasterSample> out;
    auto record = [&] {
        out.push_back({t, rho, ideal.dot(rho * ideal).real()});
    };
    record();

    long step = 0;
    for (const auto& seg : seq.segments) {
        const double dur = seg.duration();
        if (dur == 0.0) continue;
        const int n = static_cast<int>(std::ceil(dur / options.dt - 1e-9));
        const double h = dur / n;
        const Matrix2 ham = segment_hamiltonian(seg, err);
        const Matrix2 ideal_step = segment_propagator(seg, {}, 1.0 / n);
        for (int k = 0; k < n; ++k) {
            const Matrix2 k1 = lindblad_rhs(rho, ham, params);
            const Matrix2 k2 = lindblad_rhs(rho + 0.5 * h * k1, ham, params);
            const Matrix2 k3 = lindblad_rhs(rho + 0.5 * h * k2, ham, params);
            const Matrix2 k4 = lindblad_rhs(rho + h * k3, ham, params);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            ideal = ideal_step * ideal;
            t += h;
            check_state(rho, t);
            if (++step % options.record_every == 0) record();
        }
    }
    if (step % options.record_every != 0) record();
    return out;
}

}  // namespace geogate
