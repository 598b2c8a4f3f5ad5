#include <gtest/gtest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "geogate/errors.hpp"
#include "geogate/lindblad.hpp"

using namespace geogate;

namespace {

using Matrix4 = Eigen::Matrix4cd;

Matrix2 ket(int i, int j) {
    Matrix2 m = Matrix2::Zero();
    m(i, j) = 1.0;
    return m;
}

// Column-stacked Liouvillian: vec(A rho B) = (B^T kron A) vec(rho).
Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

Matrix4 liouvillian(const Matrix2& h, const LindbladParams& p) {
    const Matrix2 id = Matrix2::Identity();
    Matrix4 l = -kI * (kron(id, h) - kron(h.transpose(), id));
    auto dissipator = [&](const Matrix2& op, double rate) {
        const Matrix2 ld = op.adjoint() * op;
        return rate * (kron(op.conjugate(), op) - 0.5 * kron(id, ld) - 0.5 * kron(ld.transpose(), id));
    };
    l += dissipator(ket(0, 1), p.gamma1);
    l += dissipator(pauli::z(), p.gamma_phi / 2);
    return l;
}

Matrix2 exact_final(const PulseSequence& seq, const StaticError& err, const LindbladParams& p,
                    const Matrix2& rho0) {
    Eigen::Vector4cd v(rho0(0, 0), rho0(1, 0), rho0(0, 1), rho0(1, 1));
    for (const auto& seg : seq.segments) {
        const Matrix4 gen = liouvillian(segment_hamiltonian(seg, err), p) * seg.duration();
        v = gen.exp() * v;
    }
    Matrix2 r;
    r << v[0], v[2], v[1], v[3];
    return r;
}

Matrix2 random_rho(std::mt19937_64& rng) {
    std::normal_distribution<double> n01;
    Matrix2 a;
    a << Complex(n01(rng), n01(rng)), Complex(n01(rng), n01(rng)), Complex(n01(rng), n01(rng)),
        Complex(n01(rng), n01(rng));
    Matrix2 r = a * a.adjoint();
    return r / r.trace();
}

const PulseSequence& x2_opt() {
    static const PulseSequence s = build_rotation(parse_rotation("X/2"), GateFamily::OptimizedGeometric);
    return s;
}

}  // namespace

TEST(Lindblad, RhsExamples) {
    const Matrix2 h = 0.5 * pauli::x();
    std::mt19937_64 rng(1);
    const Matrix2 rho = random_rho(rng);
    EXPECT_LT((lindblad_rhs(rho, h, {}) - (-kI * (h * rho - rho * h))).norm(), 1e-15);
    const Matrix2 excited = ket(1, 1);
    const Matrix2 d = lindblad_rhs(excited, Matrix2::Zero(), {0.3, 0.0});
    EXPECT_LT((d - 0.3 * (ket(0, 0) - ket(1, 1))).norm(), 1e-15);
    // pure dephasing damps coherences at gamma_phi
    const Matrix2 plus = 0.5 * (Matrix2::Ones());
    const Matrix2 dp = lindblad_rhs(plus, Matrix2::Zero(), {0.0, 0.2});
    EXPECT_NEAR(dp(0, 1).real(), -0.2 * 0.5, 1e-15);
    EXPECT_NEAR(std::abs(dp(0, 0)), 0.0, 1e-15);
}

TEST(Lindblad, RhsTraceless) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const Matrix2 rho = random_rho(rng);
        const Matrix2 h = dot_sigma(Vec3(rng() % 7 / 3.0, 0.2, -1.0));
        EXPECT_LT(std::abs(lindblad_rhs(rho, h, {0.1, 0.05}).trace()), 1e-12);
    }
}

TEST(Lindblad, UnitaryLimitMatchesPropagator) {
    for (double delta : {0.0, 0.1}) {
        const StaticError err{0.0, delta};
        const auto out = evolve_master(x2_opt(), err, {});
        const Matrix2 u = propagate(x2_opt(), err);
        const Matrix2 want = u * ket(0, 0) * u.adjoint();
        EXPECT_LT((out.back().rho - want).cwiseAbs().maxCoeff(), 1e-8);
        if (delta == 0.0) {
            EXPECT_NEAR(out.back().fidelity, 1.0, 1e-8);
        }
    }
}

TEST(Lindblad, MatchesLiouvillianExponential) {
    const StaticError err{0.0, 0.1};
    for (LindbladParams p : {LindbladParams{1e-2, 0.0}, LindbladParams{1e-3, 2e-3}}) {
        const auto out = evolve_master(x2_opt(), err, p);
        const Matrix2 want = exact_final(x2_opt(), err, p, ket(0, 0));
        EXPECT_LT((out.back().rho - want).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Lindblad, StateStaysPhysical) {
    MasterOptions opt;
    opt.record_every = 1;
    const auto out = evolve_master(x2_opt(), {0.0, 0.1}, {1e-2, 1e-2}, opt);
    for (const auto& s : out) {
        EXPECT_NEAR(std::abs(s.rho.trace() - 1.0), 0.0, 1e-8);
        EXPECT_LT((s.rho - s.rho.adjoint()).norm(), 1e-10);
        EXPECT_GE(min_eigenvalue(s.rho), -1e-8);
        EXPECT_GE(s.fidelity, 0.0);
        EXPECT_LE(s.fidelity, 1.0 + 1e-12);
    }
    EXPECT_NEAR(out.back().time, x2_opt().duration(), 1e-12);
}

TEST(Lindblad, MonotoneInRelaxation) {
    double prev = -1.0;
    for (double g : {0.0, 1e-4, 1e-3, 1e-2}) {
        const double inf = 1 - evolve_master(x2_opt(), {0.0, 0.1}, {g, 0.0}).back().fidelity;
        EXPECT_GE(inf, prev);
        prev = inf;
    }
}

TEST(Lindblad, StepHalving) {
    MasterOptions a, b;
    b.dt = a.dt / 2;
    const double fa = evolve_master(x2_opt(), {0.0, 0.1}, {1e-2, 0.0}, a).back().fidelity;
    const double fb = evolve_master(x2_opt(), {0.0, 0.1}, {1e-2, 0.0}, b).back().fidelity;
    EXPECT_NEAR(fa, fb, 1e-10);
}

TEST(Lindblad, RejectsBadInput) {
    MasterOptions coarse;
    coarse.dt = kPi / 50;
    EXPECT_THROW(evolve_master(x2_opt(), {}, {}, coarse), InvalidArgument);
    EXPECT_THROW(evolve_master(x2_opt(), {}, {-1e-3, 0.0}), InvalidArgument);
    MasterOptions rec;
    rec.record_every = 0;
    EXPECT_THROW(evolve_master(x2_opt(), {}, {}, rec), InvalidArgument);
}

TEST(Lindblad, MinEigenvalue) {
    EXPECT_NEAR(min_eigenvalue(ket(0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(min_eigenvalue(0.5 * Matrix2::Identity()), 0.5, 1e-15);
    EXPECT_NEAR(min_eigenvalue(pauli::x()), -1.0, 1e-15);
}
