#include <gtest/gtest.h>

#include <random>

#include "geogate/benchmarking.hpp"
#include "geogate/errors.hpp"
#include "geogate/evolution.hpp"

using namespace geogate;

namespace {

RBCurve synthetic(double d, double noise, std::uint64_t seed) {
    RBCurve c;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    for (int n : {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000}) {
        c.lengths.push_back(n);
        c.mean_survival.push_back((1 + std::exp(-d * n)) / 2 + noise * n01(rng));
        c.stderr_survival.push_back(noise);
    }
    return c;
}

RBConfig small(GateFamily f) {
    RBConfig c;
    c.family = f;
    c.lengths = {1, 4, 16, 64};
    c.sequences_per_length = 8;
    return c;
}

// Decay per gate when every gate sees an independent delta, averaged over
// the compiled Clifford set: p = (|Tr(C^dag C~)|^2 - 1) / 3, averaged.
double per_gate_decay(GateFamily f, double sigma, int draws) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd(0.0, sigma);
    double acc = 0.0;
    int count = 0;
    for (const auto& c : clifford_group()) {
        const auto seq = compile_clifford(c, f);
        for (int k = 0; k < draws; ++k) {
            const double tr = std::abs((c.unitary.adjoint() * propagate(seq, {0, nd(rng)})).trace());
            acc += (tr * tr - 1) / 3;
            ++count;
        }
    }
    return acc / count;
}

}  // namespace

TEST(RBFitTest, ExactModel) {
    const RBFit f = fit_rb(synthetic(1e-3, 0.0, 1));
    EXPECT_NEAR(f.d, 1e-3, 1e-6);
    EXPECT_NEAR(f.fidelity, 1 - f.d, 1e-15);
    EXPECT_NEAR(f.p, std::exp(-f.d), 1e-15);
    EXPECT_LT(f.residual, 1e-6);
}

TEST(RBFitTest, ConstantCurve) {
    RBCurve c{{1, 10, 100}, {1.0, 1.0, 1.0}, {0, 0, 0}};
    const RBFit f = fit_rb(c);
    EXPECT_NEAR(f.d, 0.0, 1e-9);
    EXPECT_NEAR(f.fidelity, 1.0, 1e-9);
}

TEST(RBFitTest, NoisyData) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const RBFit f = fit_rb(synthetic(2e-3, 1e-3, s));
        EXPECT_NEAR(f.d, 2e-3, 2e-4) << s;
    }
}

TEST(RBFitTest, Failures) {
    EXPECT_THROW(fit_rb(RBCurve{{1, 2}, {1, 1}, {0, 0}}), FitFailure);
    EXPECT_THROW(fit_rb(RBCurve{{1, 2, 3}, {1, std::nan(""), 1}, {0, 0, 0}}), FitFailure);
}

TEST(RBFitTest, InterleavedFormula) {
    EXPECT_NEAR(interleaved_fidelity(0.99, 0.995), 1 - (1 - 0.99 / 0.995) / 2, 1e-15);
    EXPECT_NEAR(interleaved_fidelity(0.9, 0.9), 1.0, 1e-15);
    EXPECT_THROW(interleaved_fidelity(0.9, 0.0), UndefinedResult);
}

TEST(RBConfigTest, Validation) {
    RBConfig c;
    EXPECT_NO_THROW(c.validate());
    c.lengths = {};
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.lengths = {1, 5, 5};
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.lengths = {1, 5};
    c.sequences_per_length = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.sequences_per_length = 1;
    c.sigma_delta = -0.1;
    EXPECT_THROW(c.validate(), InvalidArgument);
    EXPECT_THROW(run_standard_rb(c), InvalidArgument);
    EXPECT_EQ(parse_draw_per("gate"), DrawPer::Gate);
    EXPECT_THROW(parse_draw_per("never"), InvalidArgument);
}

TEST(RB, NoiselessSurvivalIsOne) {
    for (GateFamily f : {GateFamily::NaiveDynamical, GateFamily::ConventionalGeometric,
                         GateFamily::OptimizedGeometric, GateFamily::TwoPiCorrected}) {
        for (CliffordCompile mode : {CliffordCompile::Direct, CliffordCompile::Primitive}) {
            RBConfig c = small(f);
            c.sigma_delta = 0.0;
            c.clifford_compile = mode;
            const RBCurve curve = run_standard_rb(c);
            for (double s : curve.mean_survival) EXPECT_NEAR(s, 1.0, 1e-9) << to_string(f);
            EXPECT_NEAR(fit_rb(curve).fidelity, 1.0, 1e-9);
            c.interleaved_target = parse_rotation("X/4");
            const InterleavedResult r = run_interleaved_rb(c);
            for (double s : r.interleaved.mean_survival) EXPECT_NEAR(s, 1.0, 1e-9);
            EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
        }
    }
}

TEST(RB, DeterministicAcrossThreads) {
    for (DrawPer draw : {DrawPer::Sequence, DrawPer::Gate}) {
        RBConfig c = small(GateFamily::ConventionalGeometric);
        c.draw_per = draw;
        c.threads = 1;
        const RBCurve a = run_standard_rb(c);
        c.threads = 3;
        const RBCurve b = run_standard_rb(c);
        c.threads = 0;
        const RBCurve d = run_standard_rb(c);
        EXPECT_EQ(a.mean_survival, b.mean_survival);
        EXPECT_EQ(a.stderr_survival, b.stderr_survival);
        EXPECT_EQ(a.mean_survival, d.mean_survival);
        c.rng_seed += 1;
        EXPECT_NE(run_standard_rb(c).mean_survival, a.mean_survival);
    }
}

TEST(RB, SurvivalBoundedAndDecreasing) {
    RBConfig c;
    c.family = GateFamily::ConventionalGeometric;
    c.lengths = {1, 10, 50, 200, 800};
    c.sequences_per_length = 200;
    const RBCurve curve = run_standard_rb(c);
    for (std::size_t i = 0; i < curve.lengths.size(); ++i) {
        EXPECT_GE(curve.mean_survival[i], 0.0);
        EXPECT_LE(curve.mean_survival[i], 1.0);
        if (i > 0) {
            const double bar = 3 * std::hypot(curve.stderr_survival[i], curve.stderr_survival[i - 1]);
            EXPECT_LE(curve.mean_survival[i], curve.mean_survival[i - 1] + bar);
        }
    }
    EXPECT_LT(curve.mean_survival.back(), curve.mean_survival.front());
}

TEST(RB, PerGateNoiseMatchesAverageChannel) {
    const double sigma = 0.02;
    for (GateFamily f : {GateFamily::NaiveDynamical, GateFamily::ConventionalGeometric}) {
        const double p = per_gate_decay(f, sigma, 400);
        RBConfig c;
        c.family = f;
        c.draw_per = DrawPer::Gate;
        c.lengths = {20, 100, 300, 600, 1000};
        c.sequences_per_length = 60;
        const RBFit fit = fit_rb(run_standard_rb(c));
        EXPECT_NEAR(fit.d, -std::log(p), 0.1 * -std::log(p)) << to_string(f);
    }
}
