#include "geogate/benchmarking.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "geogate/clifford.hpp"
#include "geogate/errors.hpp"
#include "geogate/evolution.hpp"

namespace geogate {

DrawPer parse_draw_per(std::string_view name) {
    if (name == "sequence") return DrawPer::Sequence;
    if (name == "gate") return DrawPer::Gate;
    throw InvalidArgument("draw_per must be 'sequence' or 'gate'");
}

std::string_view to_string(DrawPer draw) {
    return draw == DrawPer::Sequence ? "sequence" : "gate";
}

void RBConfig::validate() const {
    if (lengths.empty()) throw InvalidArgument("rb: lengths must be nonempty");
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (lengths[i] < 1) throw InvalidArgument("rb: lengths must be positive");
        if (i > 0 && lengths[i] <= lengths[i - 1]) {
            throw InvalidArgument("rb: lengths must be strictly increasing");
        }
    }
    if (sequences_per_length < 1) throw InvalidArgument("rb: sequences_per_length must be >= 1");
    if (!(sigma_delta >= 0.0) || !std::isfinite(sigma_delta)) {
        throw InvalidArgument("rb: sigma_delta must be finite and >= 0");
    }
    if (threads < 0) throw InvalidArgument("rb: threads must be >= 0");
}

namespace {

struct Compiled {
    std::array<PulseSequence, kCliffordCount> cliffords;
    std::optional<PulseSequence> target;
    std::optional<Matrix2> target_unitary;
};

Compiled compile_all(const RBConfig& cfg, bool interleaved) {
    Compiled c;
    const auto& group = clifford_group();
    for (int k = 0; k < kCliffordCount; ++k) {
        c.cliffords[k] = compile_clifford(group[k], cfg.family, cfg.perfect_pi, cfg.clifford_compile);
    }
    if (interleaved) {
        c.target = build_rotation(*cfg.interleaved_target, cfg.family, cfg.perfect_pi);
        c.target_unitary = cfg.interleaved_target->unitary();
    }
    return c;
}

// Stream per (seed, length index, repetition); independent of scheduling.
std::mt19937_64 stream(std::uint64_t seed, std::size_t li, int rep) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(li), static_cast<std::uint32_t>(rep)};
    return std::mt19937_64(seq);
}

double run_one(const RBConfig& cfg, const Compiled& comp, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, kCliffordCount - 1);
    const auto& group = clifford_group();

    const bool per_seq = cfg.draw_per == DrawPer::Sequence;
    const double seq_delta = per_seq ? cfg.sigma_delta * normal(rng) : 0.0;
    std::array<Matrix2, kCliffordCount> cached;
    Matrix2 cached_target;
    if (per_seq) {
        for (int k = 0; k < kCliffordCount; ++k) cached[k] = propagate(comp.cliffords[k], {0.0, seq_delta});
        if (comp.target) cached_target = propagate(*comp.target, {0.0, seq_delta});
    }
    auto noisy = [&](const PulseSequence& s, const Matrix2* cache) -> Matrix2 {
        if (cache) return *cache;
        return propagate(s, {0.0, cfg.sigma_delta * normal(rng)});
    };

    Matrix2 ideal = Matrix2::Identity();
    Matrix2 actual = Matrix2::Identity();
    for (int i = 0; i < n; ++i) {
        const int k = pick(rng);
        ideal = group[k].unitary * ideal;
        actual = noisy(comp.cliffords[k], per_seq ? &cached[k] : nullptr) * actual;
        if (comp.target) {
            ideal = *comp.target_unitary * ideal;
            actual = noisy(*comp.target, per_seq ? &cached_target : nullptr) * actual;
        }
    }
    const Matrix2 recovery = ideal.adjoint();
    const auto idx = find_clifford(recovery);
    if (idx) {
        actual = noisy(comp.cliffords[*idx], per_seq ? &cached[*idx] : nullptr) * actual;
    } else {
        actual = noisy(compile_unitary(recovery, cfg.family, cfg.perfect_pi), nullptr) * actual;
    }
    return std::min(1.0, std::norm(actual(0, 0)));
}

RBCurve run_curve(const RBConfig& cfg, bool interleaved) {
    cfg.validate();
    const Compiled comp = compile_all(cfg, interleaved);
    const std::size_t nl = cfg.lengths.size();
    const int reps = cfg.sequences_per_length;
    const std::size_t total = nl * static_cast<std::size_t>(reps);
    std::vector<double> survival(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t item = next++; item < total; item = next++) {
            const std::size_t li = item / reps;
            const int rep = static_cast<int>(item % reps);
            auto rng = stream(cfg.rng_seed, li, rep);
            survival[item] = run_one(cfg, comp, cfg.lengths[li], rng);
        }
    };
    unsigned nthreads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(total));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    }

    RBCurve curve;
    curve.lengths = cfg.lengths;
    for (std::size_t li = 0; li < nl; ++li) {
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) sum += survival[li * reps + r];
        const double mean = sum / reps;
        double ss = 0.0;
        for (int r = 0; r < reps; ++r) {
            const double dv = survival[li * reps + r] - mean;
            ss += dv * dv;
        }
        curve.mean_survival.push_back(mean);
        curve.stderr_survival.push_back(reps > 1 ? std::sqrt(ss / (reps - 1) / reps) : 0.0);
    }
    return curve;
}

}  // namespace

RBCurve run_standard_rb(const RBConfig& config) { return run_curve(config, false); }

RBFit fit_rb(const RBCurve& curve) {
    const std::size_t m = curve.lengths.size();
    if (m < 3 || curve.mean_survival.size() != m) {
        throw FitFailure("fit_rb: need at least 3 (n, survival) points, got " + std::to_string(m));
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(curve.mean_survival[i]) || curve.lengths[i] < 1) {
            throw FitFailure("fit_rb: non-finite survival or non-positive length at point " +
                             std::to_string(i));
        }
    }
    auto sse = [&](double d) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = curve.mean_survival[i] - 0.5 * (1.0 + std::exp(-d * curve.lengths[i]));
            s += r * r;
        }
        return s;
    };

    // Coarse log grid to locate the basin, then Brent inside it.
    std::vector<double> grid{0.0};
    for (int k = 0; k <= 240; ++k) grid.push_back(std::pow(10.0, -10.0 + k * 0.05));
    std::size_t best = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (sse(grid[k]) < sse(grid[best])) best = k;
    }
    const double lo = best == 0 ? 0.0 : grid[best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];

    std::uintmax_t iters = 200;
    const auto [d_min, f_min] = boost::math::tools::brent_find_minima(
        sse, lo, hi, std::numeric_limits<double>::digits / 2, iters);
    if (iters >= 200) {
        throw FitFailure("fit_rb: Brent search did not converge in 200 iterations (bracket [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }
    double d = d_min;
    double f = f_min;
    if (sse(0.0) <= f) {
        d = 0.0;
        f = sse(0.0);
    }
    if (!std::isfinite(d)) throw FitFailure("fit_rb: non-finite decay rate");

    RBFit fit;
    fit.d = d;
    fit.fidelity = 1.0 - d;
    fit.p = std::exp(-d);
    fit.residual = std::sqrt(f / static_cast<double>(m));
    return fit;
}

double interleaved_fidelity(double p_interleaved, double p_standard) {
    if (p_standard == 0.0) throw UndefinedResult("interleaved fidelity undefined for p_st = 0");
    return 1.0 - (1.0 - p_interleaved / p_standard) / 2.0;
}

InterleavedResult run_interleaved_rb(const RBConfig& config) {
    if (!config.interleaved_target) {
        throw InvalidArgument("run_interleaved_rb: interleaved_target not set");
    }
    InterleavedResult out;
    out.standard = run_curve(config, false);
    out.interleaved = run_curve(config, true);
    out.standard_fit = fit_rb(out.standard);
    out.interleaved_fit = fit_rb(out.interleaved);
    out.fidelity = interleaved_fidelity(out.interleaved_fit.p, out.standard_fit.p);
    return out;
}

}  // namespace geogate
