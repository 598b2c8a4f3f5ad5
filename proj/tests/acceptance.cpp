// Acceptance report: one line per criterion, then details.
// Exit status is nonzero only for failures that are not documented deviations.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geogate/benchmarking.hpp"
#include "geogate/checks.hpp"
#include "geogate/evolution.hpp"
#include "geogate/filter_function.hpp"
#include "geogate/lindblad.hpp"

using namespace geogate;

namespace {

struct Outcome {
    bool pass = false;
    bool known = false;  // failure matches its documented deviation
    std::string measured;
    std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::string> kGates{"X/2", "X/4", "Y/2", "Y/4", "Z/2", "Z/4"};
const GateFamily kThree[] = {GateFamily::NaiveDynamical, GateFamily::ConventionalGeometric,
                             GateFamily::OptimizedGeometric};

// reference fidelities in percent
const std::map<std::string, double> kRbStandard{{"naive", 99.957}, {"geo", 99.919}, {"opt", 99.998}};
const std::map<std::string, std::vector<double>> kRbInterleaved{
    {"naive", {99.957, 99.953, 99.954, 99.960, 99.884, 99.969}},
    {"geo", {99.919, 99.878, 99.898, 99.868, 99.913, 99.905}},
    {"opt", {99.978, 99.975, 99.976, 99.974, 99.975, 99.977}}};
const std::map<std::string, std::vector<double>> kFfTable{
    {"naive", {99.615, 99.887, 99.615, 99.887, 97.693, 99.775}},
    {"geo", {97.779, 97.153, 97.759, 97.153, 97.374, 97.041}},
    {"opt", {99.934, 99.996, 99.934, 99.999, 99.550, 99.883}}};

std::string name(GateFamily f) { return std::string(to_string(f)); }

// ---------------------------------------------------------------- 1

Outcome gate_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    double worst = 0.0;
    for (GateFamily f : {GateFamily::ConventionalGeometric, GateFamily::OptimizedGeometric,
                         GateFamily::TwoPiCorrected}) {
        const CheckResult r = check_zero_noise(f, 200, 20240601);
        worst = std::max(worst, r.value);
        o.details.push_back(fmt("%-6s max 1-F = %.3e", name(f).c_str(), r.value));
    }
    const double dt = seconds_since(t0);
    o.pass = worst <= 1e-10 && dt < 5.0;
    o.measured = fmt("max 1-F = %.2e over 3x200 triples (limit 1e-10), %.2f s (limit 5 s)", worst, dt);
    return o;
}

// ---------------------------------------------------------------- 2

Outcome geometric_conditions() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    bool all = true;
    bool only_known = true;
    for (GateFamily f : {GateFamily::ConventionalGeometric, GateFamily::OptimizedGeometric}) {
        for (const CheckResult& r : {check_cyclic(f, 10), check_parallel_transport(f, 10)}) {
            all = all && r.passed;
            if (!r.passed && !r.known_deviation) only_known = false;
            o.details.push_back(fmt("%-24s %s value %.3e (limit %.0e) %s", r.name.c_str(),
                                    r.passed ? "ok  " : "FAIL", r.value, r.limit, r.detail.c_str()));
        }
    }
    const double dt = seconds_since(t0);
    o.pass = all && dt < 30.0;
    o.known = !o.pass && only_known && dt < 30.0;
    o.measured = fmt("conventional meets both conditions; optimized: %s; %.2f s (limit 30 s)",
                     all ? "meets both" : "phases +-gamma+pi and PT residual 1/2 in the pi segment", dt);
    return o;
}

// ---------------------------------------------------------------- 3

Outcome taylor() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    bool ok = true;
    const std::pair<GateFamily, ErrorKind> pairs[] = {
        {GateFamily::NaiveDynamical, ErrorKind::OffResonance},
        {GateFamily::ConventionalGeometric, ErrorKind::OffResonance},
        {GateFamily::NaiveDynamical, ErrorKind::Amplitude},
        {GateFamily::ConventionalGeometric, ErrorKind::Amplitude},
        {GateFamily::OptimizedGeometric, ErrorKind::OffResonance}};
    double worst = 0.0, worst_ratio = 0.0;
    for (const auto& [f, k] : pairs) {
        const CheckResult a = check_taylor(f, k);
        const CheckResult b = check_taylor_order(f, k);
        ok = ok && a.passed && b.passed;
        worst = std::max(worst, a.value);
        worst_ratio = std::max(worst_ratio, b.value);
        o.details.push_back(fmt("%-28s |dF| = %.2e  halving ratio %.4f %s", a.name.c_str(), a.value, b.value,
                                b.detail.c_str()));
    }
    const CheckResult q = check_two_pi_qualitative();
    ok = ok && q.passed;
    o.details.push_back(fmt("two-pi never better than the others: max excess %.2e", q.value));
    const double dt = seconds_since(t0);
    o.pass = ok && dt < 5.0;
    o.measured = fmt("max |F_num - F_printed| = %.2e (limit 1e-8), remainder ratio %.3f (h^4: 0.0625), "
                     "two-pi excess %.1e, %.2f s",
                     worst, worst_ratio, q.value, dt);
    return o;
}

// ---------------------------------------------------------------- 4

Outcome rb() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    RBConfig base;
    base.lengths = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
    base.sequences_per_length = 200;
    base.sigma_delta = 0.02;

    std::map<std::string, double> measured;
    bool standard_ok = true;
    for (GateFamily f : kThree) {
        RBConfig c = base;
        c.family = f;
        const RBFit fit = fit_rb(run_standard_rb(c));
        const double pct = 100 * fit.fidelity;
        measured[name(f)] = pct;
        const double dev = pct - kRbStandard.at(name(f));
        standard_ok = standard_ok && std::abs(dev) <= 0.02;
        o.details.push_back(fmt("standard %-6s F = %.4f%%  reference %.3f%%  diff %+.4f pp", name(f).c_str(), pct,
                                kRbStandard.at(name(f)), dev));
    }

    // ordering in every run: ten seeds
    int ordered = 0;
    const int runs = 10;
    for (int s = 0; s < runs; ++s) {
        std::map<std::string, double> fid;
        for (GateFamily f : kThree) {
            RBConfig c = base;
            c.family = f;
            c.rng_seed = base.rng_seed + 1000 + s;
            fid[name(f)] = fit_rb(run_standard_rb(c)).fidelity;
        }
        if (fid["opt"] > fid["naive"] && fid["naive"] > fid["geo"]) ++ordered;
    }
    o.details.push_back(fmt("ordering opt > naive > geo held in %d of %d seeds", ordered, runs));

    bool table_ok = true;
    double worst_table = 0.0;
    std::string worst_cell;
    for (GateFamily f : kThree) {
        std::string row = fmt("interleaved %-6s", name(f).c_str());
        for (std::size_t g = 0; g < kGates.size(); ++g) {
            RBConfig c = base;
            c.family = f;
            c.interleaved_target = parse_rotation(kGates[g]);
            const double pct = 100 * run_interleaved_rb(c).fidelity;
            const double dev = pct - kRbInterleaved.at(name(f))[g];
            if (std::abs(dev) > std::abs(worst_table)) {
                worst_table = dev;
                worst_cell = name(f) + " " + kGates[g];
            }
            table_ok = table_ok && std::abs(dev) <= 0.03;
            row += fmt("  %s %.3f (%+.3f)", kGates[g].c_str(), pct, dev);
        }
        o.details.push_back(row);
    }
    const double dt = seconds_since(t0);
    o.pass = standard_ok && table_ok && ordered == runs && dt < 600;

    // documented deviation: naive and conventional reproduce, the optimized
    // gate falls short and with it the opt > naive ordering
    const bool ng_ok = std::abs(measured["naive"] - 99.957) <= 0.02 && std::abs(measured["geo"] - 99.919) <= 0.02;
    o.known = !o.pass && ng_ok && measured["opt"] < 99.998 - 0.02 && measured["naive"] > measured["geo"];
    o.measured = fmt("F naive/geo/opt = %.3f/%.3f/%.3f%% (ref 99.957/99.919/99.998 +-0.02), ordering %d/%d, "
                     "worst interleaved cell %s %+.3f pp (limit 0.03), %.1f s",
                     measured["naive"], measured["geo"], measured["opt"], ordered, runs, worst_cell.c_str(),
                     worst_table, dt);
    return o;
}

// ---------------------------------------------------------------- 5

Outcome filter_functions() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    const double f_rabi = 4e6;
    const double rabi = 2 * kPi * f_rabi;

    // (a) curves on f / f_Rabi in [1e-3, 1]
    std::vector<double> xs;
    for (int i = 0; i <= 60; ++i) xs.push_back(std::pow(10.0, -3.0 + i / 20.0));
    bool a_ok = true;
    int low_viol = 0, mid_viol = 0, geo_viol = 0, points = 0;
    for (const auto& g : kGates) {
        std::map<std::string, std::vector<double>> v;
        for (GateFamily f : kThree) v[name(f)] = filter_function(build_rotation(parse_rotation(g), f), 1.0, xs).values;
        int gl = 0, gm = 0, gg = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double n = v["naive"][i], c = v["geo"][i], p = v["opt"][i];
            if (xs[i] <= 0.1 + 1e-12 && !(p < n && p < c)) ++gl;
            if (xs[i] >= 0.1 - 1e-12 && !(n < p && n < c)) ++gm;
            if (c < n) ++gg;
            ++points;
        }
        low_viol += gl;
        mid_viol += gm;
        geo_viol += gg;
        o.details.push_back(fmt("fig %-4s: points where opt not lowest (<=0.1) %d, naive not lowest (0.1-1) %d, "
                                "geo below naive %d",
                                g.c_str(), gl, gm, gg));
    }
    a_ok = low_viol == 0 && mid_viol == 0 && geo_viol == 0;

    // (b), (c) with the sweep
    NoiseSpectrum sp;
    sp.S0 = 2.67e6;
    sp.alpha = 1.01;
    sp.f_uv = 320e3;
    double best_rms = 1e300, best_max = 0.0, best_f = 0.0;
    bool b_ok = true;
    bool smaller_everywhere = true;
    for (double f_lo : {10.0, 100.0, 1000.0}) {
        sp.f_lo = f_lo;
        double ss = 0.0, mx = 0.0;
        for (std::size_t g = 0; g < kGates.size(); ++g) {
            std::map<std::string, double> fid;
            for (GateFamily f : kThree) {
                fid[name(f)] = 100 * ff_fidelity(build_rotation(parse_rotation(kGates[g]), f), rabi, sp).fidelity;
                const double ref = kFfTable.at(name(f))[g];
                ss += std::pow(fid[name(f)] - ref, 2);
                mx = std::max(mx, std::abs(fid[name(f)] - ref));
                if (100 - fid[name(f)] > 0.1 * (100 - ref)) smaller_everywhere = false;
            }
            const bool ord = fid["opt"] > fid["naive"] && fid["naive"] > fid["geo"];
            b_ok = b_ok && ord;
            if (f_lo == NoiseSpectrum{}.f_lo) {
                o.details.push_back(fmt("table %-4s naive %.6f geo %.6f opt %.6f %s", kGates[g].c_str(), fid["naive"],
                                        fid["geo"], fid["opt"], ord ? "ordered" : "NOT ordered"));
            }
        }
        const double rms = std::sqrt(ss / 18);
        o.details.push_back(fmt("sweep f_lo = %6.0f Hz: rms diff %.4f pp, max %.4f pp", f_lo, rms, mx));
        if (rms < best_rms) {
            best_rms = rms;
            best_max = mx;
            best_f = f_lo;
        }
    }
    const bool c_ok = best_max <= 0.5;
    const double dt = seconds_since(t0);
    o.pass = a_ok && b_ok && c_ok && dt < 120;
    // documented deviation: the ordering holds but the integrated infidelities
    // are orders of magnitude below the reference, and the crossover sits
    // below 0.1 for the x and y gates
    o.known = !o.pass && b_ok && smaller_everywhere && geo_viol <= points / 20 && dt < 120;
    o.measured = fmt("(a) %s: %d/%d/%d violations; (b) %s; (c) best f_lo %.0f Hz, max diff %.3f pp (limit 0.5); "
                     "%.1f s",
                     a_ok ? "holds" : "fails", low_viol, mid_viol, geo_viol, b_ok ? "holds" : "fails", best_f,
                     best_max, dt);
    return o;
}

// ---------------------------------------------------------------- 6

Outcome lindblad() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    const auto seq = build_rotation(parse_rotation("X/2"), GateFamily::OptimizedGeometric);
    const StaticError err{0.0, 0.1};
    bool physical = true;
    auto run = [&](double g1) {
        const auto out = evolve_master(seq, err, {g1, 0.0});
        for (const auto& s : out) {
            if (std::abs(s.rho.trace() - 1.0) > 1e-8 || min_eigenvalue(s.rho) < -1e-8 ||
                (s.rho - s.rho.adjoint()).norm() > 1e-10) {
                physical = false;
            }
        }
        return out;
    };
    const auto base = run(0.0);
    const auto relax = run(1e-4);
    const Matrix2 u = propagate(seq, err);
    const Matrix2 oracle = u * Vector2(1, 0) * Vector2(1, 0).adjoint() * u.adjoint();
    const double oracle_err = (base.back().rho - oracle).cwiseAbs().maxCoeff();
    const double added = base.back().fidelity - relax.back().fidelity;
    const double dt = seconds_since(t0);
    o.pass = added <= 5e-4 && added >= 0 && oracle_err <= 1e-8 && physical && dt < 10;
    o.measured = fmt("added infidelity %.3e (limit 5e-4), oracle error %.1e (limit 1e-8), trace/positivity %s, "
                     "%.2f s",
                     added, oracle_err, physical ? "kept" : "VIOLATED", dt);
    return o;
}

// ---------------------------------------------------------------- 7

Outcome property_suite(const std::string& binary) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    if (binary.empty()) {
        o.measured = "unit test binary not given";
        return o;
    }
    const std::string cmd = "\"" + binary + "\" --gtest_brief=1 > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    const double dt = seconds_since(t0);
    o.pass = rc == 0 && dt < 900;
    o.measured = fmt("unit/property suite exit %d, %.1f s (limit 900 s)", rc, dt);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string unit_binary = argc > 1 ? argv[1] : "";
    const bool verbose = argc > 2 && std::string(argv[2]) == "-v";
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "gate construction exactness", gate_exactness},
        {2, "cyclic phases and parallel transport", geometric_conditions},
        {3, "Taylor consistency", taylor},
        {4, "randomized benchmarking", rb},
        {5, "filter functions", filter_functions},
        {6, "relaxation", lindblad},
        {7, "property suite", [&] { return property_suite(unit_binary); }},
    };
    int unexpected = 0;
    std::vector<std::pair<int, Outcome>> results;
    for (const auto& c : all) {
        Outcome o = c.run();
        const char* status = o.pass ? "PASS" : (o.known ? "FAIL (known deviation)" : "FAIL");
        std::printf("criterion %d %-38s %s | %s\n", c.id, c.title, status, o.measured.c_str());
        std::fflush(stdout);
        if (!o.pass && !o.known) ++unexpected;
        results.emplace_back(c.id, std::move(o));
    }
    std::printf("\n");
    for (const auto& [id, o] : results) {
        if (!verbose && o.pass) continue;
        for (const auto& d : o.details) std::printf("  [%d] %s\n", id, d.c_str());
    }
    std::printf("unexpected failures: %d\n", unexpected);
    return unexpected == 0 ? 0 : 1;
}
