// Acceptance checks. Each criterion prints one "criterion N: PASS|FAIL" line
// followed by the measured numbers. Exit status is nonzero if any requested
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coopstc/acmoro.hpp"
#include "coopstc/detection.hpp"
#include "coopstc/errors.hpp"
#include "coopstc/harness.hpp"
#include "support/scenarios.hpp"

using namespace coopstc;
using namespace testsupport;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void print_records(const char* label, const std::vector<BERRecord>& recs) {
    std::printf("  %s\n", label);
    for (const auto& r : recs)
        std::printf("    snr %5.1f dB  ber %.4e  errors %8llu  bits %11llu  ci95 %.2e  blocks %llu  %.1fs\n", r.snr_db,
                    r.ber, static_cast<unsigned long long>(r.bit_errors), static_cast<unsigned long long>(r.bits),
                    r.ci95, static_cast<unsigned long long>(r.blocks), r.wall_time);
    std::fflush(stdout);
}

// Runs grid points in order and stops after the first point whose BER falls
// below `floor` (that point is kept so the curve brackets the floor).
std::vector<BERRecord> curve_until(const ExperimentConfig& cfg, double floor) {
    std::vector<BERRecord> out;
    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        out.push_back(run_point(cfg, cfg.snr_db[i], i));
        if (out.back().ber < floor) break;
    }
    return out;
}

ExperimentConfig relay_config(SystemType system, Policy policy, bool optimize) {
    ExperimentConfig cfg;
    cfg.system = system;
    cfg.policy = policy;
    cfg.optimize = optimize;
    cfg.min_bit_errors = 200;
    cfg.snr_db = parse_snr_grid("0:2:20");
    cfg.seed = 2024;
    return cfg;
}

const BERRecord* at_snr(const std::vector<BERRecord>& recs, double snr) {
    for (const auto& r : recs)
        if (r.snr_db == snr) return &r;
    return nullptr;
}

// 1: point-to-point BPSK against 0.5 erfc(sqrt(snr)).
Verdict calibration() {
    ExperimentConfig cfg;
    cfg.system = SystemType::PointToPoint;
    cfg.block_length = 10000;
    cfg.trials = 4000;  // 4e7 bits per point
    cfg.min_bit_errors = 0;
    cfg.seed = 11;
    double worst = 0.0;
    std::size_t checked = 0;
    std::vector<BERRecord> recs;
    for (double snr : parse_snr_grid("0:2:20")) {
        const double ref = bpsk_awgn_ber(snr);
        if (ref < 1e-4) continue;
        recs.push_back(run_point(cfg, snr));
        worst = std::max(worst, std::abs(recs.back().ber / ref - 1.0));
        ++checked;
    }
    print_records("point-to-point BPSK", recs);
    return {checked > 0 && worst < 0.05, fmt("%zu points with BER >= 1e-4, worst relative error %.4f (limit 0.05)", checked, worst)};
}

// 2: slope over the top 8 dB of the grid, fixed uniform-sphere codes.
Verdict diversity() {
    ExperimentConfig cfg = relay_config(SystemType::Mas, Policy::Equal, false);
    cfg.trials = 200000;
    const auto recs = run_sweep(cfg).records;
    print_records("MAS d-alamouti, fixed codes", recs);
    const double hi = cfg.snr_db.back();
    const double lo = hi - 8.0;
    double d = 0.0;
    try {
        d = estimate_diversity_order(to_curve(recs), lo, hi);
    } catch (const RangeError& e) {
        return {false, e.what()};
    }
    double low = 0.0;
    try {
        low = estimate_diversity_order(to_curve(recs), 0.0, 8.0);
    } catch (const RangeError&) {
    }
    return {d >= 1.6 && d <= 2.4,
            fmt("diversity over [%.0f, %.0f] dB = %.3f (range [1.6, 2.4]); over [0, 8] dB = %.3f", lo, hi, d, low)};
}

Verdict gain(SystemType system) {
    const ExperimentConfig opt = [&] {
        auto c = relay_config(system, Policy::Equal, true);
        c.trials = 20000;
        return c;
    }();
    ExperimentConfig fixed = opt;
    fixed.optimize = false;
    const auto a = curve_until(fixed, 1e-3);
    const auto b = curve_until(opt, 1e-3);
    print_records("fixed codes", a);
    print_records("optimized codes", b);
    try {
        const double g = measure_gain_db(to_curve(a), to_curve(b), 1e-3);
        return {g >= 1.0, fmt("gain at BER 1e-3 = %.3f dB (need >= 1.0)", g)};
    } catch (const RangeError& e) {
        return {false, std::string("gain not measurable: ") + e.what()};
    }
}

// 5: opportunistic relay selection against the equal split, both optimized.
Verdict opportunistic() {
    ExperimentConfig eq = relay_config(SystemType::Mas, Policy::Equal, true);
    eq.trials = 5000;
    ExperimentConfig orp = eq;
    orp.policy = Policy::Or;
    const auto a = curve_until(eq, 1e-4);
    const auto b = curve_until(orp, 1e-4);
    print_records("equal allocation", a);
    print_records("opportunistic relaying", b);
    std::size_t compared = 0;
    std::size_t separated = 0;
    std::size_t worse = 0;
    for (const auto& x : a) {
        const BERRecord* y = at_snr(b, x.snr_db);
        if (!y) continue;
        if (x.ber + x.ci95 >= 1e-2 || y->ber + y->ci95 >= 1e-2) continue;
        ++compared;
        if (y->ber > x.ber) ++worse;
        if (y->ber + y->ci95 < x.ber - x.ci95) ++separated;
    }
    return {compared > 0 && worse == 0 && separated >= 3,
            fmt("%zu points compared, OR worse at %zu, OR better with disjoint CIs at %zu (need 0 and >= 3)", compared,
                worse, separated)};
}

// 6: MAS against SAS at matched SNR, both with the default optimized codes.
Verdict mas_vs_sas() {
    ExperimentConfig mas = relay_config(SystemType::Mas, Policy::Equal, true);
    mas.trials = 3000;
    ExperimentConfig sas = mas;
    sas.system = SystemType::Sas;
    const auto a = curve_until(mas, 1e-4);
    const auto b = curve_until(sas, 1e-4);
    print_records("MAS", a);
    print_records("SAS", b);
    std::size_t compared = 0;
    std::size_t violations = 0;
    for (const auto& x : a) {
        const BERRecord* y = at_snr(b, x.snr_db);
        if (!y || std::min(x.ber, y->ber) >= 1e-2 || x.bit_errors == 0) continue;
        ++compared;
        // CI-aware: a violation needs the MAS interval entirely above the SAS one.
        if (x.ber - x.ci95 > y->ber + y->ci95) ++violations;
    }
    return {compared > 0 && violations == 0,
            fmt("%zu points below BER 1e-2 compared, %zu with MAS significantly worse", compared, violations)};
}

double fd_relative_error(const Scenario& sc, const CVector& r, const CVector& s_hat) {
    const auto& m = sc.model;
    const auto grads = sg_gradients(m, sc.codes, sc.gains, r, s_hat);
    const double eps = 1e-6;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t b = 0; b < grads.size(); ++b)
        for (std::size_t i = 0; i < grads[b].rows(); ++i)
            for (std::size_t j = 0; j < grads[b].cols(); ++j)
                for (const cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
                    CodeSet plus = sc.codes;
                    CodeSet minus = sc.codes;
                    plus.phi[b](i, j) += eps * dir;
                    minus.phi[b](i, j) -= eps * dir;
                    const double fd = (lagrangian(m, plus, sc.gains, r, s_hat) - lagrangian(m, minus, sc.gains, r, s_hat)) /
                                      (2.0 * eps);
                    const double an = 2.0 * (dir.real() != 0.0 ? grads[b](i, j).real() : grads[b](i, j).imag());
                    num += (fd - an) * (fd - an);
                    den += an * an;
                }
    return std::sqrt(num / den);
}

// 7: analytic gradients against central differences.
Verdict gradients() {
    RngStream rng(7, 7);
    double worst = 0.0;
    int n = 0;
    for (auto system : {SystemType::Mas, SystemType::Sas})
        for (int t = 0; t < 50; ++t, ++n) {
            const auto scheme = static_cast<Scheme>(t % 3);
            const std::vector<std::size_t> delays{0, rng.uniform_index(3)};
            const Scenario sc = make_scenario(rng, {system, scheme, 2, delays, t % 2 == 1});
            const auto codebook = random_codebook(t % 2 ? Modulation::Qam4 : Modulation::Bpsk, 2);
            const NoiseSample noise = draw_noise(rng, sc.model, 0.3, 0.3);
            const CVector r = transmit(sc.model, codebook[rng.uniform_index(codebook.size())], sc.codes, sc.gains, noise).r;
            worst = std::max(worst, fd_relative_error(sc, r, codebook[rng.uniform_index(codebook.size())]));
        }
    return {worst < 1e-5, fmt("%d instances, worst relative error %.3e (limit 1e-5)", n, worst)};
}

// 8: fast ML detector against brute force.
Verdict detector() {
    RngStream rng(8, 8);
    std::size_t mismatches = 0;
    std::size_t total = 0;
    for (auto mod : {Modulation::Bpsk, Modulation::Qam4}) {
        const auto codebook = random_codebook(mod, 2);
        for (int t = 0; t < 10000; ++t, ++total) {
            const auto system = t % 2 ? SystemType::Sas : SystemType::Mas;
            const Scenario sc = make_scenario(rng, {system, static_cast<Scheme>(t % 3), 2, {0, t % 3 == 0 ? 0u : 1u}, t % 4 == 0});
            const double var = std::pow(10.0, -rng.uniform() * 3.0);
            const NoiseSample noise = draw_noise(rng, sc.model, var, var);
            const CVector r = transmit(sc.model, codebook[rng.uniform_index(codebook.size())], sc.codes, sc.gains, noise).r;
            const MLProblem p = make_ml_problem(sc.model, sc.codes, sc.gains, r, codebook);
            mismatches += ml_detect(p).index != exhaustive_oracle(p).index;
        }
    }
    return {mismatches == 0, fmt("%zu instances, %zu mismatches", total, mismatches)};
}

// 9: every normalization of a 1000-block closed-loop run meets the budget.
Verdict power_constraint() {
    const std::size_t blocks = 1000;
    const std::size_t instants = 5;
    const SGConfig sg;
    const double s2 = 0.1;
    double worst = 0.0;
    std::size_t checks = 0;
    for (std::size_t blk = 0; blk < blocks; ++blk) {
        RngStream rng(9, blk);
        const auto system = blk % 2 ? SystemType::Sas : SystemType::Mas;
        const Policy policy = static_cast<Policy>(blk / 2 % 4);
        const Scenario sc = make_scenario(rng, {system, static_cast<Scheme>(blk % 3), 2, {0, 1}, false,
                                                selects_source_antenna(policy)});
        const auto codebook = random_codebook(Modulation::Bpsk, 2);
        const double p_r = system == SystemType::Mas ? 8.0 : 2.0;
        const PolicyContext ctx{policy, 1.0, 1.0, p_r, 1.0, {s2, s2, 1.0}};
        OptimizerState state = initialize_codes(rng, sc.model, p_r);
        ActiveSet active = select_active(sc.model, state.codes, ctx);
        for (std::size_t i = 0; i < instants; ++i) {
            const double budget = active_budget(sc.model, ctx, active);
            normalize_power(state.codes, active.branches, budget);
            worst = std::max(worst, std::abs(state.codes.trace_power(active.branches) - budget));
            ++checks;
            const NoiseSample noise = draw_noise(rng, sc.model, s2, s2);
            const CVector r = transmit(sc.model, codebook[rng.uniform_index(4)], state.codes, active.gains, noise).r;
            BlockResult res = run_block_optimization(sc.model, r, codebook, std::move(state), active, sg, ctx);
            for (std::size_t k = 0; k < res.normalized_power.size(); ++k, ++checks)
                worst = std::max(worst, std::abs(res.normalized_power[k] - res.normalized_budget[k]));
            state = std::move(res.state);
            active = std::move(res.next_active);
        }
    }
    return {worst <= 1e-12, fmt("%zu normalizations, worst |sum Tr - budget| = %.3e (limit 1e-12)", checks, worst)};
}

// 10: windowed matrix model against the slot-by-slot oracle.
Verdict model_equivalence() {
    RngStream rng(10, 10);
    double worst = 0.0;
    std::size_t configs = 0;
    for (std::size_t n = 1; n <= 2; ++n)
        for (auto system : {SystemType::Mas, SystemType::Sas})
            for (auto scheme : {Scheme::DAlamouti, Scheme::RAlamouti, Scheme::Ldc}) {
                if (n == 1 && scheme != Scheme::Ldc) continue;
                for (std::size_t n_r = 1; n_r <= 2; ++n_r)
                    for (const auto& delays : delay_profiles(n_r, 2))
                        for (bool direct : {false, true})
                            for (bool antenna : {false, true}) {
                                ++configs;
                                for (int rep = 0; rep < 10; ++rep) {
                                    const Scenario sc = make_scenario(rng, {system, scheme, n, delays, direct, antenna});
                                    const CVector s = random_vector(rng, n);
                                    const NoiseSample noise = draw_noise(rng, sc.model, 0.3, 0.2);
                                    const CVector r = transmit(sc.model, s, sc.codes, sc.gains, noise).r;
                                    worst = std::max(worst, max_abs_diff(r, simulate_slots(sc, s, noise)));
                                }
                            }
            }
    return {worst < 1e-9, fmt("%zu configurations x 10 draws, worst deviation %.3e (limit 1e-9)", configs, worst)};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 11: the objective falls over the inner iterations of typical blocks.
Verdict descent() {
    const SGConfig sg;
    const std::size_t tenth = std::max<std::size_t>(1, sg.iterations / 10);
    const double s2 = 0.1;  // 10 dB
    int ok = 0;
    const int blocks = 100;
    for (int blk = 0; blk < blocks; ++blk) {
        RngStream rng(11, static_cast<std::uint64_t>(blk));
        const Scenario sc = make_scenario(rng, {SystemType::Mas, Scheme::DAlamouti, 2, {0, 1}});
        const auto codebook = random_codebook(Modulation::Bpsk, 2);
        const PolicyContext ctx{Policy::Equal, 1.0, 1.0, 8.0, 1.0, {s2, s2, 1.0}};
        OptimizerState state = initialize_codes(rng, sc.model, ctx.p_r);
        const ActiveSet active = select_active(sc.model, state.codes, ctx);
        const NoiseSample noise = draw_noise(rng, sc.model, s2, s2);
        const CVector r = transmit(sc.model, codebook[rng.uniform_index(4)], state.codes, active.gains, noise).r;
        const auto tr = run_block_optimization(sc.model, r, codebook, std::move(state), active, sg, ctx).state.objective_trace;
        const double first = median({tr.begin(), tr.begin() + static_cast<std::ptrdiff_t>(tenth)});
        const double last = median({tr.end() - static_cast<std::ptrdiff_t>(tenth), tr.end()});
        ok += last <= first;
    }
    return {ok >= blocks * 9 / 10, fmt("beta %.3g, %d of %d blocks descend (need >= 90%%)", sg.beta, ok, blocks)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Verdict()>> criteria{
        calibration,     diversity, [] { return gain(SystemType::Mas); }, [] { return gain(SystemType::Sas); },
        opportunistic,   mas_vs_sas, gradients, detector, power_constraint, model_equivalence, descent};

    bool all = true;
    for (int c = 1; c <= static_cast<int>(criteria.size()); ++c) {
        if (only && c != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[static_cast<std::size_t>(c - 1)]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d: %s  %s  [%.1fs]\n", c, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
