#include "coopstc/acmoro.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "coopstc/errors.hpp"

namespace coopstc {

Policy parse_policy(std::string_view name) {
    if (name == "equal") return Policy::Equal;
    if (name == "or") return Policy::Or;
    if (name == "os") return Policy::Os;
    if (name == "fo") return Policy::Fo;
    throw ConfigError("unknown policy '" + std::string(name) + "' (expected equal | or | os | fo)");
}

std::string_view to_string(Policy p) {
    switch (p) {
        case Policy::Equal: return "equal";
        case Policy::Or: return "or";
        case Policy::Os: return "os";
        case Policy::Fo: return "fo";
    }
    return "?";
}

bool selects_relay(Policy p) { return p == Policy::Or || p == Policy::Fo; }
bool selects_source_antenna(Policy p) { return p == Policy::Os || p == Policy::Fo; }

ActiveSet allocate(const SystemModel& model, const PolicyContext& ctx, std::optional<std::size_t> relay) {
    ActiveSet a;
    a.relay = relay;
    a.gains.assign(model.branches.size(), 0.0);
    if (relay) {
        if (*relay >= model.n_relays) throw InvalidParameter("allocate: relay index out of range");
        a.branches = model.branches_of(*relay);
    } else {
        a.branches.resize(model.branches.size());
        std::iota(a.branches.begin(), a.branches.end(), std::size_t{0});
    }
    const double per_branch = ctx.p2 / static_cast<double>(a.branches.size());
    const double rho = amplification_gain(per_branch, ctx.sigma2_f, ctx.p1, ctx.noise.sigma2_n1);
    for (std::size_t b : a.branches) a.gains[b] = rho;
    return a;
}

double active_budget(const SystemModel& model, const PolicyContext& ctx, const ActiveSet& active) {
    return ctx.p_r * static_cast<double>(active.branches.size()) / static_cast<double>(model.branches.size());
}

namespace {

CVector residual(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                 std::span<const cplx> r, std::span<const cplx> s_hat) {
    if (r.size() != model.receive_length()) throw ShapeError("lagrangian: receive vector length");
    CVector e(r.begin(), r.end());
    const CVector model_out = signal_part(model, s_hat, codes, gains);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= model_out[i];
    return e;
}

// dL/dPhi* for one branch given the residual e = r - r_hat.
CMatrix branch_gradient(const SystemModel& model, std::span<const double> gains, std::span<const cplx> e, std::span<const cplx> s_hat, std::size_t b) {
    const std::size_t rows = model.code_rows();
    CMatrix grad(rows, rows);
    if (gains[b] == 0.0) return grad;
    const Branch& br = model.branches[b];
    const std::size_t t = model.block_length;

    // back = sum_m conj(g_m) J^T e_m : the residual pulled back to the branch input.
    CVector back(t);
    for (std::size_t m = 0; m < br.g.size(); ++m) {
        const cplx gm = std::conj(br.g[m]);
        const cplx* em = e.data() + m * model.window + br.delay;
        for (std::size_t i = 0; i < t; ++i) back[i] += gm * em[i];
    }
    const CVector u = br.signal_in.apply(s_hat);
    const double k = -model.prefactor * gains[b];
    if (model.system == SystemType::Mas) {
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j) grad(i, j) = k * back[i] * std::conj(u[j]);
    } else {
        grad(0, 0) = k * dot(u, back);
    }
    return grad;
}

}  // namespace

double lagrangian(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                  std::span<const cplx> r, std::span<const cplx> s_hat) {
    return frobenius_norm_sq(residual(model, codes, gains, r, s_hat));
}

std::vector<CMatrix> sg_gradients(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                                  std::span<const cplx> r, std::span<const cplx> s_hat) {
    const CVector e = residual(model, codes, gains, r, s_hat);
    std::vector<CMatrix> out;
    out.reserve(model.branches.size());
    for (std::size_t b = 0; b < model.branches.size(); ++b) out.push_back(branch_gradient(model, gains, e, s_hat, b));
    return out;
}

CMatrix sg_gradient(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                    std::span<const cplx> r, std::span<const cplx> s_hat, std::size_t branch) {
    if (branch >= model.branches.size()) throw ShapeError("sg_gradient: branch index out of range");
    const CVector e = residual(model, codes, gains, r, s_hat);
    return branch_gradient(model, gains, e, s_hat, branch);
}

CMatrix project_to_code(const SystemModel& model, std::size_t branch, const CMatrix& full) {
    const std::size_t len = model.relay_part_length();
    if (full.rows() < len || full.cols() < len) throw ShapeError("project_to_code: matrix smaller than relay window");
    if (model.system == SystemType::Sas) {
        cplx tr{};
        for (std::size_t i = 0; i < len; ++i) tr += full(i, i);
        return CMatrix(1, 1, {tr});
    }
    const Branch& br = model.branches.at(branch);
    const std::size_t t = model.block_length;
    CMatrix out(t, t);
    for (std::size_t m = 0; m < model.n_antennas; ++m) {
        const std::size_t off = m * model.window + br.delay;
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j) out(i, j) += full(off + i, off + j);
    }
    return out;
}

void sg_step(CodeSet& codes, std::span<const CMatrix> gradients, double beta, std::span<const std::size_t> branches) {
    if (beta < 0.0) throw InvalidParameter("sg_step: beta must be non-negative");
    for (std::size_t b : branches) codes.phi.at(b) -= scale(gradients[b], beta);
}

double normalize_power(CodeSet& codes, std::span<const std::size_t> branches, double budget) {
    if (!(budget > 0.0)) throw InvalidParameter("normalize_power: budget must be positive");
    const double power = codes.trace_power(branches);
    if (!(power > 0.0) || !std::isfinite(power))
        throw DegenerateStateError("normalize_power: code matrices are all zero");
    const double factor = std::sqrt(budget / power);
    for (std::size_t b : branches) codes.phi[b] *= factor;
    return factor;
}

double normalize_power(CodeSet& codes, double budget) {
    std::vector<std::size_t> all(codes.phi.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return normalize_power(codes, all, budget);
}

double relay_metric(const RelayCandidate& c, const SelectionConstants& k) {
    double sum = 0.0;
    const double t = static_cast<double>(k.block_length);
    const double n = static_cast<double>(k.n_antennas);
    for (const auto& term : c.terms) {
        const double rho2 = term.gain * term.gain;
        const double num = k.p1 * t * rho2 * term.signal_energy * k.noise.sigma2_s;
        const double den = n * rho2 * term.noise_energy * k.noise.sigma2_n1 + k.noise.sigma2_d;
        if (num == 0.0) continue;
        sum += den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
    }
    return c.snr_ins * sum;
}

std::size_t select_relay(std::span<const RelayCandidate> candidates, const SelectionConstants& k) {
    if (candidates.empty()) throw InvalidParameter("select_relay: no candidates");
    std::size_t best = 0;
    double best_metric = relay_metric(candidates[0], k);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double m = relay_metric(candidates[i], k);
        if (m > best_metric) {
            best_metric = m;
            best = i;
        }
    }
    return best;
}

std::vector<RelayCandidate> relay_candidates(const SystemModel& model, const CodeSet& codes, double gain_if_selected,
                                             double p1, const NoiseLevels& noise) {
    std::vector<RelayCandidate> out(model.n_relays);
    for (std::size_t k = 0; k < model.n_relays; ++k) {
        if (model.system == SystemType::Mas) {
            const double n = static_cast<double>(model.n_antennas);
            out[k].snr_ins = noise.sigma2_n1 > 0.0 ? p1 * model.first_hop_gain[k] / (n * noise.sigma2_n1)
                                                   : std::numeric_limits<double>::max();
        }
    }
    for (std::size_t b = 0; b < model.branches.size(); ++b) {
        const Branch& br = model.branches[b];
        const double g2 = frobenius_norm_sq(br.g);
        double sig;
        double noi;
        if (model.system == SystemType::Mas) {
            const CMatrix& phi = codes.phi.at(b);
            sig = g2 * left_multiply(phi, br.signal_in).energy();
            noi = g2 * left_multiply(phi, br.noise_in).energy();
        } else {
            const double p2 = std::norm(codes.phi.at(b)(0, 0));
            sig = g2 * p2 * br.signal_in.energy();
            noi = g2 * p2 * br.noise_in.energy();
        }
        out[br.relay].terms.push_back({gain_if_selected, sig, noi});
    }
    return out;
}

namespace {

std::size_t select_relay_for(const SystemModel& model, const CodeSet& codes, const PolicyContext& ctx) {
    const std::size_t per_relay = model.branches.size() / model.n_relays;
    const double rho = amplification_gain(ctx.p2 / static_cast<double>(per_relay), ctx.sigma2_f, ctx.p1,
                                          ctx.noise.sigma2_n1);
    const auto cands = relay_candidates(model, codes, rho, ctx.p1, ctx.noise);
    return select_relay(cands, SelectionConstants{ctx.p1, model.block_length, model.n_antennas, ctx.noise});
}

}  // namespace

std::size_t select_relay_mas(const SystemModel& model, const CodeSet& codes, const PolicyContext& ctx) {
    if (model.system != SystemType::Mas) throw ShapeError("select_relay_mas: model is not MAS");
    return select_relay_for(model, codes, ctx);
}

std::size_t select_relay_sas(const SystemModel& model, const CodeSet& codes, const PolicyContext& ctx) {
    if (model.system != SystemType::Sas) throw ShapeError("select_relay_sas: model is not SAS");
    return select_relay_for(model, codes, ctx);
}

std::size_t select_source_antenna(const LinkSet& links) {
    const std::size_t n = links.source_relay.front().rows();
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t a = 0; a < n; ++a) {
        double gain = 0.0;
        for (const auto& f : links.source_relay)
            for (std::size_t c = 0; c < f.cols(); ++c) gain += std::norm(f(a, c));
        if (gain > best_gain) {
            best_gain = gain;
            best = a;
        }
    }
    return best;
}

CVector source_antenna_weights(std::size_t n_antennas, std::size_t antenna) {
    if (antenna >= n_antennas) throw InvalidParameter("source_antenna_weights: antenna out of range");
    CVector w(n_antennas);
    w[antenna] = std::sqrt(static_cast<double>(n_antennas));
    return w;
}

OptimizerState initialize_codes(RngStream& rng, const SystemModel& model, double p_r) {
    if (!(p_r > 0.0)) throw InvalidParameter("initialize_codes: P_R must be positive");
    const std::size_t rows = model.code_rows();
    const std::size_t count = model.branches.size();
    // One joint draw over the stacked set is uniform on the sphere of the whole set.
    const CMatrix stacked = sample_uniform_sphere_matrix(rng, {std::sqrt(p_r), count * rows, rows});
    OptimizerState s;
    for (std::size_t b = 0; b < count; ++b) {
        CMatrix phi(rows, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < rows; ++j) phi(i, j) = stacked(b * rows + i, j);
        s.codes.phi.push_back(std::move(phi));
    }
    return s;
}

ActiveSet select_active(const SystemModel& model, const CodeSet& codes, const PolicyContext& ctx) {
    if (!selects_relay(ctx.policy)) return allocate(model, ctx, std::nullopt);
    return allocate(model, ctx, select_relay_for(model, codes, ctx));
}

BlockResult run_block_optimization(const SystemModel& model, std::span<const cplx> r,
                                   std::span<const SymbolVector> codebook, OptimizerState state,
                                   const ActiveSet& active, const SGConfig& sg, const PolicyContext& ctx) {
    if (!(sg.beta >= 0.0)) throw InvalidParameter("run_block_optimization: beta must be non-negative");
    if (codebook.empty()) throw InvalidParameter("run_block_optimization: empty codebook");
    BlockResult out;
    const double budget = active_budget(model, ctx, active);

    std::optional<std::size_t> fixed_index;
    for (std::size_t it = 0; it < sg.iterations; ++it) {
        const CandidateImages images(effective_signal_map(model, state.codes, active.gains), codebook);
        std::size_t idx;
        if (sg.redetect_each_iteration || !fixed_index) {
            idx = images.detect_index(r);
            fixed_index = idx;
        } else {
            idx = *fixed_index;
        }
        const SymbolVector& s_hat = codebook[idx];

        CVector e(r.begin(), r.end());
        const CVector& img = images.image(idx);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= img[i];
        state.objective_trace.push_back(frobenius_norm_sq(e));

        std::vector<CMatrix> grads;
        grads.reserve(model.branches.size());
        for (std::size_t b = 0; b < model.branches.size(); ++b)
            grads.push_back(branch_gradient(model, active.gains, e, s_hat, b));
        sg_step(state.codes, grads, sg.beta, active.branches);
        normalize_power(state.codes, active.branches, budget);
        out.normalized_power.push_back(state.codes.trace_power(active.branches));
        out.normalized_budget.push_back(budget);
    }

    out.detection = CandidateImages(effective_signal_map(model, state.codes, active.gains), codebook).detect(r);
    out.next_active = select_active(model, state.codes, ctx);
    out.selected_relay = out.next_active.relay.value_or(0);
    out.state = std::move(state);
    return out;
}

BlockResult run_block_optimization(const SystemModel& model, std::span<const cplx> r,
                                   std::span<const SymbolVector> codebook, const SGConfig& sg,
                                   const PolicyContext& ctx, RngStream& rng) {
    OptimizerState init = initialize_codes(rng, model, ctx.p_r);
    const ActiveSet active = select_active(model, init.codes, ctx);
    return run_block_optimization(model, r, codebook, std::move(init), active, sg, ctx);
}

}  // namespace coopstc
