#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "coopstc/detection.hpp"
#include "coopstc/relaying.hpp"

namespace coopstc {

/// Delay-tolerant adjustable code matrix optimization with opportunistic
/// relaying. The destination fits the relays' code matrices to each received
/// vector by stochastic gradient descent on the ML residual, renormalizes them
/// to the trace budget, picks the relay to use next, and feeds the result back.

struct SGConfig {
    double beta = 0.03;
    std::size_t iterations = 50;
    bool redetect_each_iteration = true;
};

enum class Policy { Equal, Or, Os, Fo };
Policy parse_policy(std::string_view name);
std::string_view to_string(Policy p);
bool selects_relay(Policy p);
bool selects_source_antenna(Policy p);

struct NoiseLevels {
    double sigma2_n1 = 1.0;
    double sigma2_d = 1.0;
    double sigma2_s = 1.0;
};

/// Power budgets and noise levels that turn a policy into per-branch AF gains.
struct PolicyContext {
    Policy policy = Policy::Equal;
    double p1 = 1.0;
    double p2 = 1.0;
    double p_r = 1.0;
    double sigma2_f = 1.0;
    NoiseLevels noise;
};

/// Branches that transmit, their AF gains (zero when idle) and the selected
/// relay if the policy selects one.
struct ActiveSet {
    std::vector<std::size_t> branches;
    std::vector<double> gains;
    std::optional<std::size_t> relay;
};

/// Equal split of P2 over all branches, or all of P2 to the branches of `relay`.
ActiveSet allocate(const SystemModel& model, const PolicyContext& ctx, std::optional<std::size_t> relay);

/// Trace budget for a subset of branches: P_R scaled by the subset's share of all branches.
double active_budget(const SystemModel& model, const PolicyContext& ctx, const ActiveSet& active);

// --- objective and gradients -------------------------------------------------

/// ||r - prefactor * sum rho Phi_eq H_eq s_hat||^2.
double lagrangian(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                  std::span<const cplx> r, std::span<const cplx> s_hat);

/// dL/dPhi* for every branch (zero for idle branches). T x T per branch for
/// MAS, 1 x 1 for SAS. A real perturbation eps of entry (a,b) changes L by
/// 2 eps Re(grad(a,b)) to first order; an imaginary one by 2 eps Im(grad(a,b)).
std::vector<CMatrix> sg_gradients(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                                  std::span<const cplx> r, std::span<const cplx> s_hat);
CMatrix sg_gradient(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                    std::span<const cplx> r, std::span<const cplx> s_hat, std::size_t branch);

/// Adjoint of Phi -> Phi_eq: collapses a gradient with respect to the full
/// receive-space code matrix onto the branch's T x T (MAS) or scalar (SAS) parameter.
CMatrix project_to_code(const SystemModel& model, std::size_t branch, const CMatrix& full);

/// Phi <- Phi - beta * grad for each listed branch.
void sg_step(CodeSet& codes, std::span<const CMatrix> gradients, double beta, std::span<const std::size_t> branches);

/// Scales the listed branches by one common positive factor so that their
/// summed Tr(Phi Phi^H) equals budget. Returns the factor. Throws
/// DegenerateStateError if they are all zero.
double normalize_power(CodeSet& codes, std::span<const std::size_t> branches, double budget);
double normalize_power(CodeSet& codes, double budget);

// --- opportunistic selection ---------------------------------------------------

struct SelectionTerm {
    double gain;           // rho
    double signal_energy;  // ||Phi_eq H_eq||_F^2
    double noise_energy;   // ||Phi_eq G_eq||_F^2
};

struct RelayCandidate {
    double snr_ins = 1.0;  // first-hop multiplier (MAS only)
    std::vector<SelectionTerm> terms;
};

struct SelectionConstants {
    double p1 = 1.0;
    std::size_t block_length = 2;
    std::size_t n_antennas = 2;
    NoiseLevels noise;
};

/// snr_ins * sum_j P1 T rho^2 ||Phi H||^2 sigma_s^2 / (N rho^2 ||Phi G||^2 sigma_n1^2 + sigma_d^2).
double relay_metric(const RelayCandidate& c, const SelectionConstants& k);
/// argmax of relay_metric, ties to the lowest index.
std::size_t select_relay(std::span<const RelayCandidate> candidates, const SelectionConstants& k);

/// Per-relay selection inputs; MAS candidates carry snr_ins = P1 ||F_k||^2 / (N sigma_n1^2).
std::vector<RelayCandidate> relay_candidates(const SystemModel& model, const CodeSet& codes, double gain_if_selected,
                                             double p1, const NoiseLevels& noise);
std::size_t select_relay_mas(const SystemModel& model, const CodeSet& codes, const PolicyContext& ctx);
std::size_t select_relay_sas(const SystemModel& model, const CodeSet& codes, const PolicyContext& ctx);

/// Source antenna with the largest summed first-hop gain.
std::size_t select_source_antenna(const LinkSet& links);
/// sqrt(N) on the chosen antenna, zero elsewhere (same total source power).
CVector source_antenna_weights(std::size_t n_antennas, std::size_t antenna);

// --- block optimization ----------------------------------------------------------

struct OptimizerState {
    CodeSet codes;
    std::vector<double> objective_trace;
};

/// Uniform-sphere draw of the whole code set with radius sqrt(P_R).
OptimizerState initialize_codes(RngStream& rng, const SystemModel& model, double p_r);

struct BlockResult {
    OptimizerState state;
    ActiveSet next_active;
    std::size_t selected_relay = 0;
    Detection detection;                     // last in-loop detection
    std::vector<double> normalized_power;    // summed trace after each normalization
    std::vector<double> normalized_budget;   // the budget each normalization targeted
};

/// Runs `iterations` rounds of {detect, gradient, step, normalize} on the
/// received vector r with the currently active branches, then re-selects the
/// relay for the next transmission under ctx.policy.
BlockResult run_block_optimization(const SystemModel& model, std::span<const cplx> r,
                                   std::span<const SymbolVector> codebook, OptimizerState state,
                                   const ActiveSet& active, const SGConfig& sg, const PolicyContext& ctx);

/// As above, starting from a fresh uniform-sphere initialization and the
/// policy's initial selection.
BlockResult run_block_optimization(const SystemModel& model, std::span<const cplx> r,
                                   std::span<const SymbolVector> codebook, const SGConfig& sg,
                                   const PolicyContext& ctx, RngStream& rng);

/// Selection for the current codes under ctx.policy (relay for OR/FO).
ActiveSet select_active(const SystemModel& model, const CodeSet& codes, const PolicyContext& ctx);

}  // namespace coopstc
