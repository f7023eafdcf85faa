#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coopstc/channel.hpp"
#include "coopstc/modem.hpp"
#include "coopstc/stcodes.hpp"

namespace coopstc {

/// AF scaling rho = sqrt(P / (sigma2_F * P1 + sigma2_n1)).
/// Throws InvalidParameter for non-positive powers or a non-positive denominator.
double amplification_gain(double p_branch, double sigma2_f, double p1, double sigma2_n1);

/// Source, relay and code-matrix power budgets.
struct PowerAllocation {
    double p1 = 1.0;
    double p2 = 1.0;
    double p_r = 1.0;
    std::vector<double> branch_power;  // P_{k,j}; sums to p2 over the active branches
};

/// Adjustable code matrices, one per branch: T x T for MAS, 1 x 1 (a scalar)
/// for SAS.
struct CodeSet {
    std::vector<CMatrix> phi;

    double trace_power() const;
    double trace_power(std::span<const std::size_t> subset) const;
};

/// Everything the destination knows about one fading block.
struct SystemModel {
    SystemType system = SystemType::Mas;
    std::size_t block_length = 2;  // T
    std::size_t n_antennas = 2;    // N, at source and destination
    std::size_t n_relays = 1;
    std::size_t window = 2;        // T + delta_max
    std::size_t relay_noise_dim = 2;
    double prefactor = 1.0;        // sqrt(P1 T / N); scales the signal only
    std::vector<Branch> branches;
    std::optional<WidelyLinear> direct;  // s -> T*N direct-link samples, no prefactor
    std::vector<double> first_hop_gain;  // ||F_k||_F^2 per relay

    std::size_t relay_part_length() const { return n_antennas * window; }
    std::size_t receive_length() const { return relay_part_length() + (direct ? direct->rows() : 0); }
    std::size_t code_rows() const { return system == SystemType::Mas ? block_length : 1; }
    std::vector<std::size_t> branches_of(std::size_t relay) const;
};

struct ModelParams {
    SystemType system = SystemType::Mas;
    double p1 = 1.0;
    CVector source_weights;  // empty = all source antennas
};

SystemModel build_system_model(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                               const DelayProfile& profile, const ModelParams& params);

/// The block-diagonal code matrix of a branch in receive-vector coordinates
/// (relay part only): I_N (x) J Phi J^T for MAS, phi * I for SAS.
CMatrix phi_eq(const SystemModel& model, std::size_t branch, const CMatrix& phi);

/// Per-branch AF gains given per-branch powers (zero power = inactive branch).
std::vector<double> branch_gains(std::span<const double> branch_power, double sigma2_f, double p1, double sigma2_n1);

struct NoiseSample {
    std::vector<CVector> relay;  // vec(N_k) per relay
    CVector destination;
};

NoiseSample draw_noise(RngStream& rng, const SystemModel& model, double sigma2_n1, double sigma2_d);

struct ReceiveVector {
    CVector r;
};

/// r = prefactor * sum rho Phi_eq H_eq s + sum rho Phi_eq G_eq n_k + n_d, with
/// the given noise realization. Inactive branches (rho == 0) contribute nothing.
ReceiveVector transmit(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                       std::span<const double> gains, const NoiseSample& noise);

/// The noiseless model output, used by detection and the optimizer.
CVector signal_part(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                    std::span<const double> gains);

/// prefactor * sum_b rho_b Phi_eq,b H_eq,b (+ direct link) as one widely-linear map.
WidelyLinear effective_signal_map(const SystemModel& model, const CodeSet& codes, std::span<const double> gains);

/// Draws noise and transmits; throws PowerConstraintError if the code set
/// exceeds the trace budget, and ShapeError for the wrong system type.
ReceiveVector transmit_mas(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                           std::span<const double> gains, double p_r, double sigma2_n1, double sigma2_d,
                           RngStream& rng);
ReceiveVector transmit_sas(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                           std::span<const double> gains, double p_r, double sigma2_n1, double sigma2_d,
                           RngStream& rng);

}  // namespace coopstc
