#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "coopstc/numerics.hpp"
#include "coopstc/stcodes.hpp"

namespace coopstc {

/// MAS: relays with N antennas. SAS: single-antenna relays. PointToPoint is
/// the BPSK/AWGN calibration link used to validate the BER machinery.
enum class SystemType { Mas, Sas, PointToPoint };
SystemType parse_system(std::string_view name);
std::string_view to_string(SystemType s);

/// Integer symbol-period arrival offsets of each relay relative to the
/// earliest one, so min(delays) == 0.
struct DelayProfile {
    std::vector<std::size_t> delays;
    std::size_t delta_max = 0;

    /// Throws InvalidParameter if empty or if the smallest delay is not zero.
    static DelayProfile make(std::vector<std::size_t> delays);
    static DelayProfile synchronous(std::size_t n_relays) { return make(std::vector<std::size_t>(n_relays, 0)); }
};

struct ChannelConfig {
    SystemType system = SystemType::Mas;
    std::size_t n_relays = 2;
    std::size_t n_antennas = 2;
    double sigma2_f = 1.0;  // source -> relay
    double sigma2_g = 1.0;  // relay -> destination
    double sigma2_direct = 1.0;
    bool direct_link = false;
};

/// One quasi-static fading realization.
///   MAS: source_relay[k] is N x N (source antenna x relay antenna),
///        relay_dest[k] is N x N, row j holding g_{k,j} over the destination antennas.
///   SAS: source_relay[k] is N x 1, relay_dest[k] is 1 x N.
struct LinkSet {
    std::vector<CMatrix> source_relay;
    std::vector<CMatrix> relay_dest;
    std::optional<CMatrix> direct;  // N x N source -> destination
};

LinkSet draw_block_fading(RngStream& rng, const ChannelConfig& cfg);

/// window x inner matrix with ones at (delta + t, t): delays a length-`inner`
/// sequence by `delta` slots inside the window.
CMatrix shift_operator(std::size_t delta, std::size_t inner, std::size_t window);

/// One forwarding path into the destination: a relay antenna (MAS) or a
/// single-antenna relay (SAS). The adjustable code acts on the T-vector
/// entering the branch; the result is delayed and spread over the receive
/// antennas by g.
struct Branch {
    std::size_t relay = 0;
    std::size_t antenna = 0;
    std::size_t delay = 0;
    CVector g;                // one coefficient per destination antenna
    WidelyLinear signal_in;   // s -> T-vector (without the source power prefactor)
    WidelyLinear noise_in;    // vec(relay noise) -> T-vector
};

/// Delay-embedded matrices of one branch with the adjustable code set to
/// identity: h_eq maps s, g_eq maps the relay noise, both into the
/// (receive antennas x window) receive vector, antenna-major.
struct EquivalentChannel {
    WidelyLinear h_eq;
    WidelyLinear g_eq;
    std::size_t window;
    std::size_t receive_antennas;
};

/// Source antenna weights applied to the dispersion columns; all ones unless
/// a source antenna has been selected.
CVector all_source_antennas(std::size_t n_antennas);

Branch make_branch_mas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                       const DelayProfile& profile, std::size_t relay, std::size_t antenna,
                       std::span<const cplx> source_weights);
Branch make_branch_sas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                       const DelayProfile& profile, std::size_t relay, std::span<const cplx> source_weights);

EquivalentChannel equivalent_channel(const Branch& b, std::size_t window);

EquivalentChannel build_equivalent_mas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                                       const DelayProfile& profile, std::size_t relay, std::size_t antenna);
EquivalentChannel build_equivalent_sas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                                       const DelayProfile& profile, std::size_t relay);

/// signal + CN(0, variance) noise; variance 0 returns the input unchanged.
CVector add_awgn(RngStream& rng, std::span<const cplx> signal, double variance);
/// Zero-mean noise vector, zeros when variance is 0.
CVector awgn_vector(RngStream& rng, std::size_t n, double variance);

}  // namespace coopstc
