#include "coopstc/channel.hpp"

#include <algorithm>

#include "coopstc/errors.hpp"

namespace coopstc {

SystemType parse_system(std::string_view name) {
    if (name == "mas") return SystemType::Mas;
    if (name == "sas") return SystemType::Sas;
    if (name == "p2p") return SystemType::PointToPoint;
    throw ConfigError("unknown system '" + std::string(name) + "' (expected mas | sas | p2p)");
}

std::string_view to_string(SystemType s) {
    switch (s) {
        case SystemType::Mas: return "mas";
        case SystemType::Sas: return "sas";
        case SystemType::PointToPoint: return "p2p";
    }
    return "?";
}

DelayProfile DelayProfile::make(std::vector<std::size_t> delays) {
    if (delays.empty()) throw InvalidParameter("DelayProfile: empty delay list");
    if (*std::min_element(delays.begin(), delays.end()) != 0)
        throw InvalidParameter("DelayProfile: delays must be relative to the earliest relay (min == 0)");
    DelayProfile p;
    p.delta_max = *std::max_element(delays.begin(), delays.end());
    p.delays = std::move(delays);
    return p;
}

LinkSet draw_block_fading(RngStream& rng, const ChannelConfig& cfg) {
    if (!(cfg.sigma2_f > 0.0) || !(cfg.sigma2_g > 0.0) || !(cfg.sigma2_direct > 0.0))
        throw InvalidParameter("draw_block_fading: channel variances must be positive");
    if (cfg.n_relays == 0 || cfg.n_antennas == 0) throw InvalidParameter("draw_block_fading: empty network");
    const std::size_t n = cfg.n_antennas;
    const std::size_t relay_antennas = cfg.system == SystemType::Mas ? n : 1;
    LinkSet links;
    for (std::size_t k = 0; k < cfg.n_relays; ++k) {
        links.source_relay.push_back(complex_gaussian(rng, n, relay_antennas, cfg.sigma2_f));
        links.relay_dest.push_back(complex_gaussian(rng, relay_antennas, n, cfg.sigma2_g));
    }
    if (cfg.direct_link) links.direct = complex_gaussian(rng, n, n, cfg.sigma2_direct);
    return links;
}

CMatrix shift_operator(std::size_t delta, std::size_t inner, std::size_t window) {
    if (window < inner + delta) throw ShapeError("shift_operator: window shorter than delayed sequence");
    CMatrix j(window, inner);
    for (std::size_t t = 0; t < inner; ++t) j(delta + t, t) = 1.0;
    return j;
}

CVector all_source_antennas(std::size_t n_antennas) { return CVector(n_antennas, cplx{1.0, 0.0}); }

namespace {

void check_relay(const LinkSet& links, const DelayProfile& profile, std::size_t relay) {
    if (relay >= links.source_relay.size()) throw ShapeError("branch: relay index out of range");
    if (profile.delays.size() != links.source_relay.size())
        throw ShapeError("branch: delay profile length does not match relay count");
}

}  // namespace

Branch make_branch_mas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                       const DelayProfile& profile, std::size_t relay, std::size_t antenna,
                       std::span<const cplx> source_weights) {
    check_relay(links, profile, relay);
    const CMatrix& f = links.source_relay[relay];
    const std::size_t n = f.rows();
    const std::size_t t = d.block_length();
    if (f.cols() != n || antenna >= n) throw ShapeError("make_branch_mas: expected N x N source-relay channel");
    if (source_weights.size() != n) throw ShapeError("make_branch_mas: source weight length != N");
    const CMatrix& mix = code.mixing.at(relay);

    // Signal entering relay antenna path j after the relay mixing: S(s) diag(w) F_k M_k e_j.
    CMatrix weighted_f = f;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) weighted_f(r, c) *= source_weights[r];
    const CVector a = matmul(weighted_f, mix).col(antenna);

    // Noise path: N_k M_k e_j, with vec(N_k) stacked column by column.
    CMatrix noise_map(t, t * n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t s = 0; s < t; ++s) noise_map(s, m * t + s) = mix(m, antenna);

    const CMatrix& gd = links.relay_dest[relay];
    CVector g(gd.cols());
    for (std::size_t m = 0; m < gd.cols(); ++m) g[m] = gd(antenna, m);

    return Branch{relay, antenna, profile.delays[relay], std::move(g), weighted_column_map(d, a),
                  WidelyLinear::linear(std::move(noise_map))};
}

Branch make_branch_sas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                       const DelayProfile& profile, std::size_t relay, std::span<const cplx> source_weights) {
    check_relay(links, profile, relay);
    const CMatrix& f = links.source_relay[relay];
    if (f.cols() != 1) throw ShapeError("make_branch_sas: expected N x 1 source-relay channel");
    if (source_weights.size() != f.rows()) throw ShapeError("make_branch_sas: source weight length != N");
    CVector a(f.rows());
    for (std::size_t r = 0; r < f.rows(); ++r) a[r] = f(r, 0) * source_weights[r];

    const WidelyLinear relay_map = relay_transmit_map(code, relay);
    const CMatrix& gd = links.relay_dest[relay];
    if (gd.rows() != 1) throw ShapeError("make_branch_sas: expected 1 x N relay-destination channel");
    return Branch{relay, 0, profile.delays[relay], CVector(gd.data().begin(), gd.data().end()),
                  compose(relay_map, weighted_column_map(d, a)), relay_map};
}

EquivalentChannel equivalent_channel(const Branch& b, std::size_t window) {
    const std::size_t t = b.signal_in.rows();
    const CMatrix spread = kron(CMatrix::column(b.g), shift_operator(b.delay, t, window));
    return {left_multiply(spread, b.signal_in), left_multiply(spread, b.noise_in), window, b.g.size()};
}

EquivalentChannel build_equivalent_mas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                                       const DelayProfile& profile, std::size_t relay, std::size_t antenna) {
    const std::size_t n = links.source_relay.at(relay).rows();
    const Branch b = make_branch_mas(links, d, code, profile, relay, antenna, all_source_antennas(n));
    return equivalent_channel(b, d.block_length() + profile.delta_max);
}

EquivalentChannel build_equivalent_sas(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                                       const DelayProfile& profile, std::size_t relay) {
    const std::size_t n = links.source_relay.at(relay).rows();
    const Branch b = make_branch_sas(links, d, code, profile, relay, all_source_antennas(n));
    return equivalent_channel(b, d.block_length() + profile.delta_max);
}

CVector awgn_vector(RngStream& rng, std::size_t n, double variance) {
    if (variance < 0.0) throw InvalidParameter("awgn: negative variance");
    CVector v(n);
    if (variance == 0.0) return v;
    for (auto& z : v) z = rng.complex_normal(variance);
    return v;
}

CVector add_awgn(RngStream& rng, std::span<const cplx> signal, double variance) {
    CVector out(signal.begin(), signal.end());
    if (variance < 0.0) throw InvalidParameter("add_awgn: negative variance");
    if (variance == 0.0) return out;
    for (auto& z : out) z += rng.complex_normal(variance);
    return out;
}

}  // namespace coopstc
