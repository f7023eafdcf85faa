#pragma once

// Random test scenarios and a slot-by-slot reference simulation of the
// two-hop network. The reference walks over time slots and antennas with
// plain loops and never touches the library's windowed matrix embedding.

#include <cmath>
#include <optional>
#include <vector>

#include "coopstc/acmoro.hpp"
#include "coopstc/channel.hpp"
#include "coopstc/modem.hpp"
#include "coopstc/relaying.hpp"
#include "coopstc/stcodes.hpp"

namespace testsupport {

using namespace coopstc;

struct Scenario {
    SystemType system = SystemType::Mas;
    Scheme scheme = Scheme::DAlamouti;
    std::size_t n = 2;  // N = T
    DispersionSet dispersion;
    RelayCode code;
    LinkSet links;
    DelayProfile profile;
    CVector weights;
    double p1 = 1.0;
    SystemModel model;
    CodeSet codes;
    std::vector<double> gains;
};

struct ScenarioSpec {
    SystemType system = SystemType::Mas;
    Scheme scheme = Scheme::DAlamouti;
    std::size_t n = 2;
    std::vector<std::size_t> delays{0, 1};
    bool direct_link = false;
    bool select_antenna = false;
    double p1 = 1.0;
};

inline Scenario make_scenario(RngStream& rng, const ScenarioSpec& spec) {
    Scenario sc;
    sc.system = spec.system;
    sc.scheme = spec.scheme;
    sc.n = spec.n;
    sc.p1 = spec.p1;
    sc.dispersion = spec.scheme == Scheme::Ldc ? random_unitary_dispersion(rng, spec.n, spec.n) : alamouti_dispersion();
    ChannelConfig ch;
    ch.system = spec.system;
    ch.n_relays = spec.delays.size();
    ch.n_antennas = spec.n;
    ch.direct_link = spec.direct_link;
    sc.links = draw_block_fading(rng, ch);
    sc.code = make_relay_code(spec.scheme, sc.dispersion, ch.n_relays, rng);
    sc.profile = DelayProfile::make(spec.delays);
    sc.weights = spec.select_antenna ? source_antenna_weights(spec.n, rng.uniform_index(spec.n))
                                     : all_source_antennas(spec.n);
    sc.model = build_system_model(sc.links, sc.dispersion, sc.code, sc.profile, {spec.system, spec.p1, sc.weights});
    const std::size_t rows = sc.model.code_rows();
    for (std::size_t b = 0; b < sc.model.branches.size(); ++b) {
        sc.codes.phi.push_back(complex_gaussian(rng, rows, rows, 1.0));
        sc.gains.push_back(0.2 + 1.8 * rng.uniform());
    }
    return sc;
}

inline std::vector<SymbolVector> random_codebook(Modulation m, std::size_t n) {
    return enumerate_codebook(Constellation::make(m), n);
}

inline CVector random_vector(RngStream& rng, std::size_t n, double variance = 1.0) {
    CVector v(n);
    for (auto& z : v) z = rng.complex_normal(variance);
    return v;
}

// Source block S[t][n], written out per scheme.
inline std::vector<std::vector<cplx>> source_block(const Scenario& sc, const CVector& s) {
    const std::size_t t_len = sc.n;
    std::vector<std::vector<cplx>> S(t_len, std::vector<cplx>(sc.n));
    if (sc.scheme == Scheme::Ldc) {
        for (std::size_t n = 0; n < sc.n; ++n)
            for (std::size_t t = 0; t < t_len; ++t)
                for (std::size_t i = 0; i < t_len; ++i) S[t][n] += sc.dispersion.matrices[n](t, i) * s[i];
    } else {
        S[0][0] = s[0];
        S[1][0] = s[1];
        S[0][1] = -std::conj(s[1]);
        S[1][1] = std::conj(s[0]);
    }
    return S;
}

// Slot-by-slot receive vector, antenna-major over the window, then the
// direct-link slots per destination antenna. Noise is taken in the library's
// sample layout: relay noise column by column (antenna i, slot t at i*T + t),
// destination noise at m*window + t.
inline CVector simulate_slots(const Scenario& sc, const CVector& s, const NoiseSample& noise) {
    const std::size_t T = sc.n;
    const std::size_t N = sc.n;
    const std::size_t n_r = sc.links.source_relay.size();
    std::size_t delta_max = 0;
    for (auto d : sc.profile.delays) delta_max = std::max(delta_max, d);
    const std::size_t window = T + delta_max;
    const double c = std::sqrt(sc.p1 * static_cast<double>(T) / static_cast<double>(N));
    const auto S = source_block(sc, s);

    std::vector<cplx> R(N * window);
    for (std::size_t m = 0; m < N; ++m)
        for (std::size_t t = 0; t < window; ++t) R[m * window + t] = noise.destination[m * window + t];

    std::size_t branch = 0;
    for (std::size_t k = 0; k < n_r; ++k) {
        const std::size_t delay = sc.profile.delays[k];
        const CMatrix& F = sc.links.source_relay[k];
        const CMatrix& G = sc.links.relay_dest[k];
        if (sc.system == SystemType::Mas) {
            // Received per relay antenna i, then mixed across antennas.
            std::vector<std::vector<cplx>> x(T, std::vector<cplx>(N));
            for (std::size_t t = 0; t < T; ++t)
                for (std::size_t i = 0; i < N; ++i) {
                    cplx acc{};
                    for (std::size_t n = 0; n < N; ++n) acc += S[t][n] * sc.weights[n] * F(n, i);
                    x[t][i] = c * acc + noise.relay[k][i * T + t];
                }
            const CMatrix& M = sc.code.mixing[k];
            for (std::size_t j = 0; j < N; ++j, ++branch) {
                const double rho = sc.gains[branch];
                if (rho == 0.0) continue;
                const CMatrix& phi = sc.codes.phi[branch];
                std::vector<cplx> y(T);
                for (std::size_t t = 0; t < T; ++t)
                    for (std::size_t i = 0; i < N; ++i) y[t] += x[t][i] * M(i, j);
                for (std::size_t t = 0; t < T; ++t) {
                    cplx z{};
                    for (std::size_t tau = 0; tau < T; ++tau) z += phi(t, tau) * y[tau];
                    z *= rho;
                    for (std::size_t m = 0; m < N; ++m) R[m * window + t + delay] += G(j, m) * z;
                }
            }
        } else {
            std::vector<cplx> x(T);
            for (std::size_t t = 0; t < T; ++t) {
                cplx acc{};
                for (std::size_t n = 0; n < N; ++n) acc += S[t][n] * sc.weights[n] * F(n, 0);
                x[t] = c * acc + noise.relay[k][t];
            }
            // Relay codeword built from its own received samples.
            std::vector<std::vector<cplx>> C(T, std::vector<cplx>(N));
            if (sc.scheme == Scheme::Ldc) {
                for (std::size_t n = 0; n < N; ++n)
                    for (std::size_t t = 0; t < T; ++t)
                        for (std::size_t i = 0; i < T; ++i) C[t][n] += sc.dispersion.matrices[n](t, i) * x[i];
            } else {
                C[0][0] = x[0];
                C[1][0] = x[1];
                C[0][1] = -std::conj(x[1]);
                C[1][1] = std::conj(x[0]);
            }
            const double rho = sc.gains[branch];
            const cplx phi = sc.codes.phi[branch](0, 0);
            ++branch;
            if (rho == 0.0) continue;
            for (std::size_t t = 0; t < T; ++t) {
                cplx u{};
                for (std::size_t n = 0; n < N; ++n) u += C[t][n] * sc.code.combining[k][n];
                for (std::size_t m = 0; m < N; ++m) R[m * window + t + delay] += G(0, m) * rho * phi * u;
            }
        }
    }

    if (sc.links.direct) {
        const CMatrix& H = *sc.links.direct;
        const std::size_t off = N * window;
        R.resize(off + N * T);
        for (std::size_t m = 0; m < N; ++m)
            for (std::size_t t = 0; t < T; ++t) {
                cplx acc{};
                for (std::size_t n = 0; n < N; ++n) acc += S[t][n] * sc.weights[n] * H(n, m);
                R[off + m * T + t] = c * acc + noise.destination[off + m * T + t];
            }
    }
    return R;
}

// All delay profiles of n_r relays with entries in [0, delta_max_cap] and
// minimum zero.
inline std::vector<std::vector<std::size_t>> delay_profiles(std::size_t n_r, std::size_t cap) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> d(n_r, 0);
    while (true) {
        if (*std::min_element(d.begin(), d.end()) == 0) out.push_back(d);
        std::size_t i = 0;
        while (i < n_r && d[i] == cap) d[i++] = 0;
        if (i == n_r) break;
        ++d[i];
    }
    return out;
}

}  // namespace testsupport
