#include "coopstc/relaying.hpp"

#include <cmath>

#include "coopstc/errors.hpp"

namespace coopstc {

double amplification_gain(double p_branch, double sigma2_f, double p1, double sigma2_n1) {
    if (p_branch < 0.0 || !(sigma2_f > 0.0) || !(p1 > 0.0) || sigma2_n1 < 0.0)
        throw InvalidParameter("amplification_gain: powers must be positive");
    const double denom = sigma2_f * p1 + sigma2_n1;
    if (!(denom > 0.0)) throw InvalidParameter("amplification_gain: zero denominator");
    return std::sqrt(p_branch / denom);
}

double CodeSet::trace_power() const {
    double acc = 0.0;
    for (const auto& m : phi) acc += coopstc::trace_power(m);
    return acc;
}

double CodeSet::trace_power(std::span<const std::size_t> subset) const {
    double acc = 0.0;
    for (std::size_t b : subset) acc += coopstc::trace_power(phi.at(b));
    return acc;
}

std::vector<std::size_t> SystemModel::branches_of(std::size_t relay) const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < branches.size(); ++b)
        if (branches[b].relay == relay) out.push_back(b);
    return out;
}

SystemModel build_system_model(const LinkSet& links, const DispersionSet& d, const RelayCode& code,
                               const DelayProfile& profile, const ModelParams& params) {
    if (params.system == SystemType::PointToPoint) throw InvalidParameter("build_system_model: p2p has no relays");
    if (!(params.p1 > 0.0)) throw InvalidParameter("build_system_model: P1 must be positive");
    SystemModel m;
    m.system = params.system;
    m.block_length = d.block_length();
    m.n_antennas = d.columns();
    m.n_relays = links.source_relay.size();
    m.window = m.block_length + profile.delta_max;
    m.prefactor = std::sqrt(params.p1 * static_cast<double>(m.block_length) / static_cast<double>(m.n_antennas));
    const CVector weights = params.source_weights.empty() ? all_source_antennas(m.n_antennas) : params.source_weights;

    for (std::size_t k = 0; k < m.n_relays; ++k) {
        m.first_hop_gain.push_back(frobenius_norm_sq(links.source_relay[k]));
        if (m.system == SystemType::Mas) {
            for (std::size_t j = 0; j < m.n_antennas; ++j)
                m.branches.push_back(make_branch_mas(links, d, code, profile, k, j, weights));
        } else {
            m.branches.push_back(make_branch_sas(links, d, code, profile, k, weights));
        }
    }
    m.relay_noise_dim = m.branches.front().noise_in.cols();
    if (links.direct) {
        const CMatrix& h = *links.direct;
        const std::size_t t = m.block_length;
        WidelyLinear direct = WidelyLinear::zeros(t * h.cols(), m.n_antennas);
        for (std::size_t dest = 0; dest < h.cols(); ++dest) {
            CVector w = h.col(dest);
            for (std::size_t n = 0; n < w.size(); ++n) w[n] *= weights[n];
            const WidelyLinear col = weighted_column_map(d, w);
            for (std::size_t s = 0; s < t; ++s)
                for (std::size_t c = 0; c < m.n_antennas; ++c) {
                    direct.lin(dest * t + s, c) = col.lin(s, c);
                    direct.conj_part(dest * t + s, c) = col.conj_part(s, c);
                }
        }
        m.direct = std::move(direct);
    }
    return m;
}

CMatrix phi_eq(const SystemModel& model, std::size_t branch, const CMatrix& phi) {
    const Branch& b = model.branches.at(branch);
    const std::size_t t = model.block_length;
    if (model.system == SystemType::Mas) {
        if (phi.rows() != t || phi.cols() != t) throw ShapeError("phi_eq: MAS code matrix must be T x T");
        const CMatrix j = shift_operator(b.delay, t, model.window);
        return block_diag_repeat(j * phi * transpose(j), model.n_antennas);
    }
    if (phi.rows() != 1 || phi.cols() != 1) throw ShapeError("phi_eq: SAS code must be a scalar");
    return scale(CMatrix::identity(model.relay_part_length()), phi(0, 0));
}

std::vector<double> branch_gains(std::span<const double> branch_power, double sigma2_f, double p1, double sigma2_n1) {
    std::vector<double> gains(branch_power.size(), 0.0);
    for (std::size_t b = 0; b < branch_power.size(); ++b)
        if (branch_power[b] > 0.0) gains[b] = amplification_gain(branch_power[b], sigma2_f, p1, sigma2_n1);
    return gains;
}

NoiseSample draw_noise(RngStream& rng, const SystemModel& model, double sigma2_n1, double sigma2_d) {
    NoiseSample n;
    n.relay.reserve(model.n_relays);
    for (std::size_t k = 0; k < model.n_relays; ++k) n.relay.push_back(awgn_vector(rng, model.relay_noise_dim, sigma2_n1));
    n.destination = awgn_vector(rng, model.receive_length(), sigma2_d);
    return n;
}

namespace {

void check_codes(const SystemModel& model, const CodeSet& codes, std::span<const double> gains) {
    if (codes.phi.size() != model.branches.size() || gains.size() != model.branches.size())
        throw ShapeError("transmit: one code matrix and one gain per branch required");
    const std::size_t rows = model.code_rows();
    for (const auto& phi : codes.phi)
        if (phi.rows() != rows || phi.cols() != rows) throw ShapeError("transmit: code matrix has wrong shape");
}

// out += g (x) J_delay z, antenna-major.
void scatter(const Branch& b, std::size_t window, std::span<const cplx> z, cplx weight, std::span<cplx> out) {
    for (std::size_t m = 0; m < b.g.size(); ++m) {
        const cplx gm = weight * b.g[m];
        cplx* dst = out.data() + m * window + b.delay;
        for (std::size_t t = 0; t < z.size(); ++t) dst[t] += gm * z[t];
    }
}

CVector apply_code(const SystemModel& model, const CMatrix& phi, const CVector& v) {
    if (model.system == SystemType::Mas) return apply(phi, v);
    CVector out = v;
    for (auto& z : out) z *= phi(0, 0);
    return out;
}

}  // namespace

ReceiveVector transmit(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                       std::span<const double> gains, const NoiseSample& noise) {
    check_codes(model, codes, gains);
    if (s.size() != model.branches.front().signal_in.cols()) throw ShapeError("transmit: symbol vector length");
    if (noise.relay.size() != model.n_relays || noise.destination.size() != model.receive_length())
        throw ShapeError("transmit: noise sample does not match model");
    ReceiveVector out{noise.destination};
    for (std::size_t b = 0; b < model.branches.size(); ++b) {
        if (gains[b] == 0.0) continue;
        const Branch& br = model.branches[b];
        CVector in = br.signal_in.apply(s);
        for (auto& z : in) z *= model.prefactor;
        const CVector n_in = br.noise_in.apply(noise.relay[br.relay]);
        for (std::size_t t = 0; t < in.size(); ++t) in[t] += n_in[t];
        scatter(br, model.window, apply_code(model, codes.phi[b], in), gains[b], out.r);
    }
    if (model.direct) {
        const CVector d = model.direct->apply(s);
        for (std::size_t i = 0; i < d.size(); ++i) out.r[model.relay_part_length() + i] += model.prefactor * d[i];
    }
    return out;
}

CVector signal_part(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                    std::span<const double> gains) {
    return effective_signal_map(model, codes, gains).apply(s);
}

WidelyLinear effective_signal_map(const SystemModel& model, const CodeSet& codes, std::span<const double> gains) {
    check_codes(model, codes, gains);
    const std::size_t n = model.branches.front().signal_in.cols();
    WidelyLinear w = WidelyLinear::zeros(model.receive_length(), n);
    for (std::size_t b = 0; b < model.branches.size(); ++b) {
        if (gains[b] == 0.0) continue;
        const Branch& br = model.branches[b];
        const cplx scale_b = model.prefactor * gains[b];
        for (int part = 0; part < 2; ++part) {
            const CMatrix& src = part == 0 ? br.signal_in.lin : br.signal_in.conj_part;
            CMatrix& dst = part == 0 ? w.lin : w.conj_part;
            if (src.is_zero()) continue;
            const CMatrix coded = model.system == SystemType::Mas ? matmul(codes.phi[b], src) : scale(src, codes.phi[b](0, 0));
            for (std::size_t m = 0; m < br.g.size(); ++m) {
                const cplx gm = scale_b * br.g[m];
                for (std::size_t t = 0; t < coded.rows(); ++t)
                    for (std::size_t c = 0; c < n; ++c) dst(m * model.window + br.delay + t, c) += gm * coded(t, c);
            }
        }
    }
    if (model.direct) {
        const std::size_t off = model.relay_part_length();
        for (std::size_t i = 0; i < model.direct->rows(); ++i)
            for (std::size_t c = 0; c < n; ++c) {
                w.lin(off + i, c) += model.prefactor * model.direct->lin(i, c);
                w.conj_part(off + i, c) += model.prefactor * model.direct->conj_part(i, c);
            }
    }
    return w;
}

namespace {

ReceiveVector transmit_checked(SystemType expected, const SystemModel& model, std::span<const cplx> s,
                               const CodeSet& codes, std::span<const double> gains, double p_r, double sigma2_n1,
                               double sigma2_d, RngStream& rng) {
    if (model.system != expected) throw ShapeError("transmit: model built for a different system type");
    if (codes.trace_power() > p_r * (1.0 + 1e-9))
        throw PowerConstraintError("transmit: code matrices exceed the trace budget P_R");
    const NoiseSample noise = draw_noise(rng, model, sigma2_n1, sigma2_d);
    return transmit(model, s, codes, gains, noise);
}

}  // namespace

ReceiveVector transmit_mas(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                           std::span<const double> gains, double p_r, double sigma2_n1, double sigma2_d,
                           RngStream& rng) {
    return transmit_checked(SystemType::Mas, model, s, codes, gains, p_r, sigma2_n1, sigma2_d, rng);
}

ReceiveVector transmit_sas(const SystemModel& model, std::span<const cplx> s, const CodeSet& codes,
                           std::span<const double> gains, double p_r, double sigma2_n1, double sigma2_d,
                           RngStream& rng) {
    return transmit_checked(SystemType::Sas, model, s, codes, gains, p_r, sigma2_n1, sigma2_d, rng);
}

}  // namespace coopstc
