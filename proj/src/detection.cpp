#include "coopstc/detection.hpp"

#include <limits>

#include "coopstc/errors.hpp"

namespace coopstc {

namespace {

WidelyLinear effective_map(const MLProblem& p) {
    if (p.terms.empty()) throw InvalidParameter("ml_detect: no model terms");
    WidelyLinear w = WidelyLinear::zeros(p.r.size(), p.terms.front().h_eq.cols());
    for (const auto& term : p.terms) {
        if (term.phi_eq.rows() != p.r.size() || term.h_eq.rows() != term.phi_eq.cols())
            throw ShapeError("ml_detect: model term does not match the receive vector");
        w = w + left_multiply(scale(term.phi_eq, p.prefactor * term.gain), term.h_eq);
    }
    return w;
}

double distance_sq(std::span<const cplx> a, std::span<const cplx> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
    return acc;
}

}  // namespace

CandidateImages::CandidateImages(const WidelyLinear& effective, std::span<const SymbolVector> codebook)
    : codebook_(codebook) {
    if (codebook.empty()) throw InvalidParameter("ml_detect: empty codebook");
    images_.reserve(codebook.size());
    for (const auto& s : codebook) images_.push_back(effective.apply(s));
}

std::size_t CandidateImages::detect_index(std::span<const cplx> r) const {
    if (r.size() != images_.front().size()) throw ShapeError("ml_detect: receive vector length");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const double d = distance_sq(r, images_[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

Detection CandidateImages::detect(std::span<const cplx> r) const {
    const std::size_t i = detect_index(r);
    return {i, codebook_[i], distance_sq(r, images_[i])};
}

Detection ml_detect(const MLProblem& p) {
    if (p.codebook.empty()) throw InvalidParameter("ml_detect: empty codebook");
    const CandidateImages images(effective_map(p), p.codebook);
    return images.detect(p.r);
}

CVector reconstruct_signal(const MLProblem& p, std::span<const cplx> s) { return effective_map(p).apply(s); }

Detection exhaustive_oracle(const MLProblem& p) {
    if (p.codebook.empty()) throw InvalidParameter("exhaustive_oracle: empty codebook");
    const std::size_t len = p.r.size();
    Detection best;
    best.metric = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < p.codebook.size(); ++idx) {
        const SymbolVector& s = p.codebook[idx];
        std::vector<cplx> model(len, cplx{});
        for (const auto& term : p.terms) {
            const std::size_t inner = term.h_eq.rows();
            std::vector<cplx> hs(inner, cplx{});
            for (std::size_t i = 0; i < inner; ++i)
                for (std::size_t j = 0; j < s.size(); ++j)
                    hs[i] += term.h_eq.lin(i, j) * s[j] + term.h_eq.conj_part(i, j) * std::conj(s[j]);
            for (std::size_t i = 0; i < len; ++i) {
                cplx acc{};
                for (std::size_t j = 0; j < inner; ++j) acc += term.phi_eq(i, j) * hs[j];
                model[i] += p.prefactor * term.gain * acc;
            }
        }
        double metric = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            const cplx d = p.r[i] - model[i];
            metric += d.real() * d.real() + d.imag() * d.imag();
        }
        if (metric < best.metric) {
            best.metric = metric;
            best.index = idx;
            best.symbols = s;
        }
    }
    return best;
}

MLProblem make_ml_problem(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                          CVector r, std::vector<SymbolVector> codebook) {
    const std::size_t len = model.receive_length();
    const std::size_t relay_len = model.relay_part_length();
    if (r.size() != len) throw ShapeError("make_ml_problem: receive vector length");
    MLProblem p{std::move(r), {}, std::move(codebook), model.prefactor};
    for (std::size_t b = 0; b < model.branches.size(); ++b) {
        if (gains[b] == 0.0) continue;
        const EquivalentChannel eq = equivalent_channel(model.branches[b], model.window);
        const CMatrix local = phi_eq(model, b, codes.phi.at(b));
        CMatrix full_phi(len, len);
        for (std::size_t i = 0; i < relay_len; ++i)
            for (std::size_t j = 0; j < relay_len; ++j) full_phi(i, j) = local(i, j);
        WidelyLinear h = WidelyLinear::zeros(len, eq.h_eq.cols());
        for (std::size_t i = 0; i < relay_len; ++i)
            for (std::size_t c = 0; c < eq.h_eq.cols(); ++c) {
                h.lin(i, c) = eq.h_eq.lin(i, c);
                h.conj_part(i, c) = eq.h_eq.conj_part(i, c);
            }
        p.terms.push_back({gains[b], std::move(full_phi), std::move(h)});
    }
    if (model.direct) {
        WidelyLinear h = WidelyLinear::zeros(len, model.direct->cols());
        for (std::size_t i = 0; i < model.direct->rows(); ++i)
            for (std::size_t c = 0; c < model.direct->cols(); ++c) {
                h.lin(relay_len + i, c) = model.direct->lin(i, c);
                h.conj_part(relay_len + i, c) = model.direct->conj_part(i, c);
            }
        p.terms.push_back({1.0, CMatrix::identity(len), std::move(h)});
    }
    return p;
}

}  // namespace coopstc
