#include "coopstc/stcodes.hpp"

#include <cmath>

#include "coopstc/errors.hpp"

namespace coopstc {

DispersionSet alamouti_dispersion() {
    return {{CMatrix::identity(2), CMatrix{{0.0, -1.0}, {1.0, 0.0}}}, {false, true}};
}

DispersionSet random_unitary_dispersion(RngStream& rng, std::size_t block_length, std::size_t columns) {
    DispersionSet d;
    for (std::size_t n = 0; n < columns; ++n) {
        d.matrices.push_back(random_unitary(rng, block_length));
        d.conjugate.push_back(false);
    }
    return d;
}

CMatrix encode_source(std::span<const cplx> s, const DispersionSet& d) {
    const std::size_t t = d.block_length();
    if (s.size() != d.matrices.front().cols()) throw ShapeError("encode_source: symbol vector length does not match T");
    CMatrix block(t, d.columns());
    const CVector sc = conj(s);
    for (std::size_t n = 0; n < d.columns(); ++n) {
        block.set_col(n, apply(d.matrices[n], d.conjugate[n] ? std::span<const cplx>(sc) : s));
    }
    return block;
}

WidelyLinear weighted_column_map(const DispersionSet& d, std::span<const cplx> w) {
    if (w.size() != d.columns()) throw ShapeError("weighted_column_map: weight length does not match N");
    const std::size_t t = d.block_length();
    WidelyLinear map = WidelyLinear::zeros(t, d.matrices.front().cols());
    for (std::size_t n = 0; n < d.columns(); ++n) {
        if (w[n] == cplx{}) continue;
        (d.conjugate[n] ? map.conj_part : map.lin) += scale(d.matrices[n], w[n]);
    }
    return map;
}

Scheme parse_scheme(std::string_view name) {
    if (name == "d-alamouti") return Scheme::DAlamouti;
    if (name == "r-alamouti") return Scheme::RAlamouti;
    if (name == "ldc") return Scheme::Ldc;
    throw ConfigError("unknown stc '" + std::string(name) + "' (expected d-alamouti | r-alamouti | ldc)");
}

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::DAlamouti: return "d-alamouti";
        case Scheme::RAlamouti: return "r-alamouti";
        case Scheme::Ldc: return "ldc";
    }
    return "?";
}

namespace {

CVector random_unit_vector(RngStream& rng, std::size_t n) {
    CMatrix g = sample_uniform_sphere_matrix(rng, {1.0, n, 1});
    return g.col(0);
}

}  // namespace

RelayCode make_relay_code(Scheme scheme, const DispersionSet& dispersion, std::size_t n_relays, RngStream& rng) {
    const std::size_t n = dispersion.columns();
    RelayCode code{scheme, dispersion, {}, {}};
    for (std::size_t k = 0; k < n_relays; ++k) {
        if (scheme == Scheme::RAlamouti) {
            code.combining.push_back(random_unit_vector(rng, n));
            CMatrix mix(n, n);
            for (std::size_t j = 0; j < n; ++j) mix.set_col(j, random_unit_vector(rng, n));
            code.mixing.push_back(std::move(mix));
        } else {
            CVector e(n);
            e[k % n] = 1.0;
            code.combining.push_back(std::move(e));
            code.mixing.push_back(CMatrix::identity(n));
        }
    }
    return code;
}

CMatrix relay_reencode(std::span<const cplx> x, const RelayCode& code) {
    if (x.size() != code.dispersion.block_length()) throw ShapeError("relay_reencode: received vector length != T");
    return encode_source(x, code.dispersion);
}

WidelyLinear relay_transmit_map(const RelayCode& code, std::size_t relay) {
    if (relay >= code.combining.size()) throw ShapeError("relay_transmit_map: relay index out of range");
    return weighted_column_map(code.dispersion, code.combining[relay]);
}

CMatrix sample_uniform_sphere_matrix(RngStream& rng, const CodeMatrixInit& init) {
    if (!(init.radius > 0.0)) throw InvalidParameter("sample_uniform_sphere_matrix: radius must be positive");
    CMatrix g = complex_gaussian(rng, init.rows, init.cols, 1.0);
    double norm = std::sqrt(frobenius_norm_sq(g));
    // A zero draw has probability zero; redraw rather than divide by it.
    while (norm == 0.0) {
        g = complex_gaussian(rng, init.rows, init.cols, 1.0);
        norm = std::sqrt(frobenius_norm_sq(g));
    }
    g *= init.radius / norm;
    return g;
}

CMatrix random_unitary(RngStream& rng, std::size_t n) {
    CMatrix g = complex_gaussian(rng, n, n, 1.0);
    for (std::size_t c = 0; c < n; ++c) {
        CVector v = g.col(c);
        for (std::size_t p = 0; p < c; ++p) {
            const CVector q = g.col(p);
            axpy(-dot(q, v), q, v);
        }
        const double norm = std::sqrt(frobenius_norm_sq(v));
        if (norm < 1e-12) return random_unitary(rng, n);
        for (auto& z : v) z /= norm;
        g.set_col(c, v);
    }
    return g;
}

}  // namespace coopstc
