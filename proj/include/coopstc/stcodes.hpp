#pragma once

#include <string_view>
#include <vector>

#include "coopstc/modem.hpp"
#include "coopstc/numerics.hpp"

namespace coopstc {

/// Dispersion matrices of a T x N space-time block: column n of the block is
/// A_n * s, or A_n * conj(s) when conjugate[n] is set. Every A_n is unitary.
struct DispersionSet {
    std::vector<CMatrix> matrices;
    std::vector<bool> conjugate;

    std::size_t block_length() const { return matrices.front().rows(); }  // T
    std::size_t columns() const { return matrices.size(); }               // N
};

/// A_1 = I, A_2 = [[0,-1],[1,0]] on conj(s): the block [[s1, -s2*], [s2, s1*]].
DispersionSet alamouti_dispersion();
/// N independent Haar-like unitary T x T matrices, no conjugation.
DispersionSet random_unitary_dispersion(RngStream& rng, std::size_t block_length, std::size_t columns);

/// S = [A_1 s, ..., A_N s] (T x N).
CMatrix encode_source(std::span<const cplx> s, const DispersionSet& d);

/// The map s -> S(s) * w as a widely-linear T x T operator.
WidelyLinear weighted_column_map(const DispersionSet& d, std::span<const cplx> w);

enum class Scheme { DAlamouti, RAlamouti, Ldc };
Scheme parse_scheme(std::string_view name);
std::string_view to_string(Scheme s);

/// Second-hop code used by the relays.
///
/// For single-antenna relays, relay k re-encodes its received vector x into
/// the T x N codeword and transmits codeword * combining[k]: a unit vector
/// picking one column for D-Alamouti / LDC, a random unit-norm vector for
/// R-Alamouti. For multi-antenna relays, mixing[k] (N x N) is applied across
/// the relay's antennas before forwarding; identity except for R-Alamouti.
struct RelayCode {
    Scheme scheme;
    DispersionSet dispersion;
    std::vector<CVector> combining;
    std::vector<CMatrix> mixing;
};

RelayCode make_relay_code(Scheme scheme, const DispersionSet& dispersion, std::size_t n_relays, RngStream& rng);

/// Codeword structure applied to the (noisy) received vector, no decision made.
CMatrix relay_reencode(std::span<const cplx> x, const RelayCode& code);
/// x -> relay_reencode(x) * combining[k].
WidelyLinear relay_transmit_map(const RelayCode& code, std::size_t relay);

struct CodeMatrixInit {
    double radius;
    std::size_t rows;
    std::size_t cols;
};

/// radius * G / ||G||_F for i.i.d. complex Gaussian G: uniform on the complex
/// hypersphere of the given radius.
CMatrix sample_uniform_sphere_matrix(RngStream& rng, const CodeMatrixInit& init);

/// Unitary matrix from Gram-Schmidt on a complex Gaussian draw.
CMatrix random_unitary(RngStream& rng, std::size_t n);

}  // namespace coopstc
