#include "coopstc/modem.hpp"

#include <cmath>
#include <limits>

#include "coopstc/errors.hpp"

namespace coopstc {

Constellation::Constellation(Modulation m, std::vector<cplx> pts, std::size_t bps)
    : modulation_(m), points_(std::move(pts)), bits_per_symbol_(bps) {}

Constellation Constellation::bpsk() { return {Modulation::Bpsk, {cplx{1.0, 0.0}, cplx{-1.0, 0.0}}, 1}; }

Constellation Constellation::qam4() {
    // First bit picks the sign of the real part, second bit the imaginary part.
    const double a = 1.0 / std::sqrt(2.0);
    return {Modulation::Qam4, {cplx{a, a}, cplx{a, -a}, cplx{-a, a}, cplx{-a, -a}}, 2};
}

Constellation Constellation::make(Modulation m) {
    switch (m) {
        case Modulation::Bpsk: return bpsk();
        case Modulation::Qam4: return qam4();
    }
    throw InvalidParameter("unknown modulation");
}

std::string_view Constellation::name() const noexcept { return to_string(modulation_); }

std::size_t Constellation::nearest(cplx z) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < points_.size(); ++p) {
        const double d = std::norm(z - points_[p]);
        if (d < best_d) {
            best_d = d;
            best = p;
        }
    }
    return best;
}

Modulation parse_modulation(std::string_view name) {
    if (name == "bpsk") return Modulation::Bpsk;
    if (name == "qam4") return Modulation::Qam4;
    throw ConfigError("unknown modulation '" + std::string(name) + "' (expected bpsk | qam4)");
}

std::string_view to_string(Modulation m) {
    switch (m) {
        case Modulation::Bpsk: return "bpsk";
        case Modulation::Qam4: return "qam4";
    }
    return "?";
}

SymbolVector modulate(std::span<const std::uint8_t> bits, const Constellation& c) {
    const std::size_t bps = c.bits_per_symbol();
    if (bits.size() % bps != 0) throw FramingError("modulate: bit count not a multiple of bits per symbol");
    SymbolVector out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps) {
        std::size_t label = 0;
        for (std::size_t b = 0; b < bps; ++b) label = (label << 1) | (bits[i + b] & 1u);
        out.push_back(c.points()[label]);
    }
    return out;
}

Bits demodulate_hard(std::span<const cplx> symbols, const Constellation& c) {
    const std::size_t bps = c.bits_per_symbol();
    Bits out;
    out.reserve(symbols.size() * bps);
    for (const auto& z : symbols) {
        const std::size_t label = c.nearest(z);
        for (std::size_t b = bps; b-- > 0;) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
    return out;
}

std::vector<SymbolVector> enumerate_codebook(const Constellation& c, std::size_t n, std::size_t cap) {
    if (n == 0) throw InvalidParameter("enumerate_codebook: n must be at least 1");
    const std::size_t m = c.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (count > cap / m) throw CapacityError("enumerate_codebook: codebook exceeds cap");
        count *= m;
    }
    if (count > cap) throw CapacityError("enumerate_codebook: codebook exceeds cap");

    std::vector<SymbolVector> book(count, SymbolVector(n));
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        for (std::size_t pos = n; pos-- > 0;) {
            book[idx][pos] = c.points()[rem % m];
            rem /= m;
        }
    }
    return book;
}

Bits codebook_bits(const Constellation& c, std::size_t n, std::size_t index) {
    const std::size_t m = c.size();
    const std::size_t bps = c.bits_per_symbol();
    Bits out(n * bps);
    for (std::size_t pos = n; pos-- > 0;) {
        const std::size_t label = index % m;
        index /= m;
        for (std::size_t b = 0; b < bps; ++b) out[pos * bps + b] = static_cast<std::uint8_t>((label >> (bps - 1 - b)) & 1u);
    }
    return out;
}

}  // namespace coopstc
