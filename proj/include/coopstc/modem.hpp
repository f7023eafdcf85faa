#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coopstc/numerics.hpp"

namespace coopstc {

enum class Modulation { Bpsk, Qam4 };

using Bits = std::vector<std::uint8_t>;
using SymbolVector = CVector;

/// Unit-average-energy Gray-mapped constellation. points()[p] is the symbol
/// for bit pattern p, read most-significant bit first.
class Constellation {
public:
    static Constellation bpsk();
    static Constellation qam4();
    static Constellation make(Modulation m);

    Modulation modulation() const noexcept { return modulation_; }
    std::string_view name() const noexcept;
    const std::vector<cplx>& points() const noexcept { return points_; }
    std::size_t bits_per_symbol() const noexcept { return bits_per_symbol_; }
    std::size_t size() const noexcept { return points_.size(); }

    /// Index of the nearest point; ties go to the lowest index.
    std::size_t nearest(cplx z) const;

private:
    Constellation(Modulation m, std::vector<cplx> pts, std::size_t bps);

    Modulation modulation_;
    std::vector<cplx> points_;
    std::size_t bits_per_symbol_;
};

Modulation parse_modulation(std::string_view name);
std::string_view to_string(Modulation m);

/// Throws FramingError if bits.size() is not a multiple of bits_per_symbol.
SymbolVector modulate(std::span<const std::uint8_t> bits, const Constellation& c);
Bits demodulate_hard(std::span<const cplx> symbols, const Constellation& c);

inline constexpr std::size_t kDefaultCodebookCap = 4096;

/// All |c|^n symbol vectors, ordered lexicographically by their bit labels.
/// Throws CapacityError when |c|^n exceeds cap.
std::vector<SymbolVector> enumerate_codebook(const Constellation& c, std::size_t n,
                                             std::size_t cap = kDefaultCodebookCap);

/// Bit label of codebook entry `index` (same ordering as enumerate_codebook).
Bits codebook_bits(const Constellation& c, std::size_t n, std::size_t index);

}  // namespace coopstc
