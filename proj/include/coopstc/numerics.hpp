#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace coopstc {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense complex matrix with row-major storage. Dimensions are fixed at
/// construction and always at least 1x1.
class CMatrix {
public:
    /// A 1x1 zero matrix, so that containers of CMatrix are default-constructible.
    CMatrix() : CMatrix(1, 1) {}
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    /// rows x 1 matrix holding v.
    static CMatrix column(std::span<const cplx> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    /// Column c copied out as a vector.
    CVector col(std::size_t c) const;
    void set_col(std::size_t c, std::span<const cplx> v);

    bool all_finite() const;
    bool is_zero() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx alpha);

    friend bool operator==(const CMatrix& a, const CMatrix& b) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix hermitian(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);
CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix subtract(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& a, cplx alpha);
/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Block-diagonal matrix with `copies` repetitions of block.
CMatrix block_diag_repeat(const CMatrix& block, std::size_t copies);

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }
inline CMatrix operator+(const CMatrix& a, const CMatrix& b) { return add(a, b); }
inline CMatrix operator-(const CMatrix& a, const CMatrix& b) { return subtract(a, b); }
inline CMatrix operator*(cplx alpha, const CMatrix& a) { return scale(a, alpha); }

/// Sum of squared magnitudes of all entries.
double frobenius_norm_sq(const CMatrix& m);
double frobenius_norm_sq(std::span<const cplx> v);
/// Tr(A A^H), identical to frobenius_norm_sq(a).
inline double trace_power(const CMatrix& a) { return frobenius_norm_sq(a); }

// Vector helpers.
CVector apply(const CMatrix& m, std::span<const cplx> x);
CVector conj(std::span<const cplx> x);
/// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);  // a^H b
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

/// Widely-linear map y = lin * x + conj_part * conj(x). Space-time codes with
/// conjugated entries (Alamouti) are linear only over the reals; this type
/// carries them through every composition exactly.
struct WidelyLinear {
    CMatrix lin;
    CMatrix conj_part;

    WidelyLinear(CMatrix l, CMatrix c);
    static WidelyLinear linear(CMatrix l);
    static WidelyLinear zeros(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return lin.rows(); }
    std::size_t cols() const { return lin.cols(); }

    CVector apply(std::span<const cplx> x) const;
    /// Squared Frobenius norm of the real-equivalent operator, up to the factor 2
    /// shared by both parts: ||lin||^2 + ||conj_part||^2.
    double energy() const;
};

/// outer o inner, i.e. x -> outer(inner(x)).
WidelyLinear compose(const WidelyLinear& outer, const WidelyLinear& inner);
/// x -> m * inner(x) for a plain linear m.
WidelyLinear left_multiply(const CMatrix& m, const WidelyLinear& inner);
WidelyLinear operator+(const WidelyLinear& a, const WidelyLinear& b);

/// Reproducible random stream keyed by (seed, stream id). Each Monte Carlo
/// trial owns its own stream, so results do not depend on scheduling.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }

    double uniform();               // [0, 1)
    double normal();                // N(0, 1)
    std::uint64_t next_u64();
    std::size_t uniform_index(std::size_t n);
    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_normal(double variance);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// i.i.d. CN(0, variance) entries. Throws InvalidParameter if variance <= 0.
CMatrix complex_gaussian(RngStream& rng, std::size_t rows, std::size_t cols, double variance);

}  // namespace coopstc
