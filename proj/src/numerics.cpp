#include "coopstc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coopstc/errors.hpp"

namespace coopstc {

namespace {

std::string dims(const CMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": " + dims(a) + " vs " + dims(b));
    }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw ShapeError("CMatrix: zero dimension");
    data_.assign(rows * cols, cplx{});
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw ShapeError("CMatrix: zero dimension");
    if (data_.size() != rows * cols) throw ShapeError("CMatrix: entry count does not match shape");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) throw ShapeError("CMatrix: zero dimension");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("CMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::column(std::span<const cplx> v) {
    return CMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

CVector CMatrix::col(std::size_t c) const {
    CVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void CMatrix::set_col(std::size_t c, std::span<const cplx> v) {
    if (v.size() != rows_ || c >= cols_) throw ShapeError("set_col: size mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool CMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) { return z == cplx{}; });
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx alpha) {
    for (auto& z : data_) z *= alpha;
    return *this;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: " + dims(a) + " * " + dims(b));
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

CMatrix hermitian(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

CMatrix transpose(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

CMatrix conjugate(const CMatrix& a) {
    CMatrix out = a;
    for (auto& z : out.data()) z = std::conj(z);
    return out;
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
    CMatrix out = a;
    out += b;
    return out;
}

CMatrix subtract(const CMatrix& a, const CMatrix& b) {
    CMatrix out = a;
    out -= b;
    return out;
}

CMatrix scale(const CMatrix& a, cplx alpha) {
    CMatrix out = a;
    out *= alpha;
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return out;
}

CMatrix block_diag_repeat(const CMatrix& block, std::size_t copies) {
    if (copies == 0) throw ShapeError("block_diag_repeat: zero copies");
    return kron(CMatrix::identity(copies), block);
}

double frobenius_norm_sq(const CMatrix& m) { return frobenius_norm_sq(m.data()); }

double frobenius_norm_sq(std::span<const cplx> v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
}

CVector apply(const CMatrix& m, std::span<const cplx> x) {
    if (m.cols() != x.size()) throw ShapeError("apply: " + dims(m) + " on vector of length " + std::to_string(x.size()));
    CVector y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CVector conj(std::span<const cplx> x) {
    CVector y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [](const cplx& z) { return std::conj(z); });
    return y;
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    if (x.size() != y.size()) throw ShapeError("axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
    cplx acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw ShapeError("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

WidelyLinear::WidelyLinear(CMatrix l, CMatrix c) : lin(std::move(l)), conj_part(std::move(c)) {
    if (lin.rows() != conj_part.rows() || lin.cols() != conj_part.cols())
        throw ShapeError("WidelyLinear: part shapes differ");
}

WidelyLinear WidelyLinear::linear(CMatrix l) {
    CMatrix c(l.rows(), l.cols());
    return {std::move(l), std::move(c)};
}

WidelyLinear WidelyLinear::zeros(std::size_t rows, std::size_t cols) {
    return {CMatrix(rows, cols), CMatrix(rows, cols)};
}

CVector WidelyLinear::apply(std::span<const cplx> x) const {
    if (x.size() != cols()) throw ShapeError("WidelyLinear::apply: length mismatch");
    CVector y(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < cols(); ++j) acc += lin(i, j) * x[j] + conj_part(i, j) * std::conj(x[j]);
        y[i] = acc;
    }
    return y;
}

double WidelyLinear::energy() const { return frobenius_norm_sq(lin) + frobenius_norm_sq(conj_part); }

WidelyLinear compose(const WidelyLinear& outer, const WidelyLinear& inner) {
    // outer(y) = Lo y + Co y*, y = Li x + Ci x*
    //   => (Lo Li + Co Ci*) x + (Lo Ci + Co Li*) x*
    CMatrix l = matmul(outer.lin, inner.lin) + matmul(outer.conj_part, conjugate(inner.conj_part));
    CMatrix c = matmul(outer.lin, inner.conj_part) + matmul(outer.conj_part, conjugate(inner.lin));
    return {std::move(l), std::move(c)};
}

WidelyLinear left_multiply(const CMatrix& m, const WidelyLinear& inner) {
    return {matmul(m, inner.lin), matmul(m, inner.conj_part)};
}

WidelyLinear operator+(const WidelyLinear& a, const WidelyLinear& b) {
    return {a.lin + b.lin, a.conj_part + b.conj_part};
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x9e3779b9u};
    engine_.seed(seq);
}

double RngStream::uniform() { return std::generate_canonical<double, 53>(engine_); }

double RngStream::normal() { return normal_(engine_); }

std::uint64_t RngStream::next_u64() { return engine_(); }

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw InvalidParameter("uniform_index: empty range");
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

cplx RngStream::complex_normal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

CMatrix complex_gaussian(RngStream& rng, std::size_t rows, std::size_t cols, double variance) {
    if (!(variance > 0.0)) throw InvalidParameter("complex_gaussian: variance must be positive");
    CMatrix m(rows, cols);
    for (auto& z : m.data()) z = rng.complex_normal(variance);
    return m;
}

}  // namespace coopstc
