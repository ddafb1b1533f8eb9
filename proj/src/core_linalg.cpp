#include "qbell/core_linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qbell {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix product: inner dimensions disagree");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(r, k);
            if (a == 0.0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("max_abs_diff: shapes disagree");
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    return worst;
}

double ComplexMatrix::unitarity_defect() const {
    if (rows_ != cols_) throw std::invalid_argument("unitarity_defect: matrix not square");
    return deviation_from_scaled_identity(adjoint() * (*this), 1.0);
}

double deviation_from_scaled_identity(const ComplexMatrix& m, Complex scale) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("deviation_from_scaled_identity: matrix not square");
    double worst = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Complex expected = (r == c) ? scale : Complex{};
            worst = std::max(worst, std::abs(m(r, c) - expected));
        }
    return worst;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Complex dft_entry(std::size_t j, std::size_t p, std::size_t n) {
    const std::size_t k = (j * p) % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(n));
}

ComplexMatrix dft_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("dft_matrix: size must be positive");
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < n; ++p) m(j, p) = dft_entry(j, p, n);
    return m;
}

std::vector<std::vector<int>> walsh_matrix_int(std::size_t size) {
    if (!is_power_of_two(size))
        throw std::invalid_argument("walsh_matrix: size must be a power of two, got " +
                                    std::to_string(size));
    std::vector<std::vector<int>> h{{1}};
    for (std::size_t half = 1; half < size; half *= 2) {
        std::vector<std::vector<int>> next(2 * half, std::vector<int>(2 * half));
        for (std::size_t r = 0; r < half; ++r) {
            for (std::size_t c = 0; c < half; ++c) {
                const int v = h[r][c];
                next[r][c] = v;
                next[r][c + half] = v;
                next[r + half][c] = v;
                next[r + half][c + half] = -v;
            }
        }
        h = std::move(next);
    }
    return h;
}

ComplexMatrix walsh_matrix(std::size_t size) {
    const auto h = walsh_matrix_int(size);
    ComplexMatrix m(size, size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) m(r, c) = static_cast<double>(h[r][c]);
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

Complex determinant(ComplexMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
        if (m(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = m(r, col) / m(col, col);
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
        }
    }
    return det;
}

namespace detail {

void require_even_dimension(int d) {
    if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("dimension must be even and >= 2, got " +
                                    std::to_string(d));
}

}  // namespace detail

}  // namespace qbell
