#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qbell {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// Probabilities at or below this are treated as exact interference zeros.
inline constexpr double kSupportTol = 1e-12;

/// Absolute tolerance used for floating-point equality checks. Converts
/// implicitly from double so call sites can pass a bare number.
struct Tolerance {
    double eps = kDefaultTol;

    constexpr Tolerance() = default;
    constexpr Tolerance(double e) : eps(e) {}
};

/// Dense row-major complex matrix. Sized for the small (d <= 16) structured
/// matrices this library works with; no external BLAS.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;

    /// Largest entrywise |a - b|. Shapes must match.
    double max_abs_diff(const ComplexMatrix& other) const;

    /// ||M^dagger M - I||_max. Square matrices only.
    double unitarity_defect() const;
    bool is_unitary(Tolerance tol = {}) const { return unitarity_defect() < tol.eps; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

bool is_power_of_two(std::size_t n);

/// Largest entrywise |m(i,j) - scale*I(i,j)| for square m.
double deviation_from_scaled_identity(const ComplexMatrix& m, Complex scale);

/// Single root-of-unity entry exp(2*pi*i*j*p/n), with the argument reduced
/// mod n before evaluation.
Complex dft_entry(std::size_t j, std::size_t p, std::size_t n);

/// n x n matrix with entry (j, p) = exp(2*pi*i*j*p/n). Entries have magnitude
/// one (no 1/sqrt(n) prefactor); columns are mutually orthogonal with squared
/// norm n.
ComplexMatrix dft_matrix(std::size_t n);

/// Walsh (Sylvester-Hadamard) matrix H(size) as exact +-1 integers, built via
/// the recursion H(2^m) = H(2) (x) H(2^{m-1}). size must be a power of two.
std::vector<std::vector<int>> walsh_matrix_int(std::size_t size);

/// walsh_matrix_int embedded into a ComplexMatrix.
ComplexMatrix walsh_matrix(std::size_t size);

/// Kronecker product: entry (i*b.rows()+k, j*b.cols()+l) = a(i,j)*b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Determinant via LU decomposition with partial pivoting.
Complex determinant(ComplexMatrix m);

namespace detail {
/// Throws std::invalid_argument unless d is even and >= 2.
void require_even_dimension(int d);
}  // namespace detail

}  // namespace qbell
