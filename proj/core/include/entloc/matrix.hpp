#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace entloc {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Everything in this library lives in
/// dimension <= 8, so the representation favours clarity over blocking.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;

    double max_abs() const;
    double frobenius_norm() const;
    /// max_ij |a(i,j) - conj(a(j,i))|
    double hermiticity_residual() const;
    bool is_hermitian(double tol) const { return is_square() && hermiticity_residual() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Standard matrix product; rejects mismatched inner dimensions.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product with the left factor owning the high-order index bits,
/// i.e. (i1 i2, j1 j2) entries follow the first argument's index first.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace entloc
