#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ptf {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    explicit ComplexMatrix(std::size_t n) : ComplexMatrix(n, n) {}
    /// Throws NonFinite if any entry is NaN or infinite.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const CVector& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    cplx* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const cplx* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }
    const std::vector<cplx>& data() const noexcept { return data_; }

    CVector column(std::size_t j) const;
    CVector row_vector(std::size_t i) const;
    void set_column(std::size_t j, const CVector& v);
    void set_row(std::size_t i, const CVector& v);

    ComplexMatrix adjoint() const;
    cplx trace() const;
    bool all_finite() const noexcept;
    void require_finite() const;

    double norm1() const;      // max column sum
    double max_abs() const;    // largest entry modulus

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
CVector operator*(const ComplexMatrix& a, const CVector& v);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(const CVector& v);
cplx dot(const CVector& row, const CVector& col);  // unconjugated row . col

/// Inverse by LU with partial pivoting. Throws DefectiveMatrix on an exactly zero pivot.
ComplexMatrix inverse(const ComplexMatrix& a);

}  // namespace ptf
