#include "ptf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ptf/errors.hpp"

namespace ptf {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite();
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const CVector& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CVector ComplexMatrix::column(std::size_t j) const {
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

CVector ComplexMatrix::row_vector(std::size_t i) const {
    return CVector(row(i), row(i) + cols_);
}

void ComplexMatrix::set_column(std::size_t j, const CVector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

void ComplexMatrix::set_row(std::size_t i, const CVector& v) {
    std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cols_), row(i));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

void ComplexMatrix::require_finite() const {
    if (!all_finite()) throw NonFinite("matrix has NaN or infinite entries");
}

double ComplexMatrix::norm1() const {
    double best = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double ComplexMatrix::max_abs() const {
    double best = 0;
    for (const auto& z : data_) best = std::max(best, std::abs(z));
    return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("shape mismatch in +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("shape mismatch in -=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("shape mismatch in matrix product");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx* ci = c.row(i);
        const cplx* ai = a.row(i);
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const cplx s = ai[l];
            if (s == cplx{}) continue;
            const cplx* bl = b.row(l);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += s * bl[j];
        }
    }
    return c;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

CVector operator*(const ComplexMatrix& a, const CVector& v) {
    if (a.cols() != v.size()) throw InvalidArgument("shape mismatch in matrix-vector product");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0;
        const cplx* ai = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx s = a(i, j);
            if (s == cplx{}) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = s * b(p, q);
        }
    return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("shape mismatch");
    double best = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    return best;
}

double norm2(const CVector& v) {
    double s = 0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cplx dot(const CVector& row, const CVector& col) {
    cplx s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * col[i];
    return s;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    if (!a.square()) throw InvalidArgument("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
        if (lu(p, k) == cplx{}) throw DefectiveMatrix("singular matrix in inverse");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(k, j), lu(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        }
        const cplx piv = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / piv;
            if (f == cplx{}) continue;
            for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < n; ++j) inv(i, j) -= f * inv(k, j);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        const cplx piv = lu(kk, kk);
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = inv(kk, j);
            for (std::size_t l = kk + 1; l < n; ++l) s -= lu(kk, l) * inv(l, j);
            inv(kk, j) = s / piv;
        }
    }
    return inv;
}

}  // namespace ptf
