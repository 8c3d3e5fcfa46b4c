#pragma once

#include <Eigen/Dense>

#include <random>

#include "ptf/matrix.hpp"

namespace testutil {

using ptf::ComplexMatrix;
using ptf::cplx;

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> d;
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {d(gen), d(gen)};
    return m;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

/// Random unit-trace positive definite matrix.
inline ComplexMatrix random_density(std::size_t n, std::mt19937_64& gen) {
    const Eigen::MatrixXcd a = to_eigen(random_matrix(n, gen));
    Eigen::MatrixXcd rho = a * a.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(n, n);
    rho /= rho.trace();
    return from_eigen(rho);
}

/// tr sqrt(sqrt(B) A sqrt(B)) for Hermitian positive semidefinite inputs.
inline double uhlmann(const ComplexMatrix& a, const ComplexMatrix& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(to_eigen(b));
    const Eigen::VectorXd root = eb.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd sb = eb.eigenvectors() * root.asDiagonal() * eb.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> em(sb * to_eigen(a) * sb);
    double f = 0;
    for (Eigen::Index i = 0; i < em.eigenvalues().size(); ++i) f += std::sqrt(std::max(0.0, em.eigenvalues()[i]));
    return f;
}

}  // namespace testutil
