#pragma once

#include <functional>
#include <vector>

#include "ptf/matrix.hpp"

namespace ptf {

inline constexpr std::size_t kMaxDimension = 256;

/// M = right * diag(values) * left, with left * right = I.
struct SpectralDecomposition {
    CVector values;
    ComplexMatrix right;
    ComplexMatrix left;
    double cond = 1.0;  // ||right||_1 * ||left||_1
};

/// Hessenberg reduction + Wilkinson-shifted complex QR + back-substitution.
/// Throws NoConvergence after 40 sweeps without a deflation, DefectiveMatrix if cond > 1e12.
SpectralDecomposition eig_general(const ComplexMatrix& m);

/// Eigenvalues only (no vectors). Same iteration as eig_general.
CVector eigenvalues_general(const ComplexMatrix& m);

enum class MatFn { exp, sqrt, log, identity };

struct MatFuncResult {
    ComplexMatrix value;
    bool branch_cut = false;  // an eigenvalue sits within 1e-12 of the negative real axis (sqrt/log)
};

MatFuncResult mat_func(const ComplexMatrix& m, MatFn f);
ComplexMatrix mat_func(const ComplexMatrix& m, const std::function<cplx(cplx)>& f);

struct ShiftedExp {
    ComplexMatrix value;  // exp(M - shift * I)
    cplx shift;
};

ShiftedExp expm_shifted(const ComplexMatrix& m, cplx shift);

struct TraceSqrt {
    cplx value;
    bool branch_cut = false;
};

/// sum_i sqrt(lambda_i(A B)), principal branch.
TraceSqrt trace_sqrt_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// rho = right * diag(exp(log_weights)) * left, kept in factored form.
struct SpectralFactors {
    ComplexMatrix right;  // d x m
    ComplexMatrix left;   // m x d
    CVector log_weights;  // m
};

/// Same quantity as trace_sqrt_product(rho_a, rho_b) evaluated on the factors:
/// eigenvalues of X Y with X = Wa^1/2 (La Rb) Wb^1/2, Y = Wb^1/2 (Lb Ra) Wa^1/2.
/// Keeps relative accuracy when the weights span many decades.
///
/// Without a pairing every square root is principal. With pairing[i] naming the level of b
/// that continues level i of a, each eigenvalue is matched to a reference
/// exp((lw_a[i] + lw_b[pairing[i]]) / 2) and its root is taken on the side of that reference.
/// For complex weights this follows the branch that is continuous from beta = 0.
TraceSqrt trace_sqrt_product(const SpectralFactors& a, const SpectralFactors& b,
                             const std::vector<std::size_t>* pairing = nullptr);

/// Connected components of the sparsity graph of m (entries with modulus > tol).
std::vector<std::vector<std::size_t>> invariant_blocks(const ComplexMatrix& m, double tol = 0.0);

/// True when z has negative real part and lies within tol of the real axis.
bool near_negative_axis(cplx z, double tol = 1e-12);

}  // namespace ptf
