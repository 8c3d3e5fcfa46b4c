#pragma once

#include <array>
#include <vector>

#include "ptf/matrix.hpp"
#include "ptf/model.hpp"

namespace ptf {

/// Fock space of one momentum pair. Modes: 0 = alpha_k, 1 = beta_k, 2 = alpha_-k, 3 = beta_-k.
/// Basis index is the occupation mask; creating mode i on mask m gives
/// (-1)^popcount(m & ((1<<i)-1)).
namespace fock {

inline constexpr std::size_t kDim = 16;
inline constexpr int kAlphaK = 0, kBetaK = 1, kAlphaMinusK = 2, kBetaMinusK = 3;

struct Action {
    unsigned mask = 0;
    int sign = 0;  // 0 when the operator kills the state
};

Action create(unsigned mask, int mode);
Action annihilate(unsigned mask, int mode);
int parity(unsigned mask);  // +1 even occupation, -1 odd

}  // namespace fock

/// h_k decomposes exactly into five invariant blocks of the Fock basis.
struct SectorBlock {
    std::vector<unsigned> masks;
    std::vector<int> levels;  // dispersion levels whose eigenvectors live here
};

/// Blocks: even momentum-zero {1..6}, {7}, {8}, odd +k {9..12}, odd -k {13..16}.
const std::array<SectorBlock, 5>& sector_blocks();

/// Index into sector_blocks() of the block holding level n.
std::size_t block_of_level(int n);

struct SectorHamiltonian {
    double k = 0.0;
    ComplexMatrix matrix;  // h_k = H_k + H_-k, eigenvalues 2 epsilon^n
    CouplingParams params;
};

SectorHamiltonian build_sector_hamiltonian(double k, const CouplingParams& p);

/// Closed-form right eigenvector of h_k for level n, unnormalized.
/// Throws SingularDenominator near a degenerate parameter point.
CVector analytic_right_eigenstate(int n, double k, const CouplingParams& p);

/// Closed-form left eigenvector: the conjugate transpose of the right state at xi -> -xi.
/// In PT-broken sectors the right state is taken at the conjugate eigenvalue so the
/// pair shares one eigenvalue of h_k.
CVector analytic_left_eigenstate(int n, double k, const CouplingParams& p);

struct BiorthogonalEigensystem {
    double k = 0.0;
    CVector values;             // 16 eigenvalues of h_k, index i belongs to levels[i]
    ComplexMatrix right;        // column i: R_i
    ComplexMatrix left;         // row i: L_i, with L_i . R_j = delta_ij
    std::array<int, 16> levels{};
    double cond = 1.0;          // ||R||_1 ||L||_1
};

inline constexpr double kClusterTol = 1e-8;

/// Rescales (and within degenerate clusters re-pairs) so that left * right = I.
/// Non-degenerate pairs are scaled symmetrically by 1/sqrt(L.R).
/// Throws SingularGram when a cluster Gram matrix has condition number > 1e12.
BiorthogonalEigensystem biorthonormalize(ComplexMatrix rights, ComplexMatrix lefts, CVector values,
                                         double cluster_tol = kClusterTol);

enum class SolveMethod { analytic, numeric, automatic };

/// automatic: closed forms first, numeric block diagonalization on SingularDenominator/SingularGram.
BiorthogonalEigensystem sector_eigensystem(double k, const CouplingParams& p,
                                           SolveMethod method = SolveMethod::automatic);

/// Sort by real part, then imaginary part, treating differences below fuzz as ties.
void canonical_sort(CVector& values, double fuzz = 1e-10);

/// Largest elementwise gap between two canonically sorted multisets.
double multiset_distance(CVector a, CVector b);

}  // namespace ptf
