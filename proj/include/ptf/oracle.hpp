#pragma once

#include <vector>

#include "ptf/matrix.hpp"
#include "ptf/model.hpp"

namespace ptf {

inline constexpr int kMaxOracleSites = 8;

/// -J sum_j (sz_j sz_{j+1} + g_j sx_j) on a periodic ring, g_j = eta + i (-1)^j xi (sites j = 1..2N).
/// Basis: bit j-1 of the index is 1 when site j has sz = -1.
struct SpinChainDense {
    int sites = 0;
    ComplexMatrix matrix;
};

SpinChainDense spin_hamiltonian_dense(const CouplingParams& p, int sites);

/// prod_j sx_j in the same basis.
ComplexMatrix spin_parity_operator(int sites);

/// Fermionic H_sigma after the Jordan-Wigner map, on the full 2^sites Fock space
/// (bit j-1 = occupation of site j, string order by site). sigma = even closes the ring
/// antiperiodically, odd periodically.
ComplexMatrix fermion_hamiltonian_dense(const CouplingParams& p, int sites, Parity sigma);

/// (1 + sigma (-1)^N_f) / 2.
ComplexMatrix fermion_parity_projector(int sites, Parity sigma);

/// Eigenvalues of H_sigma restricted to the range of its parity projector.
CVector jw_sector_spectrum(const CouplingParams& p, int sites, Parity sigma);

enum class DenseRealization {
    kronecker,   // -J (h_k1 (x) 1 + 1 (x) h_k2) on the product of the two sector spaces
    real_space,  // unprojected antiperiodic H_+ of the 2N-site fermion ring
};

struct FermionSumDense {
    int N = 4;
    ComplexMatrix matrix;  // 256 x 256
};

FermionSumDense fermion_sum_dense(const CouplingParams& p, int N = 4,
                                  DenseRealization how = DenseRealization::kronecker);

/// tr sqrt(rho1 rho2) for the full N = 4 chain built densely from exp(-beta H).
/// Square roots follow the same beta-continuous branch rule as the sector engine; dense levels
/// of the two points are paired by nearest energy.
cplx fermion_sum_fidelity_value(const CouplingParams& p1, const CouplingParams& p2, double beta, int N = 4,
                                DenseRealization how = DenseRealization::kronecker);

/// Same for several temperatures, decomposing each Hamiltonian once.
CVector fermion_sum_fidelity_values(const CouplingParams& p1, const CouplingParams& p2,
                                    const std::vector<double>& betas, int N = 4,
                                    DenseRealization how = DenseRealization::kronecker);

/// Modulus of fermion_sum_fidelity_value.
double fermion_sum_fidelity(const CouplingParams& p1, const CouplingParams& p2, double beta, int N = 4,
                            DenseRealization how = DenseRealization::kronecker);

struct HermitianFidelity {
    double F = 1.0;
    double log_F = 0.0;
};

/// Uhlmann fidelity prod_k tr|sqrt(rho1) sqrt(rho2)| for xi = 0 on both points, from Jacobi
/// eigen and singular value decompositions of the real embedding of each h_k.
HermitianFidelity hermitian_uhlmann_fidelity(const CouplingParams& p1, const CouplingParams& p2, double beta,
                                             int N);

/// Normalized dense Gibbs state exp(-beta H)/Z via a shifted matrix exponential.
ComplexMatrix dense_gibbs_state(const ComplexMatrix& h, double beta, double J = 1.0);

}  // namespace ptf
