#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ptf/matfun.hpp"
#include "ptf/model.hpp"
#include "ptf/sector.hpp"

namespace ptf {

/// Per-momentum Gibbs state rho_k proportional to exp(beta J h_k); the physical chain
/// Hamiltonian is -J sum_k h_k, so level 1 (largest epsilon) is the ground state.
struct ThermalSectorState {
    double k = 0.0;
    CouplingParams params;
    double beta = 0.0;
    ComplexMatrix rho;        // trace 1
    double log_norm = 0.0;    // exponent shift: max_n Re(2 beta J epsilon^n)
    cplx log_partition;       // log of the shifted partition sum plus log_norm
    bool pt_broken = false;
    std::shared_ptr<const BiorthogonalEigensystem> eigensystem;
    CVector log_weights;      // rho = sum_n exp(log_weights[n]) R_n L_n
};

ThermalSectorState thermal_sector_state(double k, const CouplingParams& p, double beta,
                                        SolveMethod method = SolveMethod::automatic);
ThermalSectorState thermal_sector_state(std::shared_ptr<const BiorthogonalEigensystem> es,
                                        const CouplingParams& p, double beta);

/// tr sqrt(rho1 rho2) for one momentum pair, evaluated block by block on the spectral factors.
cplx sector_fidelity(const ThermalSectorState& s1, const ThermalSectorState& s2);

/// Same quantity from the dense 16x16 rho matrices (slower, loses accuracy for large beta).
cplx sector_fidelity_dense(const ThermalSectorState& s1, const ThermalSectorState& s2);

struct FidelityPoint {
    double eta = 0.0;
    double xi = 0.0;
    double beta = 0.0;
    double F = 1.0;
    double log_F = 0.0;
    double im_residual = 0.0;  // max_k |Im F_k| / |F_k|
    int broken_sectors = 0;
    std::string error;         // empty on success
};

/// F = exp(sum_k log|F_k|) over the antiperiodic grid, accumulated in ascending k.
/// Throws SectorError naming the momentum of a failing sector.
FidelityPoint total_fidelity(const CouplingParams& p1, const CouplingParams& p2, double beta, int N);

/// Several beta values sharing one set of eigensystems. Failures land in FidelityPoint::error.
std::vector<FidelityPoint> total_fidelity(const CouplingParams& p1, const CouplingParams& p2,
                                          const std::vector<double>& betas, int N);

struct Displacement {
    enum class Mode { cartesian, radial };
    Mode mode = Mode::cartesian;
    double d_eta = 0.01;
    double d_xi = 0.01;
    double dr = 0.01;

    /// (first, second) parameter points for a grid node: cartesian (eta, xi) and
    /// (eta + d_eta, xi + d_xi); radial (r - dr, phi) and (r + dr, phi).
    std::pair<CouplingParams, CouplingParams> apply(double eta, double xi, double J, int N) const;
    void validate() const;
};

struct SweepConfig {
    double eta_min = 0.0, eta_max = 1.5, eta_step = 0.015;
    double xi_min = 0.0, xi_max = 1.5, xi_step = 0.015;
    std::vector<double> betas{1.0};
    int N = 300;
    double J = 1.0;
    Displacement displacement;

    void validate() const;
};

/// Inclusive grid min, min + step, ... up to max (within 1e-9 of a step).
std::vector<double> grid_axis(double min, double max, double step);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Rows ordered by beta, then xi, then eta (eta fastest). Work is spread over threads
/// by grid node; the result does not depend on the thread count.
std::vector<FidelityPoint> sweep2d(const SweepConfig& cfg, unsigned threads = 1,
                                   const ProgressFn& progress = {});

/// F(beta) on the critical circle point (1, phi) with states at radii 1 -+ dr.
std::vector<FidelityPoint> temp_scan(double phi, double dr, const std::vector<double>& betas, int N,
                                     double J = 1.0);

/// Normalization of the zero-temperature overlap.
///  biorthonormal: both states from the biorthonormal pair (gauge invariant sqrt|<La Rb><Lb Ra>| limit).
///  dirac_left:    left state scaled to unit Euclidean norm, right state biorthonormal.
enum class OverlapConvention { biorthonormal, dirac_left };

/// |L1(r + dr, phi; k) . R1(r - dr, phi; k)|.
double ground_overlap(double k, double r, double phi, double dr,
                      OverlapConvention conv = OverlapConvention::biorthonormal);

/// Analytic k -> 0 limit of ground_overlap.
double limit_overlap_k0(double r, double phi, double dr,
                        OverlapConvention conv = OverlapConvention::biorthonormal);

struct ZeroTFidelity {
    double F = 1.0;
    double log_F = 0.0;
};

/// prod_k ground_overlap over the antiperiodic grid, centred on polar point (r, phi).
ZeroTFidelity zero_T_fidelity(const PolarField& center, double dr, int N,
                              OverlapConvention conv = OverlapConvention::biorthonormal);

}  // namespace ptf
