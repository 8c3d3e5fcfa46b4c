#pragma once

#include <array>
#include <string>
#include <vector>

#include "ptf/matrix.hpp"

namespace ptf {

inline constexpr double kPi = 3.14159265358979323846;

/// Model inputs. Energies are in units of J; N counts momentum pairs (2N sites).
struct CouplingParams {
    double J = 1.0;
    double eta = 0.0;
    double xi = 0.0;
    int N = 2;

    /// Throws InvalidArgument for J <= 0 or N < 2, OddN for odd N.
    void validate() const;
};

struct PolarField {
    double r = 0.0;
    double phi = 0.0;  // [0, 2pi)
};

PolarField polar_from_cartesian(double eta, double xi);
CouplingParams params_from_polar(double r, double phi, double J = 1.0, int N = 2);

struct DispersionValue {
    int n = 1;
    double k = 0.0;
    cplx value;
    bool is_real = true;
};

inline constexpr double kRealTol = 1e-10;

/// epsilon^n(k), principal branch throughout. Levels n = 1..16.
DispersionValue dispersion(int n, double k, const PolarField& p, double real_tol = kRealTol);

/// All sixteen levels at once, index n-1.
std::array<cplx, 16> dispersion_all(double k, const PolarField& p);

enum class Parity : int { even = 1, odd = -1 };

struct MomentumGrid {
    std::vector<double> paired;    // ascending, each entry stands for the +-k pair
    std::vector<double> unpaired;  // k = 0 and k = pi on the odd-parity grid
};

/// even: k = (2m+1)pi/N, m = 0..N/2-1. odd: paired 2m pi/N inside (0, pi) plus {0, pi}.
MomentumGrid momentum_grid(int N, Parity sigma);

enum class Phase { I, II, III, boundary };

/// II: inside the unit circle (ferromagnet). I: outside with eta > 0, III: outside with eta < 0.
struct PhaseLabel {
    Phase label = Phase::II;
    double distance = 0.0;
};

PhaseLabel classify_phase(double eta, double xi, double tol = 1e-9);
std::string to_string(Phase p);

}  // namespace ptf
