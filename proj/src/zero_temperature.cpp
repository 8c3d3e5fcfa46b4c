#include <array>
#include <cmath>

#include "ptf/errors.hpp"
#include "ptf/fidelity.hpp"

namespace ptf {
namespace {

constexpr double kLimitTol = 1e-12;
using Even6 = std::array<cplx, 6>;  // masks 0, a0a2, a1a3, a0a3, a1a2, full

// k -> 0 limit of the level-1 right state, with the same overall scale as the
// finite-k closed form (unit amplitude on a0a3 and a1a2 where those survive).
Even6 limit_right_state(double eta, double xi) {
    const cplx I(0, 1);
    const double r = std::hypot(eta, xi);
    if (r < 1 - kLimitTol) {
        const cplx gamma(std::sqrt(1 - xi * xi), xi);
        return {0.0, std::conj(gamma), gamma, 1.0, 1.0, 0.0};
    }
    if (std::abs(r - 1) <= kLimitTol) {
        if (std::abs(eta) <= kLimitTol)
            throw InvalidArgument("k -> 0 limit is not defined at the three-phase points (0, +-1)");
        const double ae = std::abs(eta);
        const cplx x1 = 1.0 / cplx(ae, xi), x2 = 1.0 / cplx(ae, -xi);
        if (eta > 0) return {-2.0 * I * eta, x1, x2, 1.0, 1.0, 0.0};
        return {0.0, x1, x2, 1.0, 1.0, 2.0 * I * ae};
    }
    if (std::abs(eta) <= kLimitTol * r) {
        const double q = std::sqrt(xi * xi - 1) / std::abs(xi);
        return {-I * q, -I / xi, I / xi, 1.0, 1.0, I * q};
    }
    if (eta > 0) return {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    return {0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
}

Even6 limit_left_state(double eta, double xi) {
    Even6 l = limit_right_state(eta, -xi);
    for (auto& z : l) z = std::conj(z);
    return l;
}

cplx dot6(const Even6& a, const Even6& b) {
    cplx s = 0;
    for (std::size_t i = 0; i < 6; ++i) s += a[i] * b[i];
    return s;
}

double norm6(const Even6& a) {
    double s = 0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
}

void check_radii(double r, double dr) {
    if (!(dr >= 0) || !std::isfinite(dr)) throw InvalidArgument("dr must be >= 0");
    if (r - dr < 0) throw InvalidArgument("r - dr must be >= 0");
}

}  // namespace

double ground_overlap(double k, double r, double phi, double dr, OverlapConvention conv) {
    check_radii(r, dr);
    const CouplingParams a = params_from_polar(r + dr, phi);
    const CouplingParams b = params_from_polar(r - dr, phi);
    const BiorthogonalEigensystem ea = sector_eigensystem(k, a);
    const BiorthogonalEigensystem eb = sector_eigensystem(k, b);
    // Level 1 is column/row 0.
    const CVector la = ea.left.row_vector(0);
    const CVector rb = eb.right.column(0);
    double value = std::abs(dot(la, rb));
    if (conv == OverlapConvention::dirac_left) value /= norm2(la);
    return value;
}

double limit_overlap_k0(double r, double phi, double dr, OverlapConvention conv) {
    check_radii(r, dr);
    if (dr == 0 && conv == OverlapConvention::biorthonormal) return 1.0;
    const CouplingParams a = params_from_polar(r + dr, phi);
    const CouplingParams b = params_from_polar(r - dr, phi);
    // On the eta = 0 axis cos(phi) is not exactly zero; snap it so the axis case is detected.
    auto snap = [](CouplingParams p) {
        if (std::abs(p.eta) <= kLimitTol * std::max(1.0, std::hypot(p.eta, p.xi))) p.eta = 0;
        return p;
    };
    const CouplingParams sa = snap(a), sb = snap(b);
    const Even6 la = limit_left_state(sa.eta, sa.xi), ra = limit_right_state(sa.eta, sa.xi);
    const Even6 lb = limit_left_state(sb.eta, sb.xi), rb = limit_right_state(sb.eta, sb.xi);
    const double norm_b = std::sqrt(std::abs(dot6(lb, rb)));
    const double norm_a = conv == OverlapConvention::biorthonormal ? std::sqrt(std::abs(dot6(la, ra))) : norm6(la);
    return std::abs(dot6(la, rb)) / (norm_a * norm_b);
}

ZeroTFidelity zero_T_fidelity(const PolarField& center, double dr, int N, OverlapConvention conv) {
    check_radii(center.r, dr);
    ZeroTFidelity out;
    if (dr == 0 && conv == OverlapConvention::biorthonormal) return out;
    for (double k : momentum_grid(N, Parity::even).paired) {
        try {
            out.log_F += std::log(ground_overlap(k, center.r, center.phi, dr, conv));
        } catch (const Error& e) {
            throw SectorError(k, e.what());
        }
    }
    out.F = std::exp(out.log_F);
    return out;
}

}  // namespace ptf
