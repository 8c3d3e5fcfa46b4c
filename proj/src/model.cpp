#include "ptf/model.hpp"

#include <cmath>
#include <string>

#include "ptf/errors.hpp"

namespace ptf {

void CouplingParams::validate() const {
    if (!(J > 0) || !std::isfinite(J)) throw InvalidArgument("J must be positive");
    if (!std::isfinite(eta) || !std::isfinite(xi)) throw NonFinite("eta and xi must be finite");
    if (N < 2) throw InvalidArgument("N must be at least 2");
    if (N % 2 != 0) throw OddN("N must be even, got " + std::to_string(N));
}

PolarField polar_from_cartesian(double eta, double xi) {
    PolarField p;
    p.r = std::hypot(eta, xi);
    if (p.r == 0) return p;
    double phi = std::atan2(xi, eta);
    if (phi < 0) phi += 2 * kPi;
    if (phi >= 2 * kPi) phi = 0;
    p.phi = phi;
    return p;
}

CouplingParams params_from_polar(double r, double phi, double J, int N) {
    CouplingParams p;
    p.J = J;
    p.N = N;
    p.eta = r * std::cos(phi);
    p.xi = r * std::sin(phi);
    return p;
}

std::array<cplx, 16> dispersion_all(double k, const PolarField& p) {
    const double r2 = p.r * p.r;
    const double c2 = std::cos(2 * p.phi);
    const double s2 = std::sin(2 * p.phi);
    const double inner2 = r2 * r2 - 2 * r2 * std::cos(k) + 1;
    const double inner = std::sqrt(inner2);
    // Odd-parity radicand; it changes sign at the PT-breaking momentum.
    const double d = 2 * r2 * (c2 + std::cos(k)) - r2 * r2 * s2 * s2;

    // Even levels: e1^2 e3^2 = 4d. Take the root free of cancellation, divide for the other.
    const double a = 2 * r2 * c2 + 2;
    double sq1, sq3;  // real; keep the imaginary zero positive for the principal branch
    if (a >= 0) {
        sq1 = a + 2 * inner;
        sq3 = 4 * d / sq1;
    } else {
        sq3 = a - 2 * inner;
        sq1 = 4 * d / sq3;
    }
    // Odd levels: e9^2 e11^2 = inner^2.
    const double b = r2 * c2 + 1;
    cplx sq9, sq11;
    if (d < 0) {
        const double root = std::sqrt(-d);
        sq9 = cplx(b, root);
        sq11 = cplx(b, -root);
    } else if (b >= 0) {
        const double big = b + std::sqrt(d);
        sq9 = cplx(big, 0.0);
        sq11 = cplx(inner2 / big, 0.0);
    } else {
        const double big = b - std::sqrt(d);
        sq11 = cplx(big, 0.0);
        sq9 = cplx(inner2 / big, 0.0);
    }
    const cplx e1 = std::sqrt(cplx(sq1, 0.0)), e3 = std::sqrt(cplx(sq3, 0.0)), e9 = std::sqrt(sq9), e11 = std::sqrt(sq11);
    return {e1, -e1, e3, -e3, 0.0, 0.0, 0.0, 0.0, e9, -e9, e11, -e11, e9, -e9, e11, -e11};
}

DispersionValue dispersion(int n, double k, const PolarField& p, double real_tol) {
    if (n < 1 || n > 16) throw InvalidArgument("level must be in [1,16]");
    if (!(k > 0 && k < kPi)) throw InvalidArgument("momentum must lie in (0, pi)");
    DispersionValue v;
    v.n = n;
    v.k = k;
    v.value = dispersion_all(k, p)[static_cast<std::size_t>(n - 1)];
    v.is_real = std::abs(v.value.imag()) < real_tol;
    return v;
}

MomentumGrid momentum_grid(int N, Parity sigma) {
    if (N < 2) throw InvalidArgument("N must be at least 2");
    if (N % 2 != 0) throw OddN("N must be even, got " + std::to_string(N));
    MomentumGrid g;
    if (sigma == Parity::even) {
        for (int m = 0; m < N / 2; ++m) g.paired.push_back((2 * m + 1) * kPi / N);
    } else {
        for (int m = 1; 2 * m < N; ++m) g.paired.push_back(2 * m * kPi / N);
        g.unpaired = {0.0, kPi};
    }
    return g;
}

PhaseLabel classify_phase(double eta, double xi, double tol) {
    const double r = std::hypot(eta, xi);
    const double to_circle = std::abs(r - 1);
    const double axi = std::abs(xi);
    const double to_ray = axi >= 1 ? std::abs(eta) : std::hypot(eta, axi - 1);
    PhaseLabel out;
    out.distance = std::min(to_circle, to_ray);
    if (out.distance < tol) {
        out.label = Phase::boundary;
        out.distance = 0;
    } else if (r < 1) {
        out.label = Phase::II;
    } else {
        out.label = eta > 0 ? Phase::I : Phase::III;
    }
    return out;
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::I: return "I";
        case Phase::II: return "II";
        case Phase::III: return "III";
        case Phase::boundary: return "boundary";
    }
    return "?";
}

}  // namespace ptf
