#include "ptf/fidelity.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "ptf/errors.hpp"

namespace ptf {
namespace {

constexpr std::size_t kDim = fock::kDim;

SpectralFactors block_factors(const ThermalSectorState& s, const SectorBlock& blk) {
    const std::size_t m = blk.masks.size(), nl = blk.levels.size();
    SpectralFactors f{ComplexMatrix(m, nl), ComplexMatrix(nl, m), CVector(nl)};
    const BiorthogonalEigensystem& es = *s.eigensystem;
    for (std::size_t j = 0; j < nl; ++j) {
        const std::size_t col = static_cast<std::size_t>(blk.levels[j] - 1);
        f.log_weights[j] = s.log_weights[col];
        for (std::size_t i = 0; i < m; ++i) {
            f.right(i, j) = es.right(blk.masks[i], col);
            f.left(j, i) = es.left(col, blk.masks[i]);
        }
    }
    return f;
}

void check_beta(double beta) {
    if (!(beta >= 0) || !std::isfinite(beta)) throw InvalidArgument("beta must be finite and >= 0");
}

}  // namespace

ThermalSectorState thermal_sector_state(double k, const CouplingParams& p, double beta, SolveMethod method) {
    check_beta(beta);
    return thermal_sector_state(std::make_shared<const BiorthogonalEigensystem>(sector_eigensystem(k, p, method)),
                                p, beta);
}

ThermalSectorState thermal_sector_state(std::shared_ptr<const BiorthogonalEigensystem> es,
                                        const CouplingParams& p, double beta) {
    check_beta(beta);
    ThermalSectorState s;
    s.k = es->k;
    s.params = p;
    s.beta = beta;
    const std::size_t n = es->values.size();
    for (const cplx& v : es->values)
        if (std::abs(v.imag()) / 2 > kRealTol) s.pt_broken = true;

    s.log_weights.resize(n);
    if (beta == 0) {
        // Infinite temperature: maximally mixed by definition.
        s.log_partition = std::log(static_cast<double>(n));
        std::fill(s.log_weights.begin(), s.log_weights.end(), cplx(-std::log(static_cast<double>(n))));
        s.rho = ComplexMatrix::identity(n);
        s.rho *= 1.0 / static_cast<double>(n);
        s.eigensystem = std::move(es);
        return s;
    }

    const double bj = beta * p.J;
    double shift = -std::numeric_limits<double>::infinity();
    for (const cplx& v : es->values) shift = std::max(shift, bj * v.real());
    cplx sum = 0;
    for (const cplx& v : es->values) sum += std::exp(bj * v - shift);
    s.log_norm = shift;
    s.log_partition = shift + std::log(sum);
    for (std::size_t i = 0; i < n; ++i) s.log_weights[i] = bj * es->values[i] - s.log_partition;

    s.rho = ComplexMatrix(kDim, kDim);
    for (const SectorBlock& blk : sector_blocks()) {
        for (int level : blk.levels) {
            const std::size_t col = static_cast<std::size_t>(level - 1);
            const cplx w = std::exp(s.log_weights[col]);
            for (unsigned a : blk.masks) {
                const cplx ra = w * es->right(a, col);
                for (unsigned b : blk.masks) s.rho(a, b) += ra * es->left(col, b);
            }
        }
    }
    s.eigensystem = std::move(es);
    return s;
}

cplx sector_fidelity(const ThermalSectorState& s1, const ThermalSectorState& s2) {
    if (s1.k != s2.k) throw InvalidArgument("sector_fidelity: momenta differ");
    if (s1.beta != s2.beta) throw InvalidArgument("sector_fidelity: inverse temperatures differ");
    if (s1.beta == 0) return 1.0;
    cplx total = 0;
    for (const SectorBlock& blk : sector_blocks()) {
        // Level n of one state continues level n of the other.
        std::vector<std::size_t> same(blk.levels.size());
        for (std::size_t i = 0; i < same.size(); ++i) same[i] = i;
        total += trace_sqrt_product(block_factors(s1, blk), block_factors(s2, blk), &same).value;
    }
    return total;
}

cplx sector_fidelity_dense(const ThermalSectorState& s1, const ThermalSectorState& s2) {
    if (s1.k != s2.k || s1.beta != s2.beta) throw InvalidArgument("sector_fidelity_dense: mismatched states");
    return trace_sqrt_product(s1.rho, s2.rho).value;
}

std::vector<FidelityPoint> total_fidelity(const CouplingParams& p1, const CouplingParams& p2,
                                          const std::vector<double>& betas, int N) {
    std::vector<FidelityPoint> out(betas.size());
    for (std::size_t b = 0; b < betas.size(); ++b) {
        out[b].eta = p1.eta;
        out[b].xi = p1.xi;
        out[b].beta = betas[b];
    }
    auto fail = [](FidelityPoint& pt, const std::string& what) {
        pt.F = std::numeric_limits<double>::quiet_NaN();
        pt.log_F = std::numeric_limits<double>::quiet_NaN();
        pt.im_residual = std::numeric_limits<double>::quiet_NaN();
        pt.broken_sectors = 0;
        pt.error = what;
    };
    try {
        p1.validate();
        p2.validate();
        if (p1.N != N || p2.N != N) throw InvalidArgument("parameter N does not match the grid N");
        if (p1.J != p2.J) throw InvalidArgument("both points must share J");
        for (double b : betas) check_beta(b);
    } catch (const std::exception& e) {
        for (auto& pt : out) fail(pt, e.what());
        return out;
    }
    // A failing eigensystem spoils every beta; a failing kernel only its own beta.
    for (double k : momentum_grid(N, Parity::even).paired) {
        std::shared_ptr<const BiorthogonalEigensystem> e1, e2;
        try {
            e1 = std::make_shared<const BiorthogonalEigensystem>(sector_eigensystem(k, p1));
            e2 = std::make_shared<const BiorthogonalEigensystem>(sector_eigensystem(k, p2));
        } catch (const Error& e) {
            for (auto& pt : out)
                if (pt.error.empty()) fail(pt, SectorError(k, e.what()).what());
            break;
        }
        for (std::size_t b = 0; b < betas.size(); ++b) {
            FidelityPoint& pt = out[b];
            if (!pt.error.empty()) continue;
            try {
                const ThermalSectorState s1 = thermal_sector_state(e1, p1, betas[b]);
                const ThermalSectorState s2 = thermal_sector_state(e2, p2, betas[b]);
                const cplx fk = sector_fidelity(s1, s2);
                const double mod = std::abs(fk);
                pt.log_F += std::log(mod);
                if (mod > 0) pt.im_residual = std::max(pt.im_residual, std::abs(fk.imag()) / mod);
                if (s1.pt_broken || s2.pt_broken) ++pt.broken_sectors;
            } catch (const Error& e) {
                fail(pt, SectorError(k, e.what()).what());
            }
        }
    }
    for (auto& pt : out)
        if (pt.error.empty()) pt.F = std::exp(pt.log_F);
    return out;
}

FidelityPoint total_fidelity(const CouplingParams& p1, const CouplingParams& p2, double beta, int N) {
    p1.validate();
    p2.validate();
    if (p1.N != N || p2.N != N) throw InvalidArgument("parameter N does not match the grid N");
    check_beta(beta);
    FidelityPoint pt;
    pt.eta = p1.eta;
    pt.xi = p1.xi;
    pt.beta = beta;
    for (double k : momentum_grid(N, Parity::even).paired) {
        cplx fk;
        bool broken = false;
        try {
            const ThermalSectorState s1 = thermal_sector_state(k, p1, beta);
            const ThermalSectorState s2 = thermal_sector_state(k, p2, beta);
            fk = sector_fidelity(s1, s2);
            broken = s1.pt_broken || s2.pt_broken;
        } catch (const Error& e) {
            throw SectorError(k, e.what());
        }
        const double mod = std::abs(fk);
        pt.log_F += std::log(mod);
        if (mod > 0) pt.im_residual = std::max(pt.im_residual, std::abs(fk.imag()) / mod);
        if (broken) ++pt.broken_sectors;
    }
    pt.F = std::exp(pt.log_F);
    return pt;
}

std::pair<CouplingParams, CouplingParams> Displacement::apply(double eta, double xi, double J, int N) const {
    CouplingParams a, b;
    a.J = b.J = J;
    a.N = b.N = N;
    if (mode == Mode::cartesian) {
        a.eta = eta;
        a.xi = xi;
        b.eta = eta + d_eta;
        b.xi = xi + d_xi;
    } else {
        const PolarField pf = polar_from_cartesian(eta, xi);
        a = params_from_polar(pf.r - dr, pf.phi, J, N);
        b = params_from_polar(pf.r + dr, pf.phi, J, N);
    }
    return {a, b};
}

void Displacement::validate() const {
    if (mode == Mode::cartesian) {
        if (!std::isfinite(d_eta) || !std::isfinite(d_xi)) throw InvalidArgument("displacement must be finite");
    } else if (!(dr >= 0) || !std::isfinite(dr)) {
        throw InvalidArgument("radial displacement must be >= 0");
    }
}

void SweepConfig::validate() const {
    if (!(eta_step > 0) || !(xi_step > 0)) throw InvalidArgument("grid steps must be positive");
    if (!(eta_max >= eta_min) || !(xi_max >= xi_min)) throw InvalidArgument("grid ranges must be ordered");
    if (betas.empty()) throw InvalidArgument("at least one beta is required");
    for (double b : betas) check_beta(b);
    if (N < 2) throw InvalidArgument("N must be at least 2");
    if (N % 2 != 0) throw OddN("N must be even, got " + std::to_string(N));
    if (!(J > 0)) throw InvalidArgument("J must be positive");
    displacement.validate();
}

std::vector<double> grid_axis(double min, double max, double step) {
    if (!(step > 0)) throw InvalidArgument("grid step must be positive");
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> axis(count);
    for (std::size_t i = 0; i < count; ++i) axis[i] = min + static_cast<double>(i) * step;
    return axis;
}

std::vector<FidelityPoint> sweep2d(const SweepConfig& cfg, unsigned threads, const ProgressFn& progress) {
    cfg.validate();
    const std::vector<double> etas = grid_axis(cfg.eta_min, cfg.eta_max, cfg.eta_step);
    const std::vector<double> xis = grid_axis(cfg.xi_min, cfg.xi_max, cfg.xi_step);
    const std::size_t nodes = etas.size() * xis.size();
    std::vector<std::vector<FidelityPoint>> results(nodes);

    auto compute_node = [&](std::size_t i) {
        const double eta = etas[i % etas.size()], xi = xis[i / etas.size()];
        const auto [a, b] = cfg.displacement.apply(eta, xi, cfg.J, cfg.N);
        auto pts = total_fidelity(a, b, cfg.betas, cfg.N);
        for (auto& pt : pts) {
            pt.eta = eta;
            pt.xi = xi;
        }
        results[i] = std::move(pts);
    };

    threads = std::max(1u, threads);
    if (threads == 1 || nodes < 2) {
        for (std::size_t i = 0; i < nodes; ++i) {
            compute_node(i);
            if (progress) progress(i + 1, nodes);
        }
    } else {
        std::atomic<std::size_t> next{0}, done{0};
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < nodes; i = next++) {
                        compute_node(i);
                        ++done;
                    }
                });
            if (progress) {
                while (done < nodes) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(200));
                    progress(done, nodes);
                }
            }
        }
    }

    std::vector<FidelityPoint> rows;
    rows.reserve(nodes * cfg.betas.size());
    for (std::size_t b = 0; b < cfg.betas.size(); ++b)
        for (std::size_t i = 0; i < nodes; ++i) rows.push_back(results[i][b]);
    return rows;
}

std::vector<FidelityPoint> temp_scan(double phi, double dr, const std::vector<double>& betas, int N, double J) {
    if (!(dr >= 0) || dr >= 1) throw InvalidArgument("dr must lie in [0, 1)");
    for (std::size_t i = 1; i < betas.size(); ++i)
        if (betas[i] < betas[i - 1]) throw InvalidArgument("betas must be ascending");
    const CouplingParams a = params_from_polar(1 - dr, phi, J, N);
    const CouplingParams b = params_from_polar(1 + dr, phi, J, N);
    auto pts = total_fidelity(a, b, betas, N);
    for (auto& pt : pts) {
        pt.eta = std::cos(phi);
        pt.xi = std::sin(phi);
    }
    return pts;
}

}  // namespace ptf
