#include "ptf/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ptf/errors.hpp"
#include "ptf/matfun.hpp"
#include "ptf/sector.hpp"

namespace ptf {
namespace {

void check_sites(int sites) {
    if (sites < 2 || sites % 2 != 0) throw InvalidArgument("site count must be even and >= 2");
    if (sites > kMaxOracleSites)
        throw SizeCap("dense oracle supports at most " + std::to_string(kMaxOracleSites) + " sites");
}

cplx field(const CouplingParams& p, int site) {  // site is 1-based
    return {p.eta, (site % 2 == 0 ? 1.0 : -1.0) * p.xi};
}

struct FermionOp {
    int site;  // 1-based
    bool dagger;
};

// coeff * (op_1 ... op_m) acting rightmost first; Jordan-Wigner signs count lower sites.
void add_fermion_term(ComplexMatrix& h, cplx coeff, std::initializer_list<FermionOp> ops) {
    const unsigned dim = static_cast<unsigned>(h.rows());
    for (unsigned m = 0; m < dim; ++m) {
        unsigned mask = m;
        int sign = 1;
        for (auto it = std::rbegin(ops); it != std::rend(ops); ++it) {
            const unsigned bit = 1u << (it->site - 1);
            const bool occ = mask & bit;
            if (occ == it->dagger) {
                sign = 0;
                break;
            }
            if (std::popcount(mask & (bit - 1)) % 2) sign = -sign;
            mask ^= bit;
        }
        if (sign != 0) h(mask, m) += coeff * static_cast<double>(sign);
    }
}

// Greedy pairing of two spectra by nearest value.
std::vector<std::size_t> pair_levels(const CVector& a, const CVector& b) {
    struct Cand {
        double dist;
        std::size_t i, j;
    };
    std::vector<Cand> cand;
    cand.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) cand.push_back({std::abs(a[i] - b[j]), i, j});
    std::sort(cand.begin(), cand.end(), [](const Cand& p, const Cand& q) {
        return p.dist < q.dist || (p.dist == q.dist && (p.i < q.i || (p.i == q.i && p.j < q.j)));
    });
    std::vector<std::size_t> pairing(a.size());
    std::vector<bool> ua(a.size(), false), ub(b.size(), false);
    for (const Cand& c : cand) {
        if (ua[c.i] || ub[c.j]) continue;
        ua[c.i] = ub[c.j] = true;
        pairing[c.i] = c.j;
    }
    return pairing;
}

SpectralFactors gibbs_factors(const SpectralDecomposition& sd, double beta) {
    double shift = -std::numeric_limits<double>::infinity();
    for (const cplx& e : sd.values) shift = std::max(shift, -beta * e.real());
    cplx sum = 0;
    for (const cplx& e : sd.values) sum += std::exp(-beta * e - shift);
    const cplx log_z = shift + std::log(sum);
    CVector lw(sd.values.size());
    for (std::size_t i = 0; i < lw.size(); ++i) lw[i] = -beta * sd.values[i] - log_z;
    return {sd.right, sd.left, std::move(lw)};
}

using RealMatrix = std::vector<std::vector<double>>;  // row major, square

// [[Re A, -Im A], [Im A, Re A]]
RealMatrix real_embedding(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    RealMatrix e(2 * n, std::vector<double>(2 * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            e[i][j] = e[i + n][j + n] = a(i, j).real();
            e[i][j + n] = -a(i, j).imag();
            e[i + n][j] = a(i, j).imag();
        }
    return e;
}

// Cyclic Jacobi for a real symmetric matrix; returns eigenvalues, eigenvectors in columns of v.
std::vector<double> jacobi_eigen(RealMatrix a, RealMatrix& v) {
    const std::size_t n = a.size();
    v.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0, total = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) (i == j ? total : off) += a[i][j] * a[i][j];
        if (off <= 1e-30 * (total + off)) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = a[i][i];
    return w;
}

// One-sided Jacobi: singular values of a as the column norms after orthogonalization.
std::vector<double> jacobi_singular_values(RealMatrix a) {
    const std::size_t m = a.size(), n = a.front().size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0, gamma = 0;
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += a[k][p] * a[k][p];
                    beta += a[k][q] * a[k][q];
                    gamma += a[k][p] * a[k][q];
                }
                if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                const double c = 1 / std::sqrt(1 + t * t), s = c * t;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
            }
        if (!rotated) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < m; ++k) s += a[k][j] * a[k][j];
        sv[j] = std::sqrt(s);
    }
    return sv;
}

}  // namespace

SpinChainDense spin_hamiltonian_dense(const CouplingParams& p, int sites) {
    check_sites(sites);
    const unsigned dim = 1u << sites;
    SpinChainDense out{sites, ComplexMatrix(dim, dim)};
    for (unsigned s = 0; s < dim; ++s) {
        for (int j = 0; j < sites; ++j) {
            const int jn = (j + 1) % sites;
            const double zj = (s >> j) & 1u ? -1.0 : 1.0;
            const double zn = (s >> jn) & 1u ? -1.0 : 1.0;
            out.matrix(s, s) += -p.J * zj * zn;
            out.matrix(s ^ (1u << j), s) += -p.J * field(p, j + 1);
        }
    }
    return out;
}

ComplexMatrix spin_parity_operator(int sites) {
    check_sites(sites);
    const unsigned dim = 1u << sites, all = dim - 1;
    ComplexMatrix pi(dim, dim);
    for (unsigned s = 0; s < dim; ++s) pi(s ^ all, s) = 1.0;
    return pi;
}

ComplexMatrix fermion_hamiltonian_dense(const CouplingParams& p, int sites, Parity sigma) {
    check_sites(sites);
    const unsigned dim = 1u << sites;
    ComplexMatrix h(dim, dim);
    const double J = p.J;
    for (int j = 1; j < sites; ++j) {
        add_fermion_term(h, -J, {{j, true}, {j + 1, false}});
        add_fermion_term(h, -J, {{j + 1, true}, {j, false}});
        add_fermion_term(h, -J, {{j, true}, {j + 1, true}});
        add_fermion_term(h, -J, {{j + 1, false}, {j, false}});
    }
    const double s = J * static_cast<int>(sigma);
    add_fermion_term(h, s, {{sites, true}, {1, false}});
    add_fermion_term(h, s, {{1, true}, {sites, false}});
    add_fermion_term(h, s, {{sites, true}, {1, true}});
    add_fermion_term(h, s, {{1, false}, {sites, false}});
    // Field term sum_j g_j (1 - 2 n_j), every site carrying its own g_j.
    for (int j = 1; j <= sites; ++j) {
        const cplx g = field(p, j);
        for (unsigned m = 0; m < dim; ++m) h(m, m) += -J * g;
        add_fermion_term(h, 2.0 * J * g, {{j, true}, {j, false}});
    }
    return h;
}

ComplexMatrix fermion_parity_projector(int sites, Parity sigma) {
    check_sites(sites);
    const unsigned dim = 1u << sites;
    ComplexMatrix proj(dim, dim);
    for (unsigned m = 0; m < dim; ++m) {
        const int par = std::popcount(m) % 2 ? -1 : 1;
        proj(m, m) = 0.5 * (1.0 + static_cast<int>(sigma) * par);
    }
    return proj;
}

CVector jw_sector_spectrum(const CouplingParams& p, int sites, Parity sigma) {
    const ComplexMatrix h = fermion_hamiltonian_dense(p, sites, sigma);
    const ComplexMatrix proj = fermion_parity_projector(sites, sigma);
    std::vector<unsigned> keep;
    for (unsigned m = 0; m < h.rows(); ++m)
        if (proj(m, m) != cplx{}) keep.push_back(m);
    ComplexMatrix sub(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) sub(i, j) = h(keep[i], keep[j]);
    return eigenvalues_general(sub);
}

FermionSumDense fermion_sum_dense(const CouplingParams& p, int N, DenseRealization how) {
    if (N != 4) throw SizeCap("the dense fermionic sum is implemented for N = 4 only");
    FermionSumDense out{N, {}};
    if (how == DenseRealization::real_space) {
        out.matrix = fermion_hamiltonian_dense(p, 2 * N, Parity::even);
        return out;
    }
    const MomentumGrid grid = momentum_grid(N, Parity::even);
    const ComplexMatrix id = ComplexMatrix::identity(fock::kDim);
    const ComplexMatrix h1 = build_sector_hamiltonian(grid.paired[0], p).matrix;
    const ComplexMatrix h2 = build_sector_hamiltonian(grid.paired[1], p).matrix;
    out.matrix = kron(h1, id) + kron(id, h2);
    out.matrix *= -p.J;
    return out;
}

CVector fermion_sum_fidelity_values(const CouplingParams& p1, const CouplingParams& p2,
                                    const std::vector<double>& betas, int N, DenseRealization how) {
    for (double beta : betas)
        if (!(beta >= 0) || !std::isfinite(beta)) throw InvalidArgument("beta must be finite and >= 0");
    if (p1.J != p2.J) throw InvalidArgument("both points must share J");
    // J is already inside the dense matrices; weights use exp(-beta H).
    const SpectralDecomposition a = eig_general(fermion_sum_dense(p1, N, how).matrix);
    const SpectralDecomposition b = eig_general(fermion_sum_dense(p2, N, how).matrix);
    const std::vector<std::size_t> pairing = pair_levels(a.values, b.values);
    CVector out;
    out.reserve(betas.size());
    for (double beta : betas) {
        if (beta == 0) {
            out.emplace_back(1.0);
            continue;
        }
        out.push_back(trace_sqrt_product(gibbs_factors(a, beta), gibbs_factors(b, beta), &pairing).value);
    }
    return out;
}

cplx fermion_sum_fidelity_value(const CouplingParams& p1, const CouplingParams& p2, double beta, int N,
                                DenseRealization how) {
    return fermion_sum_fidelity_values(p1, p2, std::vector<double>{beta}, N, how).front();
}

double fermion_sum_fidelity(const CouplingParams& p1, const CouplingParams& p2, double beta, int N,
                            DenseRealization how) {
    return std::abs(fermion_sum_fidelity_value(p1, p2, beta, N, how));
}

HermitianFidelity hermitian_uhlmann_fidelity(const CouplingParams& p1, const CouplingParams& p2, double beta,
                                             int N) {
    if (p1.xi != 0.0 || p2.xi != 0.0) throw InvalidArgument("the Hermitian reference needs xi = 0");
    if (!(beta >= 0)) throw InvalidArgument("beta must be >= 0");
    const MomentumGrid grid = momentum_grid(N, Parity::even);
    HermitianFidelity out;
    for (double k : grid.paired) {
        // Each eigenpair of h appears twice in the embedding; weights and traces are doubled alike.
        RealMatrix va, vb;
        const std::vector<double> ea = jacobi_eigen(real_embedding(build_sector_hamiltonian(k, p1).matrix), va);
        const std::vector<double> eb = jacobi_eigen(real_embedding(build_sector_hamiltonian(k, p2).matrix), vb);
        auto half_weights = [&](const std::vector<double>& e, double J) {
            const double top = *std::max_element(e.begin(), e.end());
            double z = 0;
            for (double x : e) z += std::exp(beta * J * (x - top));
            std::vector<double> h(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) h[i] = std::sqrt(2 * std::exp(beta * J * (e[i] - top)) / z);
            return h;
        };
        const std::vector<double> ha = half_weights(ea, p1.J), hb = half_weights(eb, p2.J);
        const std::size_t n = ea.size();
        RealMatrix g(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0;
                for (std::size_t r = 0; r < n; ++r) s += va[r][i] * vb[r][j];
                g[i][j] = ha[i] * s * hb[j];
            }
        const std::vector<double> sv = jacobi_singular_values(std::move(g));
        const double fk = 0.5 * std::accumulate(sv.begin(), sv.end(), 0.0);
        out.log_F += std::log(fk);
    }
    out.F = std::exp(out.log_F);
    return out;
}

ComplexMatrix dense_gibbs_state(const ComplexMatrix& h, double beta, double J) {
    const CVector ev = eigenvalues_general(h);
    double lo = std::numeric_limits<double>::infinity();
    for (const cplx& e : ev) lo = std::min(lo, e.real());
    ShiftedExp ex = expm_shifted((-beta * J) * h, -beta * J * lo);
    const cplx tr = ex.value.trace();
    ex.value *= 1.0 / tr;
    return ex.value;
}

}  // namespace ptf
