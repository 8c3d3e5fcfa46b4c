#include "ptf/sector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ptf/errors.hpp"
#include "ptf/matfun.hpp"

namespace ptf {

namespace fock {

Action create(unsigned mask, int mode) {
    const unsigned bit = 1u << mode;
    if (mask & bit) return {mask, 0};
    const int below = std::popcount(mask & (bit - 1));
    return {mask | bit, (below % 2) ? -1 : 1};
}

Action annihilate(unsigned mask, int mode) {
    const unsigned bit = 1u << mode;
    if (!(mask & bit)) return {mask, 0};
    const int below = std::popcount(mask & (bit - 1));
    return {mask & ~bit, (below % 2) ? -1 : 1};
}

int parity(unsigned mask) { return (std::popcount(mask) % 2) ? -1 : 1; }

}  // namespace fock

namespace {

constexpr double kDenominatorTol = 1e-12;
// Odd-block vectors are polynomial in epsilon; they collapse where two levels merge.
constexpr double kOddNormTol = 1e-8;
constexpr double kGramCondMax = 1e12;
constexpr double kGramDriftMax = 1e-8;

struct Op {
    int mode;
    bool dagger;
};

// coeff * (op_1 op_2 ... op_m), acting rightmost first.
void add_term(ComplexMatrix& h, cplx coeff, std::initializer_list<Op> ops) {
    for (unsigned m = 0; m < fock::kDim; ++m) {
        unsigned mask = m;
        int sign = 1;
        for (auto it = std::rbegin(ops); it != std::rend(ops); ++it) {
            const fock::Action a = it->dagger ? fock::create(mask, it->mode) : fock::annihilate(mask, it->mode);
            if (a.sign == 0) {
                sign = 0;
                break;
            }
            mask = a.mask;
            sign *= a.sign;
        }
        if (sign != 0) h(mask, m) += coeff * static_cast<double>(sign);
    }
}

// H_K on modes (a, b) at +K; bm is beta at -K.
void add_half(ComplexMatrix& h, double kk, int a, int b, int bm, double eta, double xi) {
    const cplx e = std::polar(1.0, kk);
    const cplx hop = e + 1.0, pair = e - 1.0;
    add_term(h, hop, {{a, true}, {b, false}});
    add_term(h, std::conj(hop), {{b, true}, {a, false}});
    add_term(h, pair, {{a, true}, {bm, true}});
    add_term(h, std::conj(pair), {{bm, false}, {a, false}});
    for (unsigned m = 0; m < fock::kDim; ++m) h(m, m) += 2 * eta;
    add_term(h, cplx(-2 * eta, -2 * xi), {{a, true}, {a, false}});
    add_term(h, cplx(-2 * eta, 2 * xi), {{b, true}, {b, false}});
}

// Right eigenvector at (eta, xi) for level n, evaluated at eigenvalue lambda (units of h/2).
CVector right_state(int n, double k, double eta, double xi, cplx lambda) {
    CVector v(fock::kDim);
    const cplx I(0, 1);
    const double c = std::cos(k / 2), s = std::sin(k / 2);
    const cplx E = std::polar(1.0, k / 2);

    auto check = [&](cplx d) {
        if (std::abs(d) < kDenominatorTol)
            throw SingularDenominator("closed-form denominator vanishes for level " + std::to_string(n));
        return d;
    };

    if (n >= 1 && n <= 4) {
        // vacuum, a0a2, a1a3, a0a3, a1a2, full
        v[0] = -2.0 * I * s / check(lambda - 2 * eta);
        v[5] = 2 * c / check(lambda + 2.0 * I * xi);
        v[10] = 2 * c / check(lambda - 2.0 * I * xi);
        v[9] = E;
        v[6] = std::conj(E);
        v[15] = 2.0 * I * s / check(lambda + 2 * eta);
    } else if (n == 5) {
        // Zero mode of the even block, denominators cleared by eta*xi.
        const double ex = eta * xi;
        v[0] = I * s * xi;
        v[5] = -I * c * eta;
        v[10] = I * c * eta;
        v[9] = ex * E;
        v[6] = ex * std::conj(E);
        v[15] = I * s * xi;
        if (norm2(v) < kDenominatorTol) throw SingularDenominator("zero-mode state degenerates at eta = xi = 0");
    } else if (n == 6) {
        v[9] = E / std::sqrt(2.0);
        v[6] = -std::conj(E) / std::sqrt(2.0);
    } else if (n == 7) {
        v[3] = 1.0;
    } else if (n == 8) {
        v[12] = 1.0;
    } else {
        // Odd blocks; the -k block is the +k one with k -> -k on the mirrored masks.
        const bool plus = n <= 12;
        const double sk = plus ? s : -s;
        const cplx Ek = plus ? E : std::conj(E);
        const cplx g(eta, xi);
        const cplx q = (lambda + cplx(eta, -xi)) * (lambda * lambda - g * g - 1.0) +
                       2.0 * cplx(eta * c * c, -xi * sk * sk);
        const cplx a = Ek * q;
        const cplx b = c * ((lambda + eta) * (lambda + eta) + xi * xi - 1.0);
        const cplx t = I * sk * ((lambda - I * xi) * (lambda - I * xi) - eta * eta - 1.0);
        const cplx u = -I * Ek * (2 * sk * c) * g;
        const std::array<unsigned, 4> masks = plus ? std::array<unsigned, 4>{1, 2, 7, 11}
                                                   : std::array<unsigned, 4>{4, 8, 13, 14};
        v[masks[0]] = a;
        v[masks[1]] = b;
        v[masks[2]] = t;
        v[masks[3]] = u;
        if (norm2(v) < kOddNormTol)
            throw SingularDenominator("odd-block closed form degenerates for level " + std::to_string(n));
    }
    return v;
}

void check_level(int n, double k) {
    if (n < 1 || n > 16) throw InvalidArgument("level must be in [1,16]");
    if (!(k > 0 && k < kPi)) throw InvalidArgument("momentum must lie in (0, pi)");
}

cplx level_value(int n, double k, double eta, double xi) {
    return dispersion_all(k, polar_from_cartesian(eta, xi))[static_cast<std::size_t>(n - 1)];
}

double cond1(const ComplexMatrix& g) {
    ComplexMatrix inv;
    try {
        inv = inverse(g);
    } catch (const DefectiveMatrix&) {
        return std::numeric_limits<double>::infinity();
    }
    return g.norm1() * inv.norm1();
}

BiorthogonalEigensystem numeric_eigensystem(double k, const CouplingParams& p) {
    const SectorHamiltonian sh = build_sector_hamiltonian(k, p);
    const auto eps = dispersion_all(k, polar_from_cartesian(p.eta, p.xi));
    ComplexMatrix rights(fock::kDim, fock::kDim), lefts(fock::kDim, fock::kDim);
    CVector values(fock::kDim);
    for (const SectorBlock& blk : sector_blocks()) {
        const std::size_t m = blk.masks.size();
        ComplexMatrix sub(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) sub(i, j) = sh.matrix(blk.masks[i], blk.masks[j]);
        const SpectralDecomposition sd = eig_general(sub);
        // Pair numeric eigenvalues with levels by the closest total assignment.
        std::vector<std::size_t> perm(m), best;
        std::iota(perm.begin(), perm.end(), 0);
        double best_cost = std::numeric_limits<double>::infinity();
        do {
            double cost = 0;
            for (std::size_t i = 0; i < m; ++i)
                cost += std::abs(sd.values[perm[i]] - 2.0 * eps[static_cast<std::size_t>(blk.levels[i] - 1)]);
            if (cost < best_cost) {
                best_cost = cost;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t col = static_cast<std::size_t>(blk.levels[i] - 1);
            values[col] = sd.values[best[i]];
            for (std::size_t r = 0; r < m; ++r) {
                rights(blk.masks[r], col) = sd.right(r, best[i]);
                lefts(col, blk.masks[r]) = sd.left(best[i], r);
            }
        }
    }
    BiorthogonalEigensystem es = biorthonormalize(std::move(rights), std::move(lefts), std::move(values));
    es.k = k;
    return es;
}

BiorthogonalEigensystem analytic_eigensystem(double k, const CouplingParams& p) {
    const auto eps = dispersion_all(k, polar_from_cartesian(p.eta, p.xi));
    ComplexMatrix rights(fock::kDim, fock::kDim), lefts(fock::kDim, fock::kDim);
    CVector values(fock::kDim);
    for (int n = 1; n <= 16; ++n) {
        const std::size_t i = static_cast<std::size_t>(n - 1);
        const cplx e = eps[i];
        rights.set_column(i, right_state(n, k, p.eta, p.xi, e));
        CVector l = right_state(n, k, p.eta, -p.xi, std::conj(e));
        for (auto& z : l) z = std::conj(z);
        lefts.set_row(i, l);
        values[i] = 2.0 * e;
    }
    BiorthogonalEigensystem es = biorthonormalize(std::move(rights), std::move(lefts), std::move(values));
    es.k = k;
    return es;
}

}  // namespace

const std::array<SectorBlock, 5>& sector_blocks() {
    static const std::array<SectorBlock, 5> blocks = {
        SectorBlock{{0, 5, 10, 9, 6, 15}, {1, 2, 3, 4, 5, 6}},
        SectorBlock{{3}, {7}},
        SectorBlock{{12}, {8}},
        SectorBlock{{1, 2, 7, 11}, {9, 10, 11, 12}},
        SectorBlock{{4, 8, 13, 14}, {13, 14, 15, 16}},
    };
    return blocks;
}

std::size_t block_of_level(int n) {
    if (n < 1 || n > 16) throw InvalidArgument("level must be in [1,16]");
    if (n <= 6) return 0;
    if (n == 7) return 1;
    if (n == 8) return 2;
    return n <= 12 ? 3 : 4;
}

SectorHamiltonian build_sector_hamiltonian(double k, const CouplingParams& p) {
    if (!(k > 0 && k < kPi)) throw InvalidArgument("momentum must lie in (0, pi)");
    SectorHamiltonian sh;
    sh.k = k;
    sh.params = p;
    sh.matrix = ComplexMatrix(fock::kDim, fock::kDim);
    add_half(sh.matrix, k, fock::kAlphaK, fock::kBetaK, fock::kBetaMinusK, p.eta, p.xi);
    add_half(sh.matrix, -k, fock::kAlphaMinusK, fock::kBetaMinusK, fock::kBetaK, p.eta, p.xi);
    return sh;
}

CVector analytic_right_eigenstate(int n, double k, const CouplingParams& p) {
    check_level(n, k);
    return right_state(n, k, p.eta, p.xi, level_value(n, k, p.eta, p.xi));
}

CVector analytic_left_eigenstate(int n, double k, const CouplingParams& p) {
    check_level(n, k);
    CVector l = right_state(n, k, p.eta, -p.xi, std::conj(level_value(n, k, p.eta, p.xi)));
    for (auto& z : l) z = std::conj(z);
    return l;
}

BiorthogonalEigensystem biorthonormalize(ComplexMatrix rights, ComplexMatrix lefts, CVector values,
                                         double cluster_tol) {
    const std::size_t n = values.size();
    if (rights.cols() != n || lefts.rows() != n || rights.rows() != lefts.cols())
        throw InvalidArgument("biorthonormalize: inconsistent shapes");
    if (n > 16) throw InvalidArgument("biorthonormalize handles at most 16 levels");
    const std::size_t d = rights.rows();

    auto pair_dot = [&](std::size_t a, std::size_t b) {
        cplx s = 0;
        for (std::size_t p = 0; p < d; ++p) s += lefts(a, p) * rights(p, b);
        return s;
    };
    auto col_norm = [&](std::size_t j) {
        double s = 0;
        for (std::size_t p = 0; p < d; ++p) s += std::norm(rights(p, j));
        return std::sqrt(s);
    };
    auto row_norm = [&](std::size_t i) {
        double s = 0;
        for (std::size_t p = 0; p < d; ++p) s += std::norm(lefts(i, p));
        return std::sqrt(s);
    };

    // Degeneracy clusters by transitive closure.
    std::vector<std::size_t> cluster(n);
    std::iota(cluster.begin(), cluster.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) < cluster_tol) {
                const std::size_t a = cluster[i], b = cluster[j];
                for (auto& c : cluster)
                    if (c == b) c = a;
            }

    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        std::vector<std::size_t> members;
        for (std::size_t j = i; j < n; ++j)
            if (cluster[j] == cluster[i]) members.push_back(j);
        for (auto j : members) done[j] = true;
        const std::size_t m = members.size();

        // Diagonal symmetric scaling first.
        for (auto j : members) {
            const cplx g = pair_dot(j, j);
            const double scale = row_norm(j) * col_norm(j);
            if (m == 1 && !(std::abs(g) > scale / kGramCondMax))
                throw SingularGram("left/right pair is orthogonal (exceptional point) at index " + std::to_string(j));
            if (std::abs(g) > 0) {
                const cplx sq = std::sqrt(g);
                for (std::size_t p = 0; p < d; ++p) {
                    rights(p, j) /= sq;
                    lefts(j, p) /= sq;
                }
            }
        }
        if (m == 1) continue;

        ComplexMatrix g(m, m), gn(m, m);
        double off = 0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                g(a, b) = pair_dot(members[a], members[b]);
                gn(a, b) = g(a, b) / (row_norm(members[a]) * col_norm(members[b]));
                if (a != b) off = std::max(off, std::abs(g(a, b)));
            }
        if (cond1(gn) > kGramCondMax)
            throw SingularGram("cluster Gram matrix is singular (exceptional point), size " + std::to_string(m));
        bool unit = true;
        for (std::size_t a = 0; a < m; ++a)
            if (std::abs(g(a, a) - 1.0) > 1e-14) unit = false;
        if (unit && off <= 1e-14) continue;
        const ComplexMatrix gi = inverse(g);
        ComplexMatrix block(d, m);
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t b = 0; b < m; ++b) block(p, b) = rights(p, members[b]);
        const ComplexMatrix fixed = block * gi;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t b = 0; b < m; ++b) rights(p, members[b]) = fixed(p, b);
    }

    // Rounding-level cross terms between distinct levels grow like eps * cond and spoil
    // completeness near exceptional points; remove them with one Gram correction.
    // Larger mismatches are left in place so that a broken family stays visible.
    ComplexMatrix gram = lefts * rights;
    double drift = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            drift = std::max(drift, std::abs(gram(a, b) - (a == b ? 1.0 : 0.0)));
    if (drift > 0 && drift < kGramDriftMax) rights = rights * inverse(gram);

    BiorthogonalEigensystem es;
    es.values = std::move(values);
    es.cond = rights.norm1() * lefts.norm1();
    es.right = std::move(rights);
    es.left = std::move(lefts);
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 16); ++i) es.levels[i] = static_cast<int>(i) + 1;
    return es;
}

BiorthogonalEigensystem sector_eigensystem(double k, const CouplingParams& p, SolveMethod method) {
    if (!(k > 0 && k < kPi)) throw InvalidArgument("momentum must lie in (0, pi)");
    switch (method) {
        case SolveMethod::analytic: return analytic_eigensystem(k, p);
        case SolveMethod::numeric: return numeric_eigensystem(k, p);
        case SolveMethod::automatic:
            try {
                return analytic_eigensystem(k, p);
            } catch (const SingularDenominator&) {
            } catch (const SingularGram&) {
            }
            return numeric_eigensystem(k, p);
    }
    return analytic_eigensystem(k, p);
}

void canonical_sort(CVector& values, double fuzz) {
    std::sort(values.begin(), values.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    std::size_t start = 0;
    while (start < values.size()) {
        std::size_t end = start + 1;
        while (end < values.size() && values[end].real() - values[end - 1].real() <= fuzz) ++end;
        std::sort(values.begin() + static_cast<std::ptrdiff_t>(start), values.begin() + static_cast<std::ptrdiff_t>(end),
                  [](cplx a, cplx b) { return a.imag() < b.imag(); });
        start = end;
    }
}

double multiset_distance(CVector a, CVector b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    canonical_sort(a);
    canonical_sort(b);
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace ptf
