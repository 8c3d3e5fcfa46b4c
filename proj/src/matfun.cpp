#include "ptf/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ptf/errors.hpp"

namespace ptf {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 40;
constexpr double kDefectiveCond = 1e12;
constexpr double kAxisTol = 1e-8;

void check_input(const ComplexMatrix& m) {
    if (!m.square() || m.rows() == 0) throw InvalidArgument("eigensolver needs a non-empty square matrix");
    if (m.rows() > kMaxDimension)
        throw SizeCap("dimension " + std::to_string(m.rows()) + " exceeds cap " + std::to_string(kMaxDimension));
    m.require_finite();
}

// Diagonal similarity by powers of two so that row and column norms are comparable.
CVector balance(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    CVector d(n, 1.0);
    bool changed = true;
    for (int pass = 0; changed && pass < 100; ++pass) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0, r = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0 || r == 0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2) { c *= 2; r /= 2; f *= 2; }
            while (c >= r * 2) { c /= 2; r *= 2; f /= 2; }
            if ((c + r) < 0.95 * s) {
                changed = true;
                d[i] *= f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return d;
}

// Householder reduction to upper Hessenberg form; accumulates into q when given.
void hessenberg(ComplexMatrix& a, ComplexMatrix* q) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    CVector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Work on the column scaled by its largest entry so squared moduli stay representable.
        double scale = 0;
        for (std::size_t i = k + 1; i < n; ++i) scale = std::max(scale, std::abs(a(i, k)));
        if (scale == 0) continue;
        const std::size_t m = n - k - 1;
        for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k) / scale;
        double tail = 0;
        for (std::size_t i = 1; i < m; ++i) tail += std::norm(v[i]);
        if (tail == 0) continue;
        const cplx x0 = v[0];
        const double alpha_abs = std::sqrt(std::norm(x0) + tail);
        const cplx phase = std::abs(x0) == 0 ? cplx(1) : x0 / std::abs(x0);
        const cplx alpha = -phase * alpha_abs;
        v[0] -= alpha;
        double vn = 0;
        for (std::size_t i = 0; i < m; ++i) vn += std::norm(v[i]);
        const double tau = 2.0 / vn;
        for (std::size_t j = k; j < n; ++j) {
            cplx s = 0;
            for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * a(k + 1 + i, j);
            s *= tau;
            for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, j) -= v[i] * s;
        }
        auto apply_right = [&](ComplexMatrix& t) {
            for (std::size_t i = 0; i < n; ++i) {
                cplx s = 0;
                for (std::size_t l = 0; l < m; ++l) s += t(i, k + 1 + l) * v[l];
                s *= tau;
                for (std::size_t l = 0; l < m; ++l) t(i, k + 1 + l) -= s * std::conj(v[l]);
            }
        };
        apply_right(a);
        if (q) apply_right(*q);
        a(k + 1, k) = alpha * scale;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0;
    }
}

struct Rotation {
    double c;
    cplx s;
};

// [c s; -conj(s) c] [a; b] = [r; 0]
Rotation make_rotation(cplx a, cplx b) {
    const double aa = std::abs(a), bb = std::abs(b);
    if (bb == 0) return {1.0, 0.0};
    if (aa == 0) return {0.0, std::conj(b) / bb};
    const double r = std::hypot(aa, bb);
    return {aa / r, (a / aa) * std::conj(b) / r};
}

// Complex Schur form by shifted QR on a Hessenberg matrix. With full = true the
// whole upper triangle is kept consistent (needed for eigenvectors).
void schur(ComplexMatrix& h, ComplexMatrix* q, bool full) {
    const std::size_t n = h.rows();
    if (n == 1) return;
    std::vector<Rotation> rot(n);
    std::size_t ihi = n - 1;
    int its = 0;
    while (ihi > 0) {
        std::size_t l = ihi;
        for (; l > 0; --l) {
            double tst = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (tst == 0) {
                for (std::size_t i = 0; i <= ihi; ++i) tst = std::max(tst, std::abs(h(i, i)));
                if (tst == 0) tst = 1.0;
            }
            if (std::abs(h(l, l - 1)) <= kEps * tst) {
                h(l, l - 1) = 0;
                break;
            }
        }
        if (l == ihi) {
            --ihi;
            its = 0;
            continue;
        }
        if (++its > kMaxSweeps)
            throw NoConvergence("QR iteration did not deflate within " + std::to_string(kMaxSweeps) + " sweeps");

        cplx mu;
        if (its % 10 == 0) {
            mu = h(ihi, ihi) + 0.75 * std::abs(h(ihi, ihi - 1));
        } else {
            // Eigenvalue of the trailing 2x2 block nearest its last diagonal entry, computed on the
            // block scaled to unit size so that products neither underflow nor overflow.
            const double s = std::abs(h(ihi - 1, ihi - 1)) + std::abs(h(ihi - 1, ihi)) + std::abs(h(ihi, ihi - 1)) +
                             std::abs(h(ihi, ihi));
            if (s == 0) {
                mu = 0;
            } else {
                const cplx a = h(ihi - 1, ihi - 1) / s, b = h(ihi - 1, ihi) / s, c = h(ihi, ihi - 1) / s,
                           d = h(ihi, ihi) / s;
                const cplx half = 0.5 * (a - d);
                const cplx disc = std::sqrt(half * half + b * c);
                const cplx m1 = 0.5 * (a + d) + disc, m2 = 0.5 * (a + d) - disc;
                mu = s * (std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2);
            }
        }

        const std::size_t col_end = full ? n : ihi + 1;
        const std::size_t row_start = full ? 0 : l;
        for (std::size_t i = l; i <= ihi; ++i) h(i, i) -= mu;
        for (std::size_t j = l; j < ihi; ++j) {
            const Rotation g = make_rotation(h(j, j), h(j + 1, j));
            rot[j] = g;
            for (std::size_t c = j; c < col_end; ++c) {
                const cplx x = h(j, c), y = h(j + 1, c);
                h(j, c) = g.c * x + g.s * y;
                h(j + 1, c) = -std::conj(g.s) * x + g.c * y;
            }
            h(j + 1, j) = 0;
        }
        for (std::size_t j = l; j < ihi; ++j) {
            const Rotation g = rot[j];
            for (std::size_t r = row_start; r <= j + 1; ++r) {
                const cplx x = h(r, j), y = h(r, j + 1);
                h(r, j) = x * g.c + y * std::conj(g.s);
                h(r, j + 1) = -x * g.s + y * g.c;
            }
            if (q) {
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx x = (*q)(r, j), y = (*q)(r, j + 1);
                    (*q)(r, j) = x * g.c + y * std::conj(g.s);
                    (*q)(r, j + 1) = -x * g.s + y * g.c;
                }
            }
        }
        for (std::size_t i = l; i <= ihi; ++i) h(i, i) += mu;
    }
}

// Eigenvectors of upper-triangular t by back-substitution (columns of the result).
ComplexMatrix triangular_eigenvectors(const ComplexMatrix& t) {
    const std::size_t n = t.rows();
    const double smin = std::max(kEps * t.max_abs(), std::numeric_limits<double>::min() / kEps);
    ComplexMatrix x(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        x(k, k) = 1.0;
        for (std::size_t i = k; i-- > 0;) {
            cplx s = 0;
            for (std::size_t j = i + 1; j <= k; ++j) s += t(i, j) * x(j, k);
            cplx d = t(i, i) - t(k, k);
            if (std::abs(d) < smin) d = smin;
            x(i, k) = -s / d;
            const double big = std::abs(x(i, k));
            if (big > 1e100) {
                for (std::size_t j = i; j <= k; ++j) x(j, k) /= big;
            }
        }
    }
    return x;
}

}  // namespace

bool near_negative_axis(cplx z, double tol) {
    return z.real() < 0 && std::abs(z.imag()) <= tol;
}

CVector eigenvalues_general(const ComplexMatrix& m) {
    check_input(m);
    ComplexMatrix h = m;
    balance(h);
    hessenberg(h, nullptr);
    schur(h, nullptr, false);
    CVector values(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) values[i] = h(i, i);
    return values;
}

SpectralDecomposition eig_general(const ComplexMatrix& m) {
    check_input(m);
    const std::size_t n = m.rows();
    ComplexMatrix h = m;
    const CVector d = balance(h);
    ComplexMatrix q = ComplexMatrix::identity(n);
    hessenberg(h, &q);
    schur(h, &q, true);

    SpectralDecomposition out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = h(i, i);

    ComplexMatrix v = q * triangular_eigenvectors(h);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v(i, j) *= d[i];
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(v(i, j));
        const double inv = 1.0 / std::sqrt(s);
        for (std::size_t i = 0; i < n; ++i) v(i, j) *= inv;
    }
    ComplexMatrix left;
    try {
        left = inverse(v);
    } catch (const DefectiveMatrix&) {
        throw DefectiveMatrix("eigenvector matrix is singular (defective input)");
    }
    out.cond = v.norm1() * left.norm1();
    if (!(out.cond <= kDefectiveCond))
        throw DefectiveMatrix("eigenvector condition number " + std::to_string(out.cond) + " exceeds 1e12");
    out.right = std::move(v);
    out.left = std::move(left);
    return out;
}

ComplexMatrix mat_func(const ComplexMatrix& m, const std::function<cplx(cplx)>& f) {
    const SpectralDecomposition sd = eig_general(m);
    const std::size_t n = m.rows();
    ComplexMatrix scaled = sd.right;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx fj = f(sd.values[j]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
    }
    return scaled * sd.left;
}

MatFuncResult mat_func(const ComplexMatrix& m, MatFn f) {
    MatFuncResult out;
    std::function<cplx(cplx)> fn;
    switch (f) {
        case MatFn::exp: fn = [](cplx z) { return std::exp(z); }; break;
        case MatFn::sqrt: fn = [](cplx z) { return std::sqrt(z); }; break;
        case MatFn::log: fn = [](cplx z) { return std::log(z); }; break;
        case MatFn::identity: fn = [](cplx z) { return z; }; break;
    }
    if (f == MatFn::sqrt || f == MatFn::log) {
        fn = [&out, inner = fn](cplx z) {
            if (near_negative_axis(z)) out.branch_cut = true;
            return inner(z);
        };
    }
    out.value = mat_func(m, fn);
    return out;
}

ShiftedExp expm_shifted(const ComplexMatrix& m, cplx shift) {
    return {mat_func(m, [shift](cplx z) { return std::exp(z - shift); }), shift};
}

TraceSqrt trace_sqrt_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || !a.square() || !b.square())
        throw InvalidArgument("trace_sqrt_product needs equal square matrices");
    const SpectralDecomposition sd = eig_general(a * b);
    TraceSqrt out{0.0, false};
    for (const cplx& z : sd.values) {
        if (near_negative_axis(z)) out.branch_cut = true;
        out.value += std::sqrt(z);
    }
    return out;
}

TraceSqrt trace_sqrt_product(const SpectralFactors& a, const SpectralFactors& b,
                             const std::vector<std::size_t>* pairing) {
    const std::size_t ma = a.log_weights.size(), mb = b.log_weights.size();
    if (a.right.rows() != b.right.rows() || a.right.cols() != ma || b.right.cols() != mb ||
        a.left.rows() != ma || b.left.rows() != mb)
        throw InvalidArgument("inconsistent spectral factors");
    if (pairing && (pairing->size() != ma || ma != mb))
        throw InvalidArgument("level pairing must map every level of a onto b");
    if (ma == 0 || mb == 0) return {0.0, false};

    auto shift_of = [](const CVector& lw) {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& z : lw) m = std::max(m, z.real());
        return m;
    };
    const double sa = shift_of(a.log_weights), sb = shift_of(b.log_weights);

    // Largest weights first: QR deflates the small end of a graded matrix accurately.
    std::vector<std::size_t> oa(ma);
    std::iota(oa.begin(), oa.end(), 0);
    std::stable_sort(oa.begin(), oa.end(), [&](std::size_t i, std::size_t j) {
        return a.log_weights[i].real() > a.log_weights[j].real();
    });
    CVector ha(ma), hb(mb);
    for (std::size_t i = 0; i < ma; ++i) ha[i] = std::exp(0.5 * (a.log_weights[oa[i]] - sa));
    for (std::size_t j = 0; j < mb; ++j) hb[j] = std::exp(0.5 * (b.log_weights[j] - sb));

    ComplexMatrix x = a.left * b.right, y = b.left * a.right;
    ComplexMatrix xs(ma, mb), ys(mb, ma);
    for (std::size_t i = 0; i < ma; ++i)
        for (std::size_t j = 0; j < mb; ++j) {
            xs(i, j) = ha[i] * x(oa[i], j) * hb[j];
            ys(j, i) = hb[j] * y(j, oa[i]) * ha[i];
        }
    x = std::move(xs);
    y = std::move(ys);
    const CVector ev = eigenvalues_general(x * y);
    CVector roots(ev.size());
    TraceSqrt out{0.0, false};
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (near_negative_axis(ev[i])) out.branch_cut = true;
        roots[i] = std::sqrt(ev[i]);
    }

    auto real_positive = [](const CVector& lw) {
        return std::all_of(lw.begin(), lw.end(), [](const cplx& z) { return z.imag() == 0.0; });
    };
    if (pairing && !(real_positive(a.log_weights) && real_positive(b.log_weights))) {
        // References in the same shifted units as the roots.
        CVector ref(ma);
        for (std::size_t i = 0; i < ma; ++i)
            ref[i] = std::exp(0.5 * (a.log_weights[i] - sa + b.log_weights[(*pairing)[i]] - sb));
        // Greedy assignment in root space: each eigenvalue takes the sign closest to its reference.
        struct Cand {
            double dist;
            std::size_t e, r;
        };
        std::vector<Cand> cand;
        cand.reserve(ev.size() * ma);
        for (std::size_t e = 0; e < ev.size(); ++e)
            for (std::size_t r = 0; r < ma; ++r)
                cand.push_back({std::min(std::abs(roots[e] - ref[r]), std::abs(roots[e] + ref[r])), e, r});
        std::sort(cand.begin(), cand.end(), [](const Cand& p, const Cand& q) {
            return p.dist < q.dist || (p.dist == q.dist && (p.e < q.e || (p.e == q.e && p.r < q.r)));
        });
        std::vector<bool> used_e(ev.size(), false), used_r(ma, false);
        std::vector<std::size_t> assigned(ev.size(), ma);
        for (const Cand& c : cand) {
            if (used_e[c.e] || used_r[c.r]) continue;
            used_e[c.e] = used_r[c.r] = true;
            assigned[c.e] = c.r;
            if (std::abs(roots[c.e] + ref[c.r]) < std::abs(roots[c.e] - ref[c.r])) roots[c.e] = -roots[c.e];
        }
        // Negative real eigenvalues matched to a conjugate pair of references tie exactly between
        // the two. Within each pair class keep the number of upper roots and give them to the
        // largest moduli.
        auto partner = [&](std::size_t r) {
            std::size_t best = r;
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < ma; ++j) {
                const double g = std::abs(ref[j] - std::conj(ref[r]));
                if (g < gap) { gap = g; best = j; }
            }
            return std::min(r, best);
        };
        std::vector<std::pair<std::size_t, std::size_t>> axis;  // (class, eigenvalue)
        for (std::size_t e = 0; e < ev.size(); ++e) {
            if (assigned[e] == ma || ev[e].real() >= 0 || std::abs(ev[e].imag()) > kAxisTol * std::abs(ev[e])) continue;
            if (ref[assigned[e]].imag() == 0) continue;
            axis.emplace_back(partner(assigned[e]), e);
        }
        std::stable_sort(axis.begin(), axis.end(), [&](const auto& p, const auto& q) {
            return p.first != q.first ? p.first < q.first : std::abs(ev[p.second]) > std::abs(ev[q.second]);
        });
        for (std::size_t lo = 0; lo < axis.size();) {
            std::size_t hi = lo, upper = 0;
            for (; hi < axis.size() && axis[hi].first == axis[lo].first; ++hi) upper += roots[axis[hi].second].imag() > 0;
            for (std::size_t i = lo; i < hi; ++i) {
                const double m = std::sqrt(std::abs(ev[axis[i].second]));
                roots[axis[i].second] = cplx(0.0, i - lo < upper ? m : -m);
            }
            lo = hi;
        }
    }

    for (const cplx& z : roots) out.value += z;
    out.value *= std::exp(0.5 * (sa + sb));
    return out;
}

std::vector<std::vector<std::size_t>> invariant_blocks(const ComplexMatrix& m, double tol) {
    if (!m.square()) throw InvalidArgument("invariant_blocks needs a square matrix");
    const std::size_t n = m.rows();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && std::abs(m(i, j)) > tol) {
                const std::size_t a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return blocks;
}

}  // namespace ptf
