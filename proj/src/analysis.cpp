#include "ptf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "ptf/errors.hpp"

namespace ptf {
namespace {

// Householder least squares for a tall real system with at most a few columns.
std::vector<double> least_squares(std::vector<std::vector<double>> cols, std::vector<double> y) {
    const std::size_t m = y.size(), n = cols.size();
    double scale = 0;
    for (const auto& c : cols)
        for (double v : c) scale = std::max(scale, std::abs(v));
    std::vector<double> diag(n);
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0;
        for (std::size_t i = j; i < m; ++i) norm += cols[j][i] * cols[j][i];
        norm = std::sqrt(norm);
        if (norm <= 1e-12 * std::max(scale, 1.0) * std::sqrt(static_cast<double>(m)))
            throw RankDeficient("design matrix is rank deficient");
        const double alpha = cols[j][j] > 0 ? -norm : norm;
        std::vector<double> v(m, 0.0);
        for (std::size_t i = j; i < m; ++i) v[i] = cols[j][i];
        v[j] -= alpha;
        double vv = 0;
        for (std::size_t i = j; i < m; ++i) vv += v[i] * v[i];
        auto reflect = [&](std::vector<double>& x) {
            double d = 0;
            for (std::size_t i = j; i < m; ++i) d += v[i] * x[i];
            const double f = 2 * d / vv;
            for (std::size_t i = j; i < m; ++i) x[i] -= f * v[i];
        };
        for (std::size_t k = j; k < n; ++k) reflect(cols[k]);
        reflect(y);
        diag[j] = cols[j][j];
        // Relative rank test on the triangular factor.
        if (std::abs(diag[j]) <= 1e-10 * std::abs(diag[0])) throw RankDeficient("design matrix is rank deficient");
    }
    std::vector<double> x(n);
    for (std::size_t j = n; j-- > 0;) {
        double s = y[j];
        for (std::size_t k = j + 1; k < n; ++k) s -= cols[k][j] * x[k];
        x[j] = s / cols[j][j];
    }
    return x;
}

}  // namespace

FitResult fit_exponential(const std::vector<double>& betas, const std::vector<double>& log_f,
                          const ExpFitOptions& opts) {
    if (betas.size() != log_f.size()) throw InvalidArgument("betas and ln F differ in length");
    if (betas.size() < 3) throw InsufficientData("exponential fit needs at least 3 points");
    for (double b : betas)
        if (!std::isfinite(b)) throw NonFinite("non-finite beta");

    std::vector<std::size_t> order(betas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return betas[i] < betas[j]; });

    auto usable = [&](std::size_t i) { return std::isfinite(log_f[i]) && log_f[i] > opts.log_floor; };
    // Largest contiguous run of usable points in beta order.
    std::size_t best_lo = 0, best_len = 0;
    for (std::size_t i = 0; i < order.size();) {
        if (!usable(order[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < order.size() && usable(order[j])) ++j;
        if (j - i > best_len) {
            best_lo = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len == 0) throw DegenerateWindow("every ln F is below the floor or non-finite");

    std::size_t lo = best_lo, hi = best_lo + best_len;
    if (opts.trim_plateau) {
        std::size_t t = lo;
        while (t < hi && std::abs(log_f[order[t]]) < opts.plateau) ++t;
        if (hi - t >= 3) lo = t;
    }
    if (hi - lo < 3) throw InsufficientData("fewer than 3 usable points in the fit window");

    std::vector<double> x, y;
    for (std::size_t i = lo; i < hi; ++i) {
        x.push_back(betas[order[i]]);
        y.push_back(log_f[order[i]]);
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw DegenerateWindow("all betas in the window coincide");

    FitResult r;
    r.gamma = sxy / sxx;
    r.lnA = my - r.gamma * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (r.lnA + r.gamma * x[i]);
        ss_res += e * e;
    }
    r.r_squared = (syy == 0 || ss_res == 0) ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    r.window_lo = x.front();
    r.window_hi = x.back();
    r.n_points = x.size();
    return r;
}

FitResult fit_exponential_values(const std::vector<double>& betas, const std::vector<double>& f,
                                 const ExpFitOptions& opts) {
    std::vector<double> lf(f.size());
    std::transform(f.begin(), f.end(), lf.begin(), [](double v) {
        return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    });
    return fit_exponential(betas, lf, opts);
}

HarmonicFit fit_harmonic(const std::vector<double>& phis, const std::vector<double>& values, HarmonicOrder order) {
    if (phis.size() != values.size()) throw InvalidArgument("angles and values differ in length");
    const std::size_t nc = order == HarmonicOrder::two ? 2 : 3;
    if (phis.size() < nc) throw RankDeficient("too few angles for the requested harmonics");
    for (std::size_t i = 0; i < phis.size(); ++i) {
        if (!std::isfinite(phis[i]) || !std::isfinite(values[i])) throw NonFinite("non-finite harmonic fit input");
        for (std::size_t j = 0; j < i; ++j)
            if (phis[i] == phis[j]) throw RankDeficient("angles must be distinct");
    }
    std::vector<std::vector<double>> cols(nc, std::vector<double>(phis.size()));
    for (std::size_t i = 0; i < phis.size(); ++i) {
        cols[0][i] = 1.0;
        cols[1][i] = std::cos(2 * phis[i]);
        if (nc == 3) cols[2][i] = std::cos(4 * phis[i]);
    }
    const std::vector<double> c = least_squares(cols, values);
    HarmonicFit h;
    h.order = order;
    h.a0 = c[0];
    h.a2 = c[1];
    h.a4 = nc == 3 ? c[2] : 0.0;
    double res = 0, norm = 0;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const double fit = h.a0 + h.a2 * std::cos(2 * phis[i]) + h.a4 * std::cos(4 * phis[i]);
        res += (fit - values[i]) * (fit - values[i]);
        norm += values[i] * values[i];
    }
    h.residual = norm > 0 ? std::sqrt(res / norm) : std::sqrt(res);
    return h;
}

double locate_minima(std::vector<ScanSample> rows) {
    if (rows.size() < 5) throw InsufficientData("minimum search needs at least 5 points");
    for (const ScanSample& s : rows)
        if (!std::isfinite(s.eta) || !std::isfinite(s.F)) throw NonFinite("non-finite scan sample");
    std::sort(rows.begin(), rows.end(), [](const ScanSample& a, const ScanSample& b) { return a.eta < b.eta; });
    const auto [mn, mx] = std::minmax_element(rows.begin(), rows.end(),
                                              [](const ScanSample& a, const ScanSample& b) { return a.F < b.F; });
    if (mx->F - mn->F < 1e-6) throw FlatScan("no dip: F varies by less than 1e-6");
    const std::size_t i = static_cast<std::size_t>(mn - rows.begin());
    if (i == 0 || i + 1 == rows.size()) return rows[i].eta;

    const double x0 = rows[i - 1].eta, x1 = rows[i].eta, x2 = rows[i + 1].eta;
    const double y0 = rows[i - 1].F, y1 = rows[i].F, y2 = rows[i + 1].F;
    const double d1 = (y1 - y0) / (x1 - x0), d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0);
    if (!(curv > 0)) return x1;
    const double vertex = 0.5 * (x0 + x1) - d1 / (2 * curv);
    return std::clamp(vertex, x0, x2);
}

std::vector<RowMinimum> row_minima(const std::vector<FidelityPoint>& points) {
    std::map<std::pair<double, double>, std::vector<ScanSample>> rows;
    for (const FidelityPoint& p : points)
        if (p.error.empty() && std::isfinite(p.F)) rows[{p.beta, p.xi}].push_back({p.eta, p.F});
    std::vector<RowMinimum> out;
    for (const auto& [key, samples] : rows) {
        const auto mn = std::min_element(samples.begin(), samples.end(),
                                         [](const ScanSample& a, const ScanSample& b) { return a.F < b.F; });
        try {
            out.push_back({key.first, key.second, locate_minima(samples), mn->F});
        } catch (const FlatScan&) {
        } catch (const InsufficientData&) {
        }
    }
    return out;
}

}  // namespace ptf
