#pragma once

#include <vector>

#include "ptf/fidelity.hpp"

namespace ptf {

/// ln F = gamma * beta + lnA over the fitted window.
struct FitResult {
    double gamma = 0;
    double lnA = 0;
    double r_squared = 0;
    double window_lo = 0;
    double window_hi = 0;
    std::size_t n_points = 0;
};

struct ExpFitOptions {
    double log_floor = -690.7755278982137;  // ln(1e-300)
    double plateau = 1e-8;                  // leading points with |ln F| below this are trimmed
    bool trim_plateau = true;
};

/// Least-squares line through (beta, ln F). Inputs are logarithms.
FitResult fit_exponential(const std::vector<double>& betas, const std::vector<double>& log_f,
                          const ExpFitOptions& opts = {});

/// Convenience overload taking F itself.
FitResult fit_exponential_values(const std::vector<double>& betas, const std::vector<double>& f,
                                 const ExpFitOptions& opts = {});

enum class HarmonicOrder { two, two_four };

/// a0 + a2 cos 2phi (+ a4 cos 4phi).
struct HarmonicFit {
    double a0 = 0;
    double a2 = 0;
    double a4 = 0;
    double residual = 0;  // ||fit - values|| / ||values||
    HarmonicOrder order = HarmonicOrder::two;
};

HarmonicFit fit_harmonic(const std::vector<double>& phis, const std::vector<double>& values,
                         HarmonicOrder order = HarmonicOrder::two);

struct ScanSample {
    double eta;
    double F;
};

/// Critical eta from the dip of F along one row, refined by a parabola through the lowest sample.
double locate_minima(std::vector<ScanSample> rows);

struct RowMinimum {
    double beta;
    double xi;
    double eta_star;
    double F_min;
};

/// locate_minima applied to every (beta, xi) row of a sweep; rows with errors are skipped.
std::vector<RowMinimum> row_minima(const std::vector<FidelityPoint>& points);

}  // namespace ptf
