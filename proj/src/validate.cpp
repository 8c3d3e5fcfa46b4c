#include "ptf/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ptf/errors.hpp"
#include "ptf/fidelity.hpp"
#include "ptf/oracle.hpp"

namespace ptf {
namespace {

CouplingParams point(double eta, double xi, int N = 2) {
    CouplingParams p;
    p.eta = eta;
    p.xi = xi;
    p.N = N;
    return p;
}

class Suite {
public:
    explicit Suite(std::optional<double> override_tol) : override_(override_tol) {}

    void add(std::string name, double residual, double tol, std::string detail = {}) {
        const double t = override_.value_or(tol);
        const bool ok = std::isfinite(residual) && residual <= t;
        report_.checks.push_back({std::move(name), residual, t, ok, std::move(detail)});
    }

    // Runs body; an exception fails the check with its message.
    template <class F>
    void guarded(const std::string& name, double tol, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, std::numeric_limits<double>::infinity(), tol, e.what());
        }
    }

    ValidationReport take() { return std::move(report_); }

private:
    std::optional<double> override_;
    ValidationReport report_;
};

std::string where(const PropertySample& s) {
    std::ostringstream os;
    os.precision(6);
    os << "worst at r=" << s.r << " phi=" << s.phi << " k=" << s.k;
    return os.str();
}

}  // namespace

const std::vector<std::string>& validation_groups() {
    static const std::vector<std::string> g{"biorthogonal", "analytic_vs_numeric", "jw", "kronecker",
                                            "factorization", "hermitian", "exactness", "zero_t"};
    return g;
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<FieldPair>& factorization_pairs() {
    static const std::vector<FieldPair> pairs{{0.6, 0.1, 0.61, 0.11},
                                              {0.3, 0.05, 0.35, 0.02},
                                              {1.2, 0.1, 1.1, 0.12},
                                              {0.9, 0.0, 0.95, 0.0},
                                              {0.6, 0.3, 0.62, 0.31}};
    return pairs;
}

std::vector<PropertySample> property_samples(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ur(0.0, 1.5), up(0.0, 2 * kPi), uk(0.0, kPi);
    std::vector<PropertySample> out(count);
    for (auto& s : out) {
        s.r = ur(gen);
        s.phi = up(gen);
        do s.k = uk(gen);
        while (s.k == 0.0);
    }
    return out;
}

EigensystemResiduals eigensystem_residuals(const BiorthogonalEigensystem& es, const ComplexMatrix& h) {
    EigensystemResiduals r;
    const ComplexMatrix id = ComplexMatrix::identity(fock::kDim);
    r.biorthonormality = max_abs_diff(es.left * es.right, id);
    r.completeness = max_abs_diff(es.right * es.left, id);
    r.reconstruction = max_abs_diff(es.right * ComplexMatrix::diagonal(es.values) * es.left, h);

    std::array<cplx, 17> by_level{};
    for (std::size_t i = 0; i < es.values.size(); ++i) by_level[es.levels[i]] = es.values[i];
    auto gap = [&](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    const auto& v = by_level;
    double s = 0;
    s = std::max({s, gap(v[2], -v[1]), gap(v[4], -v[3])});
    for (int n = 5; n <= 8; ++n) s = std::max(s, std::abs(v[n]));
    s = std::max({s, gap(v[10], -v[9]), gap(v[13], v[9]), gap(v[14], -v[9])});
    s = std::max({s, gap(v[12], -v[11]), gap(v[15], v[11]), gap(v[16], -v[11])});
    r.symmetry = s;
    return r;
}

ValidationReport run_validation(const ValidationOptions& opts) {
    for (const std::string& g : opts.groups)
        if (std::find(validation_groups().begin(), validation_groups().end(), g) == validation_groups().end())
            throw InvalidArgument("unknown validation group '" + g + "'");
    auto wanted = [&](const std::string& g) {
        return opts.groups.empty() || std::find(opts.groups.begin(), opts.groups.end(), g) != opts.groups.end();
    };
    Suite suite(opts.tolerance);
    const EigensystemProvider provider =
        opts.provider ? opts.provider
                      : EigensystemProvider([](double k, const CouplingParams& p) { return sector_eigensystem(k, p); });
    const std::vector<PropertySample> samples = property_samples(opts.seed, opts.samples);

    if (wanted("biorthogonal")) {
        EigensystemResiduals worst;
        std::array<std::size_t, 4> at{};
        std::string failure;
        for (std::size_t i = 0; i < samples.size() && failure.empty(); ++i) {
            const auto& s = samples[i];
            try {
                const CouplingParams p = params_from_polar(s.r, s.phi);
                const EigensystemResiduals r =
                    eigensystem_residuals(provider(s.k, p), build_sector_hamiltonian(s.k, p).matrix);
                const std::array<double, 4> now{r.biorthonormality, r.completeness, r.reconstruction, r.symmetry};
                std::array<double*, 4> acc{&worst.biorthonormality, &worst.completeness, &worst.reconstruction,
                                           &worst.symmetry};
                for (std::size_t c = 0; c < 4; ++c)
                    if (!(now[c] <= *acc[c])) {
                        *acc[c] = now[c];
                        at[c] = i;
                    }
            } catch (const std::exception& e) {
                failure = where(s) + ": " + e.what();
            }
        }
        const double inf = std::numeric_limits<double>::infinity();
        auto res = [&](double v) { return failure.empty() ? v : inf; };
        auto info = [&](std::size_t c) { return failure.empty() ? where(samples[at[c]]) : failure; };
        if (samples.empty()) failure = "no samples";
        suite.add("biorthonormality", res(worst.biorthonormality), 1e-10, info(0));
        suite.add("completeness", res(worst.completeness), 1e-9, info(1));
        suite.add("reconstruction", res(worst.reconstruction), 1e-9, info(2));
        suite.add("eigenvalue_symmetry", res(worst.symmetry), 1e-12, info(3));
    }

    if (wanted("analytic_vs_numeric")) suite.guarded("analytic_vs_numeric", 1e-9, [&] {
        double worst = 0;
        std::size_t at = 0;
        const std::size_t n = std::min<std::size_t>(samples.size(), 100);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& s = samples[i];
            const CouplingParams p = params_from_polar(s.r, s.phi);
            CVector analytic(fock::kDim);
            const std::array<cplx, 16> d = dispersion_all(s.k, {s.r, s.phi});
            for (std::size_t j = 0; j < 16; ++j) analytic[j] = 2.0 * d[j];
            const double gap = multiset_distance(analytic, sector_eigensystem(s.k, p, SolveMethod::numeric).values);
            if (gap > worst || i == 0) {
                worst = gap;
                at = i;
            }
        }
        suite.add("analytic_vs_numeric", worst, 1e-9, n ? where(samples[at]) : "no samples");
    });

    if (wanted("jw")) suite.guarded("jw_equivalence", 1e-9, [&] {
        double worst = 0, comm = 0;
        for (const auto& [eta, xi] : std::vector<std::pair<double, double>>{{0.6, 0.3}, {1.3, 0.2}, {0.3, 1.2}, {0.0, 0.0}}) {
            const CouplingParams p = point(eta, xi);
            const ComplexMatrix h = spin_hamiltonian_dense(p, 4).matrix;
            CVector u = jw_sector_spectrum(p, 4, Parity::even);
            const CVector o = jw_sector_spectrum(p, 4, Parity::odd);
            u.insert(u.end(), o.begin(), o.end());
            worst = std::max(worst, multiset_distance(eigenvalues_general(h), u));
            const ComplexMatrix pi = spin_parity_operator(4);
            comm = std::max(comm, max_abs_diff(h * pi, pi * h));
        }
        suite.add("jw_equivalence", worst, 1e-9, "2N = 4, four field points");
        suite.add("parity_commutation", comm, 1e-12, "[H, prod sx] at 2N = 4");
    });

    if (wanted("kronecker")) suite.guarded("kronecker_spectrum", 1e-8, [&] {
        const CouplingParams p = point(0.6, 0.3, 4);
        const MomentumGrid grid = momentum_grid(4, Parity::even);
        const CVector e1 = sector_eigensystem(grid.paired[0], p).values;
        const CVector e2 = sector_eigensystem(grid.paired[1], p).values;
        CVector sums;
        for (const cplx& a : e1)
            for (const cplx& b : e2) sums.push_back(-p.J * (a + b));
        const double gap = multiset_distance(eigenvalues_general(fermion_sum_dense(p).matrix), sums);
        suite.add("kronecker_spectrum", gap, 1e-8, "N = 4 at (0.6, 0.3)");
    });

    if (wanted("factorization")) suite.guarded("factorization", 1e-8, [&] {
        const std::vector<double> betas{0.5, 1.0, 2.0, 5.0};
        double worst = 0;
        for (const FieldPair& f : factorization_pairs()) {
            const CouplingParams p1 = point(f.eta1, f.xi1, 4), p2 = point(f.eta2, f.xi2, 4);
            const CVector dense = fermion_sum_fidelity_values(p1, p2, betas, 4);
            const std::vector<FidelityPoint> fac = total_fidelity(p1, p2, betas, 4);
            for (std::size_t i = 0; i < betas.size(); ++i) {
                if (!fac[i].error.empty()) throw Error(fac[i].error);
                worst = std::max(worst, std::abs(std::abs(dense[i]) - fac[i].F));
            }
        }
        suite.add("factorization", worst, 1e-8, "N = 4, five pairs, beta in {0.5, 1, 2, 5}");
    });

    if (wanted("hermitian")) suite.guarded("hermitian_limit", 1e-9, [&] {
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            const double eta = 0.05 + 0.1 * i;
            const CouplingParams p1 = point(eta, 0.0, 100), p2 = point(eta + 0.01, 0.0, 100);
            const FidelityPoint f = total_fidelity(p1, p2, 5.0, 100);
            worst = std::max(worst, std::abs(f.F - hermitian_uhlmann_fidelity(p1, p2, 5.0, 100).F));
        }
        suite.add("hermitian_limit", worst, 1e-9, "N = 100, beta = 5, 20 eta values");
    });

    if (wanted("exactness")) suite.guarded("exactness", 1e-9, [&] {
        double self = 0, hot = 0, sym = 0;
        const std::size_t n = std::min<std::size_t>(samples.size(), 20);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& s = samples[i];
            const CouplingParams p1 = params_from_polar(s.r, s.phi, 1.0, 8);
            const CouplingParams p2 = params_from_polar(s.r + 0.02, s.phi + 0.01, 1.0, 8);
            const auto f = total_fidelity(p1, p2, std::vector<double>{0.0, 1.0}, 8);
            const auto g = total_fidelity(p2, p1, std::vector<double>{1.0}, 8);
            const auto e = total_fidelity(p1, p1, std::vector<double>{1.0}, 8);
            for (const auto* q : {&f[0], &f[1], &g[0], &e[0]})
                if (!q->error.empty()) throw Error(q->error);
            hot = std::max(hot, std::abs(f[0].F - 1.0));
            sym = std::max(sym, std::abs(f[1].F - g[0].F));
            self = std::max(self, std::abs(e[0].F - 1.0));
        }
        suite.add("self_fidelity", self, 1e-9, "F(p, p) at beta = 1, N = 8");
        suite.add("infinite_temperature", hot, 1e-10, "F at beta = 0, N = 8");
        suite.add("fidelity_symmetry", sym, 1e-9, "F(p1, p2) - F(p2, p1) at beta = 1, N = 8");
    });

    if (wanted("zero_t")) suite.guarded("zero_t_limit", 1e-3, [&] {
        double worst = 0;
        for (int i = 0; i < 10; ++i) {
            const double phi = 0.1 + 0.28 * i;
            for (double r : {0.5, 1.5}) {
                const double dr = 0.1;
                worst = std::max(worst, std::abs(limit_overlap_k0(r, phi, dr) - ground_overlap(1e-3, r, phi, dr)));
            }
        }
        suite.add("zero_t_limit", worst, 1e-3, "k = 1e-3 against the k -> 0 limit, r in {0.5, 1.5}");
    });

    return suite.take();
}

}  // namespace ptf
