#include <doctest.h>

#include <algorithm>
#include <map>

#include "ptf/errors.hpp"
#include "ptf/fidelity.hpp"
#include "ptf/oracle.hpp"
#include "ptf/validate.hpp"

using namespace ptf;

namespace {

CouplingParams point(double eta, double xi, int N = 2) {
    CouplingParams p;
    p.eta = eta;
    p.xi = xi;
    p.N = N;
    return p;
}

}  // namespace

TEST_CASE("dense spin Hamiltonian") {
    const ComplexMatrix herm = spin_hamiltonian_dense(point(0.7, 0.0), 4).matrix;
    CHECK(max_abs_diff(herm, herm.adjoint()) < 1e-15);

    const CVector zz = eigenvalues_general(spin_hamiltonian_dense(point(0.0, 0.0), 4).matrix);
    std::map<long, int> mult;
    for (const cplx& e : zz) ++mult[std::lround(e.real())];
    CHECK(mult[-4] == 2);
    CHECK(mult[0] == 12);
    CHECK(mult[4] == 2);

    const ComplexMatrix h = spin_hamiltonian_dense(point(0.6, 0.45), 4).matrix;
    const ComplexMatrix pi = spin_parity_operator(4);
    CHECK(max_abs_diff(h * pi, pi * h) < 1e-12);
    CHECK_THROWS_AS(spin_hamiltonian_dense(point(0.6, 0.45), 10), SizeCap);
    CHECK_THROWS_AS(spin_hamiltonian_dense(point(0.6, 0.45), 3), InvalidArgument);
}

TEST_CASE("Jordan-Wigner equivalence") {
    for (const auto& [eta, xi] : std::vector<std::pair<double, double>>{{0.6, 0.3}, {1.3, 0.2}, {0.3, 1.2}, {0.8, 0.0}}) {
        const CouplingParams p = point(eta, xi);
        CVector u = jw_sector_spectrum(p, 4, Parity::even);
        const CVector o = jw_sector_spectrum(p, 4, Parity::odd);
        CHECK(u.size() == 8);
        if (xi == 0.0)
            for (const cplx& e : u) CHECK(std::abs(e.imag()) < 1e-10);
        u.insert(u.end(), o.begin(), o.end());
        CHECK(multiset_distance(eigenvalues_general(spin_hamiltonian_dense(p, 4).matrix), u) < 1e-9);
    }
    const ComplexMatrix sum = fermion_parity_projector(6, Parity::even) + fermion_parity_projector(6, Parity::odd);
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(64)) == 0.0);
    CHECK_THROWS_AS(jw_sector_spectrum(point(0.5, 0.1), 10, Parity::even), SizeCap);
}

TEST_CASE("six-site chain also splits into parity sectors") {
    const CouplingParams p = point(0.9, 0.35);
    CVector u = jw_sector_spectrum(p, 6, Parity::even);
    const CVector o = jw_sector_spectrum(p, 6, Parity::odd);
    u.insert(u.end(), o.begin(), o.end());
    CHECK(multiset_distance(eigenvalues_general(spin_hamiltonian_dense(p, 6).matrix), u) < 1e-9);
}

TEST_CASE("Kronecker-sum Hamiltonian") {
    const CouplingParams p = point(0.5, 0.4, 4);
    const MomentumGrid g = momentum_grid(4, Parity::even);
    CVector sums;
    for (const cplx& a : sector_eigensystem(g.paired[0], p).values)
        for (const cplx& b : sector_eigensystem(g.paired[1], p).values) sums.push_back(-(a + b));
    const CVector kr = eigenvalues_general(fermion_sum_dense(p).matrix);
    CHECK(multiset_distance(kr, sums) < 1e-8);
    const CVector rs = eigenvalues_general(fermion_sum_dense(p, 4, DenseRealization::real_space).matrix);
    CHECK(multiset_distance(rs, sums) < 1e-8);
    CHECK_THROWS_AS(fermion_sum_dense(point(0.5, 0.4, 6), 6), SizeCap);
}

TEST_CASE("dense fidelity oracle") {
    const CouplingParams a = point(0.6, 0.1, 4), b = point(0.61, 0.11, 4);
    const CVector v = fermion_sum_fidelity_values(a, a, {0.0, 2.0}, 4);
    CHECK(std::abs(v[0] - 1.0) < 1e-10);
    CHECK(std::abs(v[1] - 1.0) < 1e-9);
    const double dense = fermion_sum_fidelity(a, b, 2.0);
    CHECK(std::abs(dense - total_fidelity(a, b, 2.0, 4).F) < 1e-8);
    const double real_space = fermion_sum_fidelity(a, b, 2.0, 4, DenseRealization::real_space);
    CHECK(std::abs(real_space - dense) < 1e-8);
}

TEST_CASE("dense Gibbs state") {
    const ComplexMatrix h = spin_hamiltonian_dense(point(0.7, 0.0), 4).matrix;
    const ComplexMatrix rho = dense_gibbs_state(h, 1.0);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(max_abs_diff(rho, rho.adjoint()) < 1e-12);
}

TEST_CASE("Hermitian reference fidelity") {
    const CouplingParams a = point(0.4, 0.0, 8), b = point(0.45, 0.0, 8);
    CHECK(hermitian_uhlmann_fidelity(a, a, 3.0, 8).F == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(hermitian_uhlmann_fidelity(a, b, 3.0, 8).F - total_fidelity(a, b, 3.0, 8).F) < 1e-10);
    CHECK_THROWS_AS(hermitian_uhlmann_fidelity(point(0.4, 0.1, 8), b, 3.0, 8), InvalidArgument);
}

TEST_CASE("validation suite and its mutation fixture") {
    ValidationOptions opts;
    opts.samples = 40;
    opts.groups = {"biorthogonal", "jw", "exactness"};
    const ValidationReport good = run_validation(opts);
    CHECK(good.passed());

    opts.provider = [](double k, const CouplingParams& p) {
        BiorthogonalEigensystem es = sector_eigensystem(k, p);
        for (std::size_t j = 0; j < 16; ++j) es.left(2, j) = -es.left(2, j);
        return es;
    };
    const ValidationReport bad = run_validation(opts);
    CHECK_FALSE(bad.passed());
    const auto it = std::find_if(bad.checks.begin(), bad.checks.end(),
                                 [](const CheckResult& c) { return c.name == "biorthonormality"; });
    REQUIRE(it != bad.checks.end());
    CHECK_FALSE(it->passed);

    ValidationOptions strict;
    strict.samples = 20;
    strict.groups = {"biorthogonal"};
    strict.tolerance = 1e-15;
    CHECK_FALSE(run_validation(strict).passed());
    strict.groups = {"nonexistent"};
    CHECK_THROWS_AS(run_validation(strict), InvalidArgument);
}
