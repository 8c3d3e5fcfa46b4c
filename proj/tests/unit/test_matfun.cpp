#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "ptf/errors.hpp"
#include "ptf/matfun.hpp"
#include "ptf/sector.hpp"

using namespace ptf;
using testutil::random_density;
using testutil::random_matrix;

namespace {

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& gen) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(testutil::to_eigen(random_matrix(n, gen)));
    return testutil::from_eigen(qr.householderQ() * Eigen::MatrixXcd::Identity(n, n));
}

}  // namespace

TEST_CASE("eig_general on small examples") {
    const auto s = eig_general(ComplexMatrix{{0, 1}, {1, 0}});
    CHECK(multiset_distance(s.values, {1.0, -1.0}) < 1e-14);

    const auto d = eig_general(ComplexMatrix::diagonal({2.0, cplx(0, 1), -3.0}));
    CHECK(multiset_distance(d.values, {2.0, cplx(0, 1), -3.0}) < 1e-14);
    for (std::size_t j = 0; j < 3; ++j) {
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < 3; ++i) nonzero += std::abs(d.right(i, j)) > 1e-14;
        CHECK(nonzero == 1);
    }
    CHECK_THROWS_AS(eig_general(ComplexMatrix{{0, 1}, {0, 0}}), DefectiveMatrix);
    CHECK_THROWS_AS(eig_general(ComplexMatrix(257)), SizeCap);
}

TEST_CASE("eig_general reconstructs random matrices and matches Eigen") {
    std::mt19937_64 gen(11);
    for (std::size_t n : {1u, 3u, 8u, 16u, 40u}) {
        const ComplexMatrix m = random_matrix(n, gen);
        const auto s = eig_general(m);
        CHECK(max_abs_diff(s.right * ComplexMatrix::diagonal(s.values) * s.left, m) < 1e-10 * std::max(1.0, m.max_abs()));
        CHECK(max_abs_diff(s.left * s.right, ComplexMatrix::identity(n)) < 1e-10);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ref(testutil::to_eigen(m), false);
        CVector ev(ref.eigenvalues().data(), ref.eigenvalues().data() + n);
        CHECK(multiset_distance(s.values, ev) < 1e-9);
    }
}

TEST_CASE("eigenvalues are invariant under unitary similarity") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix m = random_matrix(12, gen), u = random_unitary(12, gen);
        CHECK(multiset_distance(eigenvalues_general(m), eigenvalues_general(u * m * u.adjoint())) < 1e-9);
    }
}

TEST_CASE("eig_general handles strongly graded matrices") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix m = random_matrix(6, gen);
        CVector grade(6);
        for (std::size_t i = 0; i < 6; ++i) grade[i] = std::pow(10.0, -30.0 * static_cast<double>(i));
        const ComplexMatrix g = ComplexMatrix::diagonal(grade) * m * ComplexMatrix::diagonal(grade);
        CVector ev;
        REQUIRE_NOTHROW(ev = eigenvalues_general(g));
        cplx sum = 0;
        for (const cplx& e : ev) {
            CHECK(std::isfinite(e.real()));
            sum += e;
        }
        CHECK(std::abs(sum - g.trace()) < 1e-12 * std::abs(g(0, 0)));
        const auto top = *std::max_element(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
        CHECK(std::abs(top - g(0, 0)) < 1e-12 * std::abs(g(0, 0)));
    }
}

TEST_CASE("mat_func examples") {
    const auto r = mat_func(ComplexMatrix::diagonal({4.0, 9.0}), MatFn::sqrt);
    CHECK(max_abs_diff(r.value, ComplexMatrix::diagonal({2.0, 3.0})) < 1e-14);
    CHECK_FALSE(r.branch_cut);

    const double th = 0.7;
    const auto e = mat_func(ComplexMatrix{{0, th}, {-th, 0}}, MatFn::exp).value;
    CHECK(std::abs(e(0, 0) - std::cos(th)) < 1e-14);
    CHECK(std::abs(e(0, 1) - std::sin(th)) < 1e-14);
    CHECK(std::abs(e(1, 0) + std::sin(th)) < 1e-14);

    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix m = random_matrix(6, gen);
        const ComplexMatrix s = mat_func(m, MatFn::sqrt).value;
        CHECK(max_abs_diff(s * s, m) < 1e-8);
        CHECK(max_abs_diff(mat_func(m, MatFn::identity).value, m) < 1e-9);
        const ComplexMatrix viaf = mat_func(m, [](cplx z) { return z * z; });
        CHECK(max_abs_diff(viaf, m * m) < 1e-8);
    }
    CHECK(mat_func(ComplexMatrix::diagonal({-4.0, 1.0}), MatFn::sqrt).branch_cut);
    CHECK(mat_func(ComplexMatrix::diagonal({-4.0, 1.0}), MatFn::log).branch_cut);
    CHECK_FALSE(mat_func(ComplexMatrix::diagonal({-4.0, 1.0}), MatFn::exp).branch_cut);
}

TEST_CASE("expm_shifted") {
    CHECK(max_abs_diff(expm_shifted(ComplexMatrix(3), 0.0).value, ComplexMatrix::identity(3)) == 0.0);
    const auto r = expm_shifted(ComplexMatrix::diagonal({-1000.0, -1001.0}), -1000.0);
    CHECK(std::abs(r.value(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(r.value(1, 1) - std::exp(-1.0)) < 1e-14);
    CHECK(r.shift == cplx(-1000.0));

    std::mt19937_64 gen(8);
    const ComplexMatrix m = random_matrix(5, gen);
    const cplx s(1.5, 0.25);
    const ComplexMatrix lhs = std::exp(s) * expm_shifted(m, s).value;
    const ComplexMatrix rhs = mat_func(m, MatFn::exp).value;
    CHECK(max_abs_diff(lhs, rhs) < 1e-8 * rhs.max_abs());
}

TEST_CASE("trace_sqrt_product") {
    const ComplexMatrix mixed = cplx(0.25) * ComplexMatrix::identity(4);
    CHECK(std::abs(trace_sqrt_product(mixed, mixed).value - 1.0) < 1e-14);

    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_density(4, gen), b = random_density(4, gen);
        const cplx f = trace_sqrt_product(a, b).value;
        CHECK(std::abs(f - testutil::uhlmann(a, b)) < 1e-9);
        CHECK(std::abs(f - trace_sqrt_product(b, a).value) < 1e-9);
        CHECK(f.real() >= 0.0);
        CHECK(f.real() <= 1.0 + 1e-9);
        CHECK(std::abs(trace_sqrt_product(a, a).value - 1.0) < 1e-9);
    }
}

TEST_CASE("factored kernel agrees with the dense kernel") {
    std::mt19937_64 gen(4);
    const ComplexMatrix ha = random_matrix(6, gen), hb = random_matrix(6, gen);
    const auto sa = eig_general(ha), sb = eig_general(hb);
    auto factors = [](const SpectralDecomposition& s) {
        CVector lw(s.values.size());
        cplx z = 0;
        for (const cplx& v : s.values) z += std::exp(0.3 * v);
        for (std::size_t i = 0; i < lw.size(); ++i) lw[i] = 0.3 * s.values[i] - std::log(z);
        return SpectralFactors{s.right, s.left, lw};
    };
    const SpectralFactors fa = factors(sa), fb = factors(sb);
    auto dense = [](const SpectralFactors& f) {
        CVector w(f.log_weights.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(f.log_weights[i]);
        return f.right * ComplexMatrix::diagonal(w) * f.left;
    };
    const auto plain = trace_sqrt_product(dense(fa), dense(fb));
    const auto factored = trace_sqrt_product(fa, fb);
    CHECK(std::abs(plain.value - factored.value) < 1e-10);
}

TEST_CASE("continuation branch returns one for equal complex-weight states") {
    // Conjugate pair of weights whose product with itself crosses the negative axis.
    const CVector lw{cplx(-0.2, 2.0), cplx(-0.2, -2.0), cplx(-0.3, 0.0)};
    cplx z = 0;
    for (const cplx& x : lw) z += std::exp(x);
    CVector norm(lw.size());
    for (std::size_t i = 0; i < lw.size(); ++i) norm[i] = lw[i] - std::log(z);
    const SpectralFactors f{ComplexMatrix::identity(3), ComplexMatrix::identity(3), norm};
    const std::vector<std::size_t> pairing{0, 1, 2};
    CHECK(std::abs(trace_sqrt_product(f, f, &pairing).value - 1.0) < 1e-14);
    CHECK(std::abs(trace_sqrt_product(f, f).value - 1.0) > 1e-3);
}

TEST_CASE("invariant_blocks and branch-cut detection") {
    const ComplexMatrix m{{1, 0, 2}, {0, 3, 0}, {4, 0, 5}};
    const auto blocks = invariant_blocks(m);
    REQUIRE(blocks.size() == 2);
    CHECK(near_negative_axis(cplx(-1.0, 1e-13)));
    CHECK_FALSE(near_negative_axis(cplx(-1.0, 1e-6)));
    CHECK_FALSE(near_negative_axis(cplx(1.0, 0.0)));
}
