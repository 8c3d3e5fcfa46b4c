#include <doctest.h>

#include <random>

#include "ptf/errors.hpp"
#include "ptf/model.hpp"

using namespace ptf;

TEST_CASE("polar parameterization") {
    auto p = polar_from_cartesian(1, 0);
    CHECK(p.r == 1.0);
    CHECK(p.phi == 0.0);
    p = polar_from_cartesian(0, 1);
    CHECK(p.phi == doctest::Approx(kPi / 2).epsilon(1e-15));
    p = polar_from_cartesian(0.6, 0.8);
    CHECK(std::abs(p.r - 1.0) < 1e-15);
    CHECK(std::abs(p.phi - 0.927295218001612232) < 1e-15);
    p = polar_from_cartesian(0, 0);
    CHECK(p.r == 0.0);
    CHECK(p.phi == 0.0);
    p = polar_from_cartesian(0.3, -0.4);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 2 * kPi);
    const CouplingParams c = params_from_polar(p.r, p.phi);
    CHECK(std::abs(c.eta - 0.3) < 1e-12);
    CHECK(std::abs(c.xi + 0.4) < 1e-12);
}

TEST_CASE("coupling parameter validation") {
    CouplingParams p;
    p.N = 4;
    CHECK_NOTHROW(p.validate());
    p.N = 3;
    CHECK_THROWS_AS(p.validate(), OddN);
    p.N = 4;
    p.J = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.J = 1;
    p.eta = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), NonFinite);
}

TEST_CASE("dispersion examples") {
    for (double k : {0.1, 1.0, 3.0}) {
        const auto v = dispersion(1, k, {0.0, 0.4});
        CHECK(std::abs(v.value - 2.0) < 1e-15);
        CHECK(v.is_real);
        for (int n = 5; n <= 8; ++n) CHECK(dispersion(n, k, {0.8, 1.3}).value == cplx(0));
    }
    for (double phi : {0.2, 1.0, 2.5, 4.0}) {
        const auto v = dispersion(3, 1e-9, {1.0, phi});
        CHECK(std::abs(v.value - 2 * std::abs(std::cos(phi))) < 1e-8);
    }
    CHECK_THROWS_AS(dispersion(0, 1.0, {0.5, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(dispersion(17, 1.0, {0.5, 0.5}), InvalidArgument);
}

TEST_CASE("dispersion matches high-precision closed-form values") {
    // 30-digit evaluations of the closed forms with principal square roots.
    struct Ref {
        double r, phi, k;
        cplx e1, e3, e9, e11;
    };
    const Ref refs[] = {
        {0.7, 0.4, 1.1, 2.1134506605597702361, 0.94808831640302111412, 1.5307694884813956751,
         0.58268117207837456098},
        {0.9, 1.2, 0.3, 1.2099884190827767561, 0.3831088452801986506, 0.79654863218148770333,
         0.41343978690128905273},
        {1.3, 2.0, 2.5, 2.2169194739859062417, cplx(0.0, 2.3094074632199411346),
         cplx(1.1084597369929531208, 1.1547037316099705673), cplx(1.1084597369929531208, -1.1547037316099705673)},
    };
    for (const Ref& r : refs) {
        const PolarField f{r.r, r.phi};
        CHECK(std::abs(dispersion(1, r.k, f).value - r.e1) < 1e-13);
        CHECK(std::abs(dispersion(3, r.k, f).value - r.e3) < 1e-13);
        CHECK(std::abs(dispersion(9, r.k, f).value - r.e9) < 1e-13);
        CHECK(std::abs(dispersion(11, r.k, f).value - r.e11) < 1e-13);
    }
    CHECK_FALSE(dispersion(11, 2.5, {0.9, 1.2}).is_real);
    CHECK(dispersion(11, 0.3, {0.9, 1.2}).is_real);
}

TEST_CASE("dispersion symmetry relations and Hermitian reality") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> ur(0, 1.5), up(0, 2 * kPi), uk(1e-6, kPi - 1e-6);
    for (int i = 0; i < 500; ++i) {
        const PolarField f{ur(gen), up(gen)};
        const double k = uk(gen);
        auto e = [&](int n) { return dispersion(n, k, f).value; };
        CHECK(std::abs(e(2) + e(1)) <= 1e-12);
        CHECK(std::abs(e(4) + e(3)) <= 1e-12);
        CHECK(std::abs(e(10) + e(9)) <= 1e-12);
        CHECK(std::abs(e(14) + e(9)) <= 1e-12);
        CHECK(std::abs(e(13) - e(9)) <= 1e-12);
        CHECK(std::abs(e(12) + e(11)) <= 1e-12);
        CHECK(std::abs(e(16) + e(11)) <= 1e-12);
        CHECK(std::abs(e(15) - e(11)) <= 1e-12);
        // Sum and product identities of the squared branches.
        const double r2 = f.r * f.r, a = 2 * r2 * std::cos(2 * f.phi) + 2;
        const double inner2 = r2 * r2 - 2 * r2 * std::cos(k) + 1;
        CHECK(std::abs(e(1) * e(1) + e(3) * e(3) - 2 * a) <= 1e-12 * std::max(1.0, a));
        CHECK(std::abs(e(1) * e(1) * e(3) * e(3) - (a * a - 4 * inner2)) <= 1e-11);
        CHECK(std::abs(e(9) * e(9) * e(11) * e(11) - inner2) <= 1e-11);

        const PolarField h{0.99 * ur(gen) / 1.5, 0.0};
        for (int n = 1; n <= 16; ++n) CHECK(dispersion(n, k, h).is_real);
    }
}

TEST_CASE("dispersion is continuous in k off the critical set") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ur(0, 1.5), up(0, 2 * kPi), uk(0.01, kPi - 0.01);
    for (int i = 0; i < 200; ++i) {
        const PolarField f{ur(gen), up(gen)};
        if (std::abs(f.r - 1) < 0.05) continue;
        const double k = uk(gen);
        for (int n = 1; n <= 16; ++n)
            CHECK(std::abs(dispersion(n, k, f).value - dispersion(n, k + 1e-6, f).value) < 1e-4);
    }
}

TEST_CASE("momentum grids") {
    auto g = momentum_grid(4, Parity::even);
    REQUIRE(g.paired.size() == 2);
    CHECK(g.paired[0] == doctest::Approx(kPi / 4));
    CHECK(g.paired[1] == doctest::Approx(3 * kPi / 4));
    CHECK(g.unpaired.empty());
    g = momentum_grid(6, Parity::even);
    REQUIRE(g.paired.size() == 3);
    CHECK(g.paired[1] == doctest::Approx(kPi / 2));
    CHECK(g.paired[2] == doctest::Approx(5 * kPi / 6));
    g = momentum_grid(4, Parity::odd);
    REQUIRE(g.paired.size() == 1);
    CHECK(g.paired[0] == doctest::Approx(kPi / 2));
    REQUIRE(g.unpaired.size() == 2);
    CHECK(g.unpaired[0] == 0.0);
    CHECK(g.unpaired[1] == doctest::Approx(kPi));
    CHECK_THROWS_AS(momentum_grid(5, Parity::even), OddN);
}

TEST_CASE("phase classification") {
    const PhaseLabel inside = classify_phase(0.5, 0.0);
    CHECK(inside.label == Phase::II);
    CHECK(inside.distance == doctest::Approx(0.5));
    CHECK(classify_phase(1.5, 0.2).label == Phase::I);
    CHECK(classify_phase(-1.5, 0.2).label == Phase::III);
    const PhaseLabel circle = classify_phase(0.6, 0.8);
    CHECK(circle.label == Phase::boundary);
    CHECK(circle.distance < 1e-12);
    const PhaseLabel ray = classify_phase(0.0, 2.0);
    CHECK(ray.label == Phase::boundary);
    CHECK(ray.distance == 0.0);
    CHECK(classify_phase(0.1, 2.0).distance == doctest::Approx(0.1));
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 100; ++i) {
        const double eta = u(gen), xi = u(gen);
        const PhaseLabel a = classify_phase(eta, xi), b = classify_phase(eta, -xi);
        CHECK(a.label == b.label);
        CHECK(a.distance == b.distance);
    }
    CHECK(to_string(Phase::boundary) == "boundary");
}
