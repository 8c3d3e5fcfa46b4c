#include <doctest.h>

#include <limits>

#include "ptf/errors.hpp"
#include "ptf/matrix.hpp"

using namespace ptf;

TEST_CASE("matrix construction and access") {
    const ComplexMatrix m{{1, 2}, {3, cplx(0, 4)}};
    CHECK(m.rows() == 2);
    CHECK(m(1, 1) == cplx(0, 4));
    CHECK(m.trace() == cplx(1, 4));
    CHECK(m.adjoint()(1, 1) == cplx(0, -4));
    CHECK(m.adjoint()(0, 1) == cplx(3));
    CHECK_THROWS_AS((ComplexMatrix{{1, std::numeric_limits<double>::quiet_NaN()}}), NonFinite);
    CHECK_THROWS_AS((ComplexMatrix{{1, 2}, {3}}), InvalidArgument);
}

TEST_CASE("identity, products and Kronecker product") {
    const ComplexMatrix a{{1, 2}, {3, 4}};
    const ComplexMatrix id = ComplexMatrix::identity(2);
    CHECK(max_abs_diff(a * id, a) == 0.0);
    const ComplexMatrix k = kron(a, id);
    CHECK(k.rows() == 4);
    CHECK(k(2, 0) == cplx(3));
    CHECK(k(3, 1) == cplx(3));
    CHECK(k(2, 1) == cplx(0));
    const CVector v = a * CVector{1, 1};
    CHECK(v[1] == cplx(7));
    CHECK(dot(CVector{1, cplx(0, 1)}, CVector{1, cplx(0, 1)}) == cplx(0));
}

TEST_CASE("inverse") {
    const ComplexMatrix a{{2, cplx(0, 1), 0}, {1, 3, 1}, {0, 1, cplx(4, 1)}};
    CHECK(max_abs_diff(a * inverse(a), ComplexMatrix::identity(3)) < 1e-14);
    CHECK_THROWS_AS(inverse(ComplexMatrix{{1, 2}, {2, 4}}), DefectiveMatrix);
}
