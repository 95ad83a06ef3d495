#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asep/qcore.hpp"

#include <cmath>
#include <complex>

using namespace asep;

TEST_CASE("qpoch_finite hand values") {
    QReal q(0.5);
    CHECK(qpoch_finite(0.3, q, 0) == Complex(1.0));
    // (0.3;0.5)_2 = (1-0.3)(1-0.15)
    CHECK(realize(qpoch_finite(0.3, q, 2)) == doctest::Approx(0.7 * 0.85).epsilon(1e-15));
    // complex argument
    Complex z(0.2, 0.4);
    Complex expect = (1.0 - z) * (1.0 - z * 0.5) * (1.0 - z * 0.25);
    CHECK(std::abs(qpoch_finite(z, q, 3) - expect) < 1e-15);
}

TEST_CASE("qpoch_inf against frozen high-precision values") {
    // reference values computed with 30-digit arithmetic
    CHECK(realize(qpoch_inf(0.25, QReal(0.5))) ==
          doctest::Approx(0.57757619017320484256).epsilon(1e-14));
    CHECK(realize(qpoch_inf(0.5, QReal(0.5))) ==
          doctest::Approx(0.28878809508660242128).epsilon(1e-14));
    CHECK(realize(qpoch_inf(0.3, QReal(0.7))) ==
          doctest::Approx(0.33108951724031787415).epsilon(1e-14));
    CHECK(realize(qpoch_inf(-0.2, QReal(0.3))) ==
          doctest::Approx(1.3049029895652963549).epsilon(1e-14));
    // q = 0: single factor
    CHECK(realize(qpoch_inf(0.7, QReal(0.0))) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(qpoch_inf(0.0, QReal(0.9)) == Complex(1.0));
}

TEST_CASE("qpoch_inf exact zero on the grid only via snapping by callers") {
    // at z = 1 the product is exactly 0 through its first factor
    CHECK(std::abs(qpoch_inf(1.0, QReal(0.5))) == 0.0);
}

TEST_CASE("qpoch_multi") {
    QReal q(0.4);
    Complex zs[] = {0.2, -0.3, 0.5};
    Complex prod = qpoch_finite(0.2, q, 3) * qpoch_finite(-0.3, q, 3) * qpoch_finite(0.5, q, 3);
    CHECK(std::abs(qpoch_multi(zs, q, 3) - prod) < 1e-15);
    Complex iprod = qpoch_inf(0.2, q) * qpoch_inf(-0.3, q) * qpoch_inf(0.5, q);
    CHECK(std::abs(qpoch_multi(zs, q, kInfinity) - iprod) < 1e-15);
}

TEST_CASE("phi43 terminating series against direct summation") {
    QReal q(0.5);
    double qv = 0.5;
    int m = 4;
    std::array<Complex, 4> num = {std::pow(qv, -m), 0.3, 0.2, -0.4};
    std::array<Complex, 3> den = {0.7, -0.1, 0.6};
    // direct sum of the terminating series, k = 0..m
    Complex direct = 0.0;
    for (int k = 0; k <= m; ++k) {
        Complex t = std::pow(qv, k);
        for (auto a : num)
            t *= qpoch_finite(a, q, k);
        for (auto b : den)
            t /= qpoch_finite(b, q, k);
        t /= qpoch_finite(qv, q, k);
        direct += t;
    }
    Complex got = phi43(num, den, q, qv);
    CHECK(std::abs(got - direct) < 1e-12 * std::abs(direct));
}

TEST_CASE("phi43 pole detection") {
    QReal q(0.5);
    std::array<Complex, 4> num = {0.2, 0.3, 0.1, 0.4};
    std::array<Complex, 3> den = {1.0, 0.5, 0.25}; // 1 - b q^0 = 0 immediately
    CHECK_THROWS_AS(phi43(num, den, q, 0.5), DenominatorPole);
}

TEST_CASE("realize") {
    CHECK(realize(Complex(2.5, 1e-13)) == doctest::Approx(2.5));
    CHECK_THROWS_AS(realize(Complex(1.0, 0.1)), Error);
}

TEST_CASE("grid predicates") {
    double tol = 1e-9;
    CHECK(on_inv_qgrid(1.0, 0.5, tol));
    CHECK(on_inv_qgrid(4.0, 0.5, tol)); // q^{-2}
    CHECK(!on_inv_qgrid(3.0, 0.5, tol));
    CHECK(!on_inv_qgrid(0.5, 0.5, tol)); // below 1: not on {q^{-l}}
    CHECK(on_inv_qgrid(4.0 * (1 + 1e-10), 0.5, tol));
    CHECK(!on_inv_qgrid(4.0 * (1 + 1e-7), 0.5, tol));
    CHECK(on_inv_qgrid(1.0, 0.0, tol));
    CHECK(!on_inv_qgrid(2.0, 0.0, tol));

    CHECK(on_qgrid_z(1.0, 0.5, tol));
    CHECK(on_qgrid_z(0.125, 0.5, tol));  // q^3
    CHECK(on_qgrid_z(8.0, 0.5, tol));    // q^{-3}
    CHECK(!on_qgrid_z(0.9, 0.5, tol));
    CHECK(!on_qgrid_z(-1.0, 0.5, tol)); // negative reals never hit
}

TEST_CASE("QReal validation") {
    CHECK_THROWS(QReal(1.0));
    CHECK_THROWS(QReal(-0.1));
    CHECK(QReal(0.0).value() == 0.0);
}
