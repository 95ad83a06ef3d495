#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asep/asepmap.hpp"

#include <cmath>
#include <random>

using namespace asep;

TEST_CASE("kappa closed-form points") {
    CHECK(kappa(0.5, 0.0, QReal(0.0), +1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kappa(0.5, 0.0, QReal(0.0), -1) == doctest::Approx(0.0));
    // golden-ratio point
    CHECK(kappa(1.0, 1.0, QReal(0.0), +1) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(kappa(1.0, 1.0, QReal(0.0), -1) == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-14));
}

TEST_CASE("kappa product and range") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ux(0.05, 2.0), uy(0.0, 1.5), uq(0.0, 0.95);
    for (int i = 0; i < 200; ++i) {
        double x = ux(rng), y = uy(rng), q = uq(rng);
        double kp = kappa(x, y, QReal(q), +1), km = kappa(x, y, QReal(q), -1);
        CHECK(kp * km == doctest::Approx(-y / x).epsilon(1e-10));
        CHECK(kp >= 0.0);
        CHECK(km <= 0.0);
        CHECK(km > -1.0);
    }
}

TEST_CASE("rates_to_abcd spec points") {
    // TASEP
    auto bp = rates_to_abcd({1.0, 1.0, 0.0, 0.0, QReal(0.0)});
    CHECK(bp.A == doctest::Approx(0.0));
    CHECK(bp.B == doctest::Approx(0.0));
    CHECK(bp.C == doctest::Approx(0.0));
    CHECK(bp.D == doctest::Approx(0.0));
    // kappa_+ = (1-q-x)/x branch
    auto bp2 = rates_to_abcd({1.0 / 3.0, 1.0 / 6.0, 0.0, 0.0, QReal(0.5)});
    CHECK(bp2.A == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(bp2.C == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(bp2.B == doctest::Approx(0.0));
    CHECK(bp2.D == doctest::Approx(0.0));
}

TEST_CASE("roundtrip rates <-> abcd") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> upos(0.05, 2.0), unn(0.0, 1.0), uq(0.0, 0.9);
    for (int i = 0; i < 1000; ++i) {
        ASEPRates r{upos(rng), upos(rng), unn(rng), unn(rng), QReal(uq(rng))};
        BoundaryParams bp{0, 0, 0, 0, r.q};
        try {
            bp = rates_to_abcd(r);
        } catch (const SingularCase&) {
            continue;
        }
        ASEPRates back = abcd_to_rates(bp);
        CHECK(back.alpha == doctest::Approx(r.alpha).epsilon(1e-12));
        CHECK(back.beta == doctest::Approx(r.beta).epsilon(1e-12));
        CHECK(back.gamma == doctest::Approx(r.gamma).epsilon(2e-12));
        CHECK(back.delta == doctest::Approx(r.delta).epsilon(2e-12));
    }
}

TEST_CASE("abcd_to_rates closed form point") {
    ASEPRates r = abcd_to_rates({2.0, 0.0, 0.5, 0.0, QReal(0.5)});
    CHECK(r.beta == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(r.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.gamma == doctest::Approx(0.0));
    CHECK(r.delta == doctest::Approx(0.0));
}

TEST_CASE("classify_phase") {
    QReal q(0.5);
    auto p1 = classify_phase({2.0, 0.0, 0.4, 0.0, q});
    CHECK(p1.phase == PhaseKind::HighDensity);
    CHECK(p1.region == Region::Fan);
    auto p2 = classify_phase({2.0, 0.0, 1.5, 0.0, q});
    CHECK(p2.phase == PhaseKind::HighDensity);
    CHECK(p2.region == Region::Shock);
    auto p3 = classify_phase({2.0, 0.0, 2.0, 0.0, q});
    CHECK(p3.phase == PhaseKind::CoexistenceLine);
    CHECK(p3.region == Region::Shock);
    auto p4 = classify_phase({0.5, 0.0, 0.3, 0.0, q});
    CHECK(p4.phase == PhaseKind::MaxCurrent);
    auto p5 = classify_phase({0.4, 0.0, 2.0, 0.0, q});
    CHECK(p5.phase == PhaseKind::LowDensity);
    auto p6 = classify_phase({2.0, 0.0, 0.5, 0.0, q});
    CHECK(p6.region == Region::Boundary); // AC = 1
}

TEST_CASE("admissible_time") {
    QReal q(0.5);
    CHECK(admissible_time({2.0, 0.0, 0.4, 0.0, q}, 1.0).ok);
    CHECK(!admissible_time({2.0, 0.0, 2.0, 0.0, q}, 1.0).ok); // At/C = 1
    CHECK(admissible_time({2.0, 0.0, 2.0, 0.0, q}, 0.9).ok);
    // t outside (sqrt q, 1/sqrt q)
    CHECK(!admissible_time({0.0, 0.0, 0.0, 0.0, q}, 0.5).ok);
    // scaling pushes |E| across 1
    CHECK(!admissible_time({1.05, 0.0, 0.0, 0.0, q}, 0.85).ok);
    // pair condition s/t in q^Z
    CHECK(!admissible_time({2.0, 0.0, 0.4, 0.0, q}, 0.95, 0.95 * 0.5).ok);
    CHECK(admissible_time({2.0, 0.0, 0.4, 0.0, q}, 0.95, 0.9).ok);
}

TEST_CASE("particle_hole") {
    BoundaryParams bp{2.0, -0.3, 0.4, -0.1, QReal(0.5)};
    auto sw = particle_hole(bp);
    CHECK(sw.A == 0.4);
    CHECK(sw.B == -0.1);
    CHECK(sw.C == 2.0);
    CHECK(sw.D == -0.3);
    auto back = particle_hole(sw);
    CHECK(back.A == bp.A);
    CHECK(back.D == bp.D);
    CHECK(classify_phase(bp).phase == PhaseKind::HighDensity);
    CHECK(classify_phase(sw).phase == PhaseKind::LowDensity);
}
