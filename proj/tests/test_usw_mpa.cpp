#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asep/oracle.hpp"
#include "asep/usw_mpa.hpp"
#include "corpus.hpp"

#include <cmath>
#include <vector>

using namespace asep;

namespace {
BoundaryParams tasep() { return {0.0, 0.0, 0.0, 0.0, QReal(0.0)}; }
}

TEST_CASE("coefficient identities") {
    BoundaryParams bp{1.7, -0.3, 0.6, -0.2, QReal(0.5)};
    auto c0 = usw_coeffs(0, bp);
    CHECK(c0.eps == 0.0);
    CHECK(c0.phi == 0.0);
    double A = 1.7, B = -0.3, C = 0.6, D = -0.2;
    for (int m = 0; m <= 6; ++m) {
        auto c = usw_coeffs(m, bp);
        double q_m = std::pow(0.5, m);
        CHECK(c.alpha == doctest::Approx(-A * B * q_m * c.beta).epsilon(1e-13));
        if (m >= 1) {
            double q_m1 = std::pow(0.5, m - 1);
            CHECK(c.phi == doctest::Approx(-C * D * q_m1 * c.eps).epsilon(1e-13));
        }
    }
    // ABCD = 0: beta_0 = 1/sqrt(1-q)
    auto z = usw_coeffs(0, {2.0, 0.0, 0.4, 0.0, QReal(0.5)});
    CHECK(z.beta == doctest::Approx(1.0 / std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("coefficients finite as A -> 0") {
    // the closed forms must evaluate without a 1/A singularity
    BoundaryParams bp{0.0, 0.0, 0.7, -0.1, QReal(0.4)};
    for (int m = 0; m <= 5; ++m) {
        auto c = usw_coeffs(m, bp);
        CHECK(std::isfinite(c.gamma));
        CHECK(std::isfinite(c.delta));
    }
}

TEST_CASE("singular ABCD rejected") {
    // ABCD = 4 = q^{-2}
    CHECK_THROWS_AS(usw_coeffs(1, {2.0, 1.0, 2.0, 1.0, QReal(0.5)}), SingularABCD);
}

TEST_CASE("normalization: totally asymmetric, all boundary rates one") {
    // Pi_1(t) = 1 + t, Pi_2(1,1) = 5
    auto bp = tasep();
    CHECK(pi_n({0.7}, bp).value() == doctest::Approx(1.7).epsilon(1e-13));
    CHECK(pi_n({1.0, 1.0}, bp).value() == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(partition(2, bp).value() == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("truncation exactness: a padded dimension changes nothing") {
    BoundaryParams bp{2.0, -0.3, 0.4, -0.5, QReal(0.5)};
    std::vector<double> ts{0.9, 0.95, 1.0};
    auto exact = pi_n(ts, bp);

    TridiagOperator op(static_cast<int>(ts.size()) + 10, bp);
    std::vector<double> v(op.dim(), 0.0);
    v[0] = 1.0;
    double logscale = 0.0;
    for (double t : ts) {
        op.apply_EtD_row(v, t);
        logscale += TridiagOperator::renormalize(v);
    }
    double log_padded =
        logscale + std::log(std::abs(v[0])) + ts.size() * std::log(1 - 0.5);
    CHECK(log_padded == doctest::Approx(exact.log_abs).epsilon(1e-12));
    CHECK(exact.sign == (v[0] > 0 ? 1 : -1));
}

TEST_CASE("generating function matches the exact chain solve") {
    int idx = 0;
    for (const auto& bp : corpus::boundary_params()) {
        ASEPRates rates;
        try {
            rates = abcd_to_rates(bp);
        } catch (const InversionFailure&) {
            continue;
        }
        if (!(rates.alpha > 0 && rates.beta > 0))
            continue;
        for (int n : {1, 3, 6}) {
            std::vector<double> ts(n, 0.9);
            double mpa = gen_fn(ts, bp);
            double ora = oracle_gen_fn(n, rates, ts);
            CHECK(mpa == doctest::Approx(ora).epsilon(1e-9));
        }
        if (++idx == 10)
            break;
    }
    CHECK(idx == 10);
}

TEST_CASE("product case AC=1: generating function factorizes") {
    BoundaryParams bp{2.0, 0.0, 0.5, 0.0, QReal(0.5)};
    for (int n : {1, 2, 5}) {
        std::vector<double> ts(n, 0.8);
        double expect = std::pow((1 + 2.0 * 0.8) / (1 + 2.0), n);
        CHECK(gen_fn(ts, bp) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("one and two point functions: totally asymmetric n=2") {
    auto bp = tasep();
    // stationary weights (00,10,01,11) = (1/5, 2/5, 1/5, 1/5)
    CHECK(one_point(2, 1, bp) == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(one_point(2, 2, bp) == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(two_point(2, 1, 2, bp) == doctest::Approx(0.2).epsilon(1e-13));
    auto all = one_point_all(2, bp);
    CHECK(all[0] == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(all[1] == doctest::Approx(0.4).epsilon(1e-13));
    auto pairs = two_point_all(2, bp);
    CHECK(pairs[0][1] == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("correlation tables agree with the chain solve") {
    BoundaryParams bp{2.0, -0.2, 0.4, -0.3, QReal(0.5)};
    auto rates = abcd_to_rates(bp);
    int n = 5;
    auto mu = stationary(n, rates);
    auto table = one_point_all(n, bp);
    auto pairs = two_point_all(n, bp);
    for (int i = 1; i <= n; ++i) {
        double exact = 0.0;
        for (int s = 0; s < (1 << n); ++s)
            if (s >> (i - 1) & 1)
                exact += mu.probs[s];
        CHECK(table[i - 1] == doctest::Approx(exact).epsilon(1e-10));
        for (int j = i + 1; j <= n; ++j) {
            double exact2 = 0.0;
            for (int s = 0; s < (1 << n); ++s)
                if ((s >> (i - 1) & 1) && (s >> (j - 1) & 1))
                    exact2 += mu.probs[s];
            CHECK(pairs[i - 1][j - 1] == doctest::Approx(exact2).epsilon(1e-10));
        }
    }
}

TEST_CASE("height variance: independent sites at AC=1") {
    // Bernoulli(rho) product with rho = A/(1+A); each site contributes
    // rho (1-rho) to Var(sum tau_i)
    BoundaryParams bp{2.0, 0.0, 0.5, 0.0, QReal(0.5)};
    int n = 6;
    double rho = 2.0 / 3.0;
    CHECK(height_variance(n, 1.0, bp) ==
          doctest::Approx(n * rho * (1 - rho)).epsilon(1e-10));
}
