#include "asep/qcore.hpp"

#include <cmath>

namespace asep {

Complex qpoch_finite(Complex z, QReal q, int n) {
    Complex prod = 1.0;
    Complex zq = z;
    for (int j = 0; j < n; ++j) {
        prod *= (1.0 - zq);
        zq *= q.value();
    }
    return prod;
}

Complex qpoch_inf(Complex z, QReal q, TruncationSpec trunc) {
    if (z == 0.0)
        return 1.0;
    Complex prod = 1.0;
    Complex zq = z;
    double mag = std::abs(z);
    for (int j = 0;; ++j) {
        if (mag < trunc.eps)
            return prod;
        if (j >= trunc.max_terms)
            throw TruncationBudgetExceeded("qpoch_inf: tail |z| q^N >= eps after max_terms factors");
        prod *= (1.0 - zq);
        zq *= q.value();
        mag *= q.value();
    }
}

Complex qpoch_multi(std::span<const Complex> zs, QReal q, int n, TruncationSpec trunc) {
    Complex prod = 1.0;
    for (Complex z : zs)
        prod *= (n == kInfinity) ? qpoch_inf(z, q, trunc) : qpoch_finite(z, q, n);
    return prod;
}

Complex phi43(const std::array<Complex, 4>& num, const std::array<Complex, 3>& den, QReal q,
              Complex z, TruncationSpec trunc) {
    // Forward term recursion: term_{k+1} = term_k * prod(1-a_i q^k)/prod(1-b_i q^k) * z/(1-q^{k+1}).
    Complex sum = 1.0;
    Complex term = 1.0;
    double qk = 1.0; // q^k
    double prev_mag = 1.0;
    for (int k = 0;; ++k) {
        Complex ratio = z;
        bool terminated = false;
        for (Complex a : num) {
            Complex f = 1.0 - a * qk;
            if (std::abs(f) == 0.0)
                terminated = true;
            ratio *= f;
        }
        if (terminated)
            return sum;
        Complex dprod = 1.0 - q.value() * qk; // the implicit (q;q)_k factor
        for (Complex b : den) {
            Complex f = 1.0 - b * qk;
            if (std::abs(f) < 1e-14 * (1.0 + std::abs(b) * qk))
                throw DenominatorPole("phi43: denominator Pochhammer factor vanishes at k=" +
                                      std::to_string(k));
            dprod *= f;
        }
        term *= ratio / dprod;
        sum += term;
        double mag = std::abs(term);
        if (mag <= trunc.eps * (1.0 + std::abs(sum)))
            return sum;
        if (k + 1 >= trunc.max_terms) {
            if (mag > prev_mag)
                throw NonTerminatingDivergent("phi43: non-terminating series with growing terms");
            throw TruncationBudgetExceeded("phi43: series did not converge within max_terms");
        }
        prev_mag = mag;
        qk *= q.value();
    }
}

double realize(Complex v) {
    double tol = 1e-10 * (1.0 + std::abs(v));
    if (std::abs(v.imag()) > tol)
        throw Error("realize: non-negligible imaginary part " + std::to_string(v.imag()));
    return v.real();
}

bool on_inv_qgrid(Complex z, double q, double tol) {
    if (std::abs(z.imag()) > tol * (1.0 + std::abs(z)))
        return false;
    double v = z.real();
    if (v < 1.0 - tol)
        return false;
    // Walk q^{-l} upward until it overshoots v.
    double g = 1.0;
    for (int l = 0; l < 4000; ++l) {
        if (std::abs(v - g) <= tol * g)
            return true;
        if (q == 0.0)
            return false; // grid is just {1}
        g /= q;
        if (g > v * (1.0 + 10.0 * tol))
            return false;
    }
    return false;
}

bool on_qgrid_z(Complex vc, double q, double tol) {
    if (std::abs(vc.imag()) > tol * (1.0 + std::abs(vc)))
        return false;
    double v = vc.real();
    if (v <= 0.0)
        return std::abs(v) <= tol; // q^l -> 0 as l -> inf when q > 0; treat 0 as on-grid
    if (q == 0.0)
        return std::abs(v - 1.0) <= tol || v <= tol;
    double l = std::round(std::log(v) / std::log(q));
    double g = std::pow(q, l);
    return std::abs(v - g) <= tol * g;
}

} // namespace asep
