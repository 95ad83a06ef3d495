#include "asep/awpoly.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace asep {

RecurrenceCoeffs recurrence_coeffs(int m, const AWParams& p) {
    double q = p.q.value();
    Complex e1 = p.a + p.b + p.c + p.d;
    Complex e3 = p.a * p.b * p.c + p.a * p.b * p.d + p.a * p.c * p.d + p.b * p.c * p.d;
    Complex e4 = p.abcd();
    if (m == 0) {
        // The generic expressions below involve q^{m-2}; at m=0 the e4-factors
        // cancel and the coefficients reduce to these closed forms.
        Complex den = 1.0 - e4;
        if (std::abs(den) < 1e-14)
            throw RecurrenceDenominatorZero("recurrence_coeffs: 1 - abcd = 0");
        return {1.0 / den, (e1 - e3) / den, 0.0};
    }
    double qm1 = std::pow(q, m - 1);
    double qm = qm1 * q;
    Complex d0 = 1.0 - qm1 * qm1 * e4;       // 1 - q^{2m-2} abcd
    Complex d1 = 1.0 - qm1 * qm * e4;        // 1 - q^{2m-1} abcd
    Complex d2 = 1.0 - qm * qm * e4;         // 1 - q^{2m}   abcd
    if (std::abs(d0 * d1 * d2) < 1e-14)
        throw RecurrenceDenominatorZero("recurrence_coeffs: abcd on the q^{-l} grid");
    RecurrenceCoeffs rc;
    rc.A = (1.0 - qm1 * e4) / (d1 * d2);
    // qs + abcd s' = q e1 + e3 and abcd (s + q s') = e4 e1 + q e3, with
    // s = e1, s' = sum of reciprocals; this form stays finite as parameters -> 0.
    rc.B = qm1 / (d0 * d2) *
           ((1.0 + qm1 * qm * e4) * (q * e1 + e3) - qm1 * (1.0 + q) * (e4 * e1 + q * e3));
    rc.C = (1.0 - qm) * (1.0 - qm1 * p.a * p.b) * (1.0 - qm1 * p.a * p.c) *
           (1.0 - qm1 * p.a * p.d) * (1.0 - qm1 * p.b * p.c) * (1.0 - qm1 * p.b * p.d) *
           (1.0 - qm1 * p.c * p.d) / (d0 * d1);
    return rc;
}

std::vector<Complex> aw_eval_all(int m, Complex x, const AWParams& p) {
    std::vector<Complex> w(m + 1);
    w[0] = 1.0;
    Complex prev = 0.0; // w_{-1}
    for (int k = 0; k < m; ++k) {
        RecurrenceCoeffs rc = recurrence_coeffs(k, p);
        if (std::abs(rc.A) < 1e-300)
            throw RecurrenceDenominatorZero("aw_eval_all: vanishing leading coefficient");
        Complex next = ((2.0 * x - rc.B) * w[k] - rc.C * prev) / rc.A;
        prev = w[k];
        w[k + 1] = next;
    }
    return w;
}

Complex aw_eval(int m, Complex x, const AWParams& p) { return aw_eval_all(m, x, p).back(); }

Complex aw_norm_eval(int m, Complex x, const AWParams& p) {
    Complex norm = qpoch_finite(p.a * p.b, p.q, m);
    if (std::abs(norm) < 1e-300)
        throw NormalizerZero("aw_norm_eval: (ab;q)_m = 0");
    return aw_eval(m, x, p) / norm;
}

double proj_poly_eval(int m, double x, double t, const BoundaryParams& bp) {
    double rt = std::sqrt(t);
    AWParams p{bp.A * rt, bp.B * rt, bp.C / rt, bp.D / rt, bp.q};
    return std::pow(t, 0.5 * m) * realize(aw_norm_eval(m, x, p));
}

std::vector<Complex> connection_coeffs(int m, const AWParams& p, Complex ct, Complex dt,
                                       TruncationSpec trunc) {
    if (std::abs(p.a) < 1e-300)
        throw RequiresNonzeroA("connection_coeffs: first parameter must be nonzero");
    double q = p.q.value();
    Complex a = p.a, b = p.b, c = p.c, d = p.d;
    Complex abct = a * b * ct * dt;
    Complex abcd = p.abcd();
    Complex act_m = qpoch_finite(a * ct, p.q, m);
    Complex adt_m = qpoch_finite(a * dt, p.q, m);

    std::vector<Complex> out(m + 1);
    for (int r = 0; r <= m; ++r) {
        double qr = std::pow(q, r);
        Complex num = qpoch_finite(std::pow(q, -m), p.q, r) *
                      qpoch_finite(std::pow(q, m - 1) * abct, p.q, r) * act_m * adt_m;
        Complex den = std::pow(a, m - r) * qpoch_finite(Complex(q), p.q, r) *
                      qpoch_finite(std::pow(q, r - 1) * abcd, p.q, r) *
                      qpoch_finite(a * ct, p.q, r) * qpoch_finite(a * dt, p.q, r);
        if (std::abs(den) < 1e-300)
            throw DenominatorPole("connection_coeffs: vanishing prefactor denominator");
        Complex series = phi43(
            {std::pow(q, r - m), abct * std::pow(q, m + r - 1), a * c * qr, a * d * qr},
            {abcd * qr * qr, a * ct * qr, a * dt * qr}, p.q, Complex(q), trunc);
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        out[r] = sgn * std::pow(q, 0.5 * r * (r + 1)) * num / den * series;
    }
    return out;
}

std::vector<Complex> connection_coeffs_solve(int m, const AWParams& p, Complex ct, Complex dt) {
    AWParams tilted{p.a, p.b, ct, dt, p.q};
    int n = m + 1;
    // Sample both families at m+1 distinct points in (-1,1) and solve
    // V coeffs = rhs, where V_{ij} = \bar w_j(x_i; a,b,c,d).
    Eigen::MatrixXcd V(n, n);
    Eigen::VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) {
        Complex x = -0.9 + 1.8 * (i + 0.5) / n;
        auto base = aw_eval_all(m, x, p);
        for (int j = 0; j <= m; ++j)
            V(i, j) = base[j] / qpoch_finite(p.a * p.b, p.q, j);
        rhs(i) = aw_norm_eval(m, x, tilted);
    }
    Eigen::VectorXcd sol = V.colPivHouseholderQr().solve(rhs);
    std::vector<Complex> out(n);
    for (int j = 0; j < n; ++j)
        out[j] = sol(j);
    return out;
}

} // namespace asep
