#include "asep/asepmap.hpp"

#include <cmath>

namespace asep {

std::string to_string(Region r) {
    switch (r) {
    case Region::Fan: return "fan";
    case Region::Shock: return "shock";
    case Region::Boundary: return "boundary(AC=1)";
    }
    return "?";
}

std::string to_string(PhaseKind p) {
    switch (p) {
    case PhaseKind::MaxCurrent: return "max-current";
    case PhaseKind::HighDensity: return "high-density";
    case PhaseKind::LowDensity: return "low-density";
    case PhaseKind::CoexistenceLine: return "coexistence-line";
    case PhaseKind::PhaseBoundary: return "phase-boundary";
    }
    return "?";
}

double kappa(double x, double y, QReal q, int sign) {
    double u = 1.0 - q.value() - x + y;
    double root = std::sqrt(u * u + 4.0 * x * y);
    return (sign >= 0 ? u + root : u - root) / (2.0 * x);
}

BoundaryParams rates_to_abcd(const ASEPRates& r, double tol_grid) {
    BoundaryParams bp{kappa(r.beta, r.delta, r.q, +1), kappa(r.beta, r.delta, r.q, -1),
                      kappa(r.alpha, r.gamma, r.q, +1), kappa(r.alpha, r.gamma, r.q, -1), r.q};
    if (bp.is_singular(tol_grid))
        throw SingularCase("rates_to_abcd: ABCD lies on the q^{-l} grid");
    return bp;
}

ASEPRates abcd_to_rates(const BoundaryParams& bp) {
    // From kappa_+ + kappa_- = (1-q-x+y)/x and kappa_+ kappa_- = -y/x:
    //   x = (1-q)/((1+kappa_+)(1+kappa_-)),  y = -kappa_+ kappa_- x.
    double q = bp.q.value();
    double beta = (1.0 - q) / ((1.0 + bp.A) * (1.0 + bp.B));
    double delta = -bp.A * bp.B * beta;
    double alpha = (1.0 - q) / ((1.0 + bp.C) * (1.0 + bp.D));
    double gamma = -bp.C * bp.D * alpha;
    ASEPRates r{alpha, beta, gamma, delta, bp.q};
    BoundaryParams back{kappa(r.beta, r.delta, r.q, +1), kappa(r.beta, r.delta, r.q, -1),
                        kappa(r.alpha, r.gamma, r.q, +1), kappa(r.alpha, r.gamma, r.q, -1), r.q};
    double resid = std::abs(back.A - bp.A) + std::abs(back.B - bp.B) + std::abs(back.C - bp.C) +
                   std::abs(back.D - bp.D);
    if (resid > 1e-9 * (1.0 + bp.A + bp.C))
        throw InversionFailure("abcd_to_rates: roundtrip residual " + std::to_string(resid));
    return r;
}

Phase classify_phase(const BoundaryParams& bp, double tol) {
    double A = bp.A, C = bp.C;
    Region region;
    if (std::abs(A * C - 1.0) <= tol * (1.0 + A * C))
        region = Region::Boundary;
    else
        region = (A * C < 1.0) ? Region::Fan : Region::Shock;

    PhaseKind phase;
    bool a_eq_c = std::abs(A - C) <= tol * (1.0 + A);
    if (a_eq_c && A > 1.0 + tol)
        phase = PhaseKind::CoexistenceLine;
    else if (A > 1.0 + tol && A > C + tol)
        phase = PhaseKind::HighDensity;
    else if (C > 1.0 + tol && C > A + tol)
        phase = PhaseKind::LowDensity;
    else if (A < 1.0 - tol && C < 1.0 - tol)
        phase = PhaseKind::MaxCurrent;
    else
        phase = PhaseKind::PhaseBoundary;
    return {region, phase};
}

AdmissibleTimeReport admissible_time(const BoundaryParams& bp, double t, std::optional<double> s_opt,
                                     double tol) {
    AdmissibleTimeReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.failures.push_back(msg);
    };
    double q = bp.q.value();
    double rt = std::sqrt(t);

    const double params[4] = {bp.A, bp.B, bp.C, bp.D};
    const char* names = "ABCD";
    for (int i = 0; i < 4; ++i) {
        double e = params[i];
        double mag = std::abs(e);
        double scaled_up = mag * rt, scaled_down = mag / rt;
        if (mag < 1.0 - tol) {
            if (scaled_up >= 1.0 - tol || scaled_down >= 1.0 - tol)
                fail(std::string("(i) |") + names[i] + "| < 1 but a sqrt(t)-scaling reaches 1");
        } else if (mag > 1.0 + tol) {
            if (scaled_up <= 1.0 + tol || scaled_down <= 1.0 + tol)
                fail(std::string("(ii) |") + names[i] + "| > 1 but a sqrt(t)-scaling reaches 1");
        }
    }

    double rq = std::sqrt(q);
    if (!(t > rq + tol && (q == 0.0 || t < 1.0 / rq - tol)))
        fail("(iii) t outside (sqrt(q), 1/sqrt(q))");
    if (s_opt && on_qgrid_z(*s_opt / t, q, tol))
        fail("(iii) s/t on the q^Z grid");
    if (bp.A >= 1.0 - tol && bp.C >= 1.0 - tol && on_qgrid_z(bp.A * t / bp.C, q, tol))
        fail("(iv) At/C on the q^Z grid");
    return rep;
}

BoundaryParams particle_hole(const BoundaryParams& bp) {
    return {bp.C, bp.D, bp.A, bp.B, bp.q};
}

} // namespace asep
