#include "asep/asymptotics.hpp"
#include "asep/quadrature.hpp"

#include <cmath>

namespace asep {

std::vector<double> LaplaceGrid::tail_sums() const {
    std::vector<double> s(cs.size());
    double acc = 0.0;
    for (int k = static_cast<int>(cs.size()) - 1; k >= 0; --k) {
        acc += cs[k];
        s[k] = acc;
    }
    return s;
}

void LaplaceGrid::validate() const {
    size_t d = xs.size();
    if (d == 0 || cs.size() != d)
        throw InvalidGrid("LaplaceGrid: empty or mismatched xs/cs");
    double prev = 0.0;
    for (double x : xs) {
        if (!(x > prev))
            throw InvalidGrid("LaplaceGrid: xs must be strictly increasing in (0,1]");
        prev = x;
    }
    if (std::abs(xs.back() - 1.0) > 1e-12)
        throw InvalidGrid("LaplaceGrid: last x must be 1");
    for (double c : cs)
        if (!(c > 0.0))
            throw InvalidGrid("LaplaceGrid: cs must be positive");
    auto s = tail_sums();
    for (size_t k = 0; k + 1 < d; ++k)
        if (std::abs(s[k] - 2.0 * s[k + 1]) <= 1e-9 * s[k])
            throw InvalidGrid("LaplaceGrid: s_k = 2 s_{k+1} is excluded");
}

namespace {

double qinf(double z, QReal q) { return realize(qpoch_inf(z, q)); }

} // namespace

double frak_p0(const BoundaryParams& bp) {
    double A = bp.A, B = bp.B, C = bp.C, D = bp.D;
    Phase ph = classify_phase(bp);
    if (ph.phase != PhaseKind::HighDensity)
        throw WrongPhase("frak_p0: requires the high-density phase");
    if (on_qgrid_z(A / C, bp.q.value(), kTolGrid) || bp.is_singular())
        throw GridHit("frak_p0: A/C or ABCD on the q grid");
    return qinf(1.0 / (A * A), bp.q) * qinf(B * C, bp.q) * qinf(B * D, bp.q) *
           qinf(C * D, bp.q) /
           (qinf(B / A, bp.q) * qinf(C / A, bp.q) * qinf(D / A, bp.q) *
            qinf(A * B * C * D, bp.q));
}

double frak_c0(const BoundaryParams& bp) {
    double A = bp.A, B = bp.B, D = bp.D, q = bp.q.value();
    if (classify_phase(bp).phase != PhaseKind::CoexistenceLine)
        throw WrongPhase("frak_c0: requires the coexistence line A = C > 1");
    return qinf(1.0 / (A * A), bp.q) * qinf(A * B, bp.q) * qinf(B * D, bp.q) *
           qinf(A * D, bp.q) /
           (qinf(B / A, bp.q) * qinf(q, bp.q) * qinf(D / A, bp.q) *
            qinf(A * A * B * D, bp.q));
}

LogScaled zn_prediction(int n, const BoundaryParams& bp) {
    Phase ph = classify_phase(bp);
    if (ph.phase == PhaseKind::LowDensity)
        return zn_prediction(n, particle_hole(bp)); // Z_n is duality-invariant
    double A = bp.A;
    double growth = n * (2.0 * std::log1p(A) - std::log(A));
    if (ph.phase == PhaseKind::HighDensity)
        return {1, std::log(frak_p0(bp)) + growth};
    if (ph.phase == PhaseKind::CoexistenceLine)
        return {1, std::log(frak_c0(bp) * (A - 1.0) / (A + 1.0)) + std::log((double)n) + growth};
    throw WrongPhase("zn_prediction: no prediction in phase " + to_string(ph.phase));
}

double density_profile_prediction(double x, const BoundaryParams& bp) {
    Phase ph = classify_phase(bp);
    switch (ph.phase) {
    case PhaseKind::HighDensity:
        return bp.A / (1.0 + bp.A);
    case PhaseKind::LowDensity:
        return 1.0 / (1.0 + bp.C);
    case PhaseKind::CoexistenceLine:
        // E[d eta^A / dx] with the shock location uniform on (0,1)
        return (1.0 + (bp.A - 1.0) * x) / (1.0 + bp.A);
    case PhaseKind::MaxCurrent:
        return 0.5;
    default:
        throw WrongPhase("density_profile_prediction: phase boundary");
    }
}

double hd_laplace_limit(const LaplaceGrid& g, double A) {
    g.validate();
    auto s = g.tail_sums();
    double acc = 0.0, xprev = 0.0;
    for (size_t k = 0; k < g.xs.size(); ++k) {
        acc += s[k] * s[k] * (g.xs[k] - xprev);
        xprev = g.xs[k];
    }
    return std::exp(A / (2.0 * (1.0 + A) * (1.0 + A)) * acc);
}

double cl_laplace_limit(const LaplaceGrid& g, double A) {
    g.validate();
    auto s = g.tail_sums();
    size_t d = g.xs.size();
    double r = (A - 1.0) / (A + 1.0);
    double out = 0.0;
    for (size_t l = 0; l < d; ++l) {
        double expo = 0.0;
        for (size_t k = 0; k < d; ++k)
            expo += (k < l ? 1.0 : A) * g.cs[k] * g.xs[k];
        double xl = g.xs[l], xlm = (l == 0 ? 0.0 : g.xs[l - 1]);
        out += (1.0 / s[l]) * std::exp(-expo / (A + 1.0)) *
               (std::exp(r * s[l] * xl) - std::exp(r * s[l] * xlm));
    }
    return out / r;
}

double cl_laplace_limit_quad(const LaplaceGrid& g, double A) {
    g.validate();
    size_t d = g.xs.size();
    auto eta = [&](double x, double u) { return (A * x + (1.0 - A) * std::min(x, u)) / (1.0 + A); };
    auto integrand = [&](double u) {
        double e = 0.0;
        for (size_t k = 0; k < d; ++k)
            e += g.cs[k] * eta(g.xs[k], u);
        return std::exp(-e);
    };
    // piecewise-smooth in u with kinks at the x_k: integrate each cell
    auto [gx, gw] = gauss_legendre(50);
    double out = 0.0, lo = 0.0;
    for (size_t l = 0; l <= d; ++l) {
        double hi = (l < d ? g.xs[l] : 1.0);
        if (hi <= lo)
            continue;
        for (size_t i = 0; i < gx.size(); ++i)
            out += 0.5 * (hi - lo) * gw[i] * integrand(0.5 * (hi + lo) + 0.5 * (hi - lo) * gx[i]);
        lo = hi;
    }
    return out;
}

namespace {

std::vector<double> laplace_ts(int n, const LaplaceGrid& g, double scale_pow) {
    auto s = g.tail_sums();
    std::vector<double> ts;
    ts.reserve(n);
    int prev = 0;
    double scale = std::pow(static_cast<double>(n), scale_pow);
    for (size_t k = 0; k < g.xs.size(); ++k) {
        int nk = static_cast<int>(std::floor(n * g.xs[k]));
        for (int i = prev; i < nk; ++i)
            ts.push_back(std::exp(-s[k] / scale));
        prev = nk;
    }
    return ts;
}

} // namespace

double hd_laplace_empirical(int n, const LaplaceGrid& g, const BoundaryParams& bp) {
    g.validate();
    if (classify_phase(bp).phase != PhaseKind::HighDensity)
        throw WrongPhase("hd_laplace_empirical: requires the high-density phase");
    auto s = g.tail_sums();
    double rn = std::sqrt(static_cast<double>(n));
    double pref = 0.0;
    int prev = 0;
    for (size_t k = 0; k < g.xs.size(); ++k) {
        int nk = static_cast<int>(std::floor(n * g.xs[k]));
        pref += (s[k] / rn) * (nk - prev);
        prev = nk;
    }
    pref *= bp.A / (1.0 + bp.A);
    auto ts = laplace_ts(n, g, 0.5);
    LogScaled num = pi_n(ts, bp);
    if (num.sign != 0)
        num.log_abs += pref;
    return num.ratio(partition(static_cast<int>(ts.size()), bp));
}

double cl_laplace_empirical(int n, const LaplaceGrid& g, const BoundaryParams& bp) {
    g.validate();
    if (classify_phase(bp).phase != PhaseKind::CoexistenceLine)
        throw WrongPhase("cl_laplace_empirical: requires the coexistence line");
    auto ts = laplace_ts(n, g, 1.0);
    return pi_n(ts, bp).ratio(partition(static_cast<int>(ts.size()), bp));
}

std::pair<double, double> phi_psi(double s, double y, double A) {
    double base = (1.0 + std::exp(-s) + 2.0 * std::exp(-0.5 * s) * y) * A / ((1.0 + A) * (1.0 + A));
    return {base * std::exp(s * A / (1.0 + A)), base};
}

} // namespace asep
