#include "asep/multitime.hpp"
#include "asep/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace asep {

namespace {

constexpr double kPosTol = 1e-8; // matching atom positions across levels

AWParams scaled_params(double t, const BoundaryParams& bp) {
    double rt = std::sqrt(t);
    return {bp.A * rt, bp.B * rt, bp.C / rt, bp.D / rt, bp.q};
}

void require_admissible(const BoundaryParams& bp, double t,
                        std::optional<double> s = std::nullopt) {
    auto rep = admissible_time(bp, t, s);
    if (!rep.ok) {
        std::string msg = s ? "time pair (s,t) inadmissible:" : "time t inadmissible:";
        for (const auto& f : rep.failures)
            msg += " " + f;
        if (s)
            throw InadmissiblePair(msg);
        throw InadmissibleTime(msg);
    }
}

void drop_zero_atoms(SignedMeasure& m) {
    m.atoms.erase(std::remove_if(m.atoms.begin(), m.atoms.end(),
                                 [](const Atom& a) { return a.mass == 0.0; }),
                  m.atoms.end());
}

bool in_support(double x, const SignedMeasure& marg) {
    if (std::abs(x) <= 1.0 + kPosTol)
        return true;
    for (const Atom& a : marg.atoms)
        if (std::abs(x - a.position) <= kPosTol)
            return true;
    return false;
}

} // namespace

SignedMeasure marginal_measure(double t, const BoundaryParams& bp, int n_nodes,
                               TruncationSpec trunc) {
    require_admissible(bp, t);
    return measure_build(scaled_params(t, bp), n_nodes, trunc);
}

SignedMeasure transition_measure(double s, double t, double x, const BoundaryParams& bp,
                                 int n_nodes, TruncationSpec trunc) {
    if (s > t)
        throw InadmissiblePair("transition_measure: s > t");
    require_admissible(bp, s);
    if (s == t) {
        SignedMeasure m;
        m.params = scaled_params(t, bp);
        m.atoms = {{x, 1.0, 'x', 0}};
        m.total_mass = 1.0;
        m.total_variation = 1.0;
        return m;
    }
    require_admissible(bp, t, s);
    {
        SignedMeasure marg_s = marginal_measure(s, bp, 8, trunc);
        if (!in_support(x, marg_s))
            throw XOutsideSupport("transition_measure: x not in the time-s support");
    }
    double rt = std::sqrt(t), rst = std::sqrt(s / t);
    Complex ct, dt;
    if (std::abs(x) < 1.0) {
        Complex root(0.0, std::sqrt(1.0 - x * x));
        ct = rst * (x + root);
        dt = std::conj(ct);
    } else {
        double root = std::sqrt(x * x - 1.0);
        ct = rst * (x + root);
        dt = rst * (x - root);
    }
    AWParams p{bp.A * rt, bp.B * rt, ct, dt, bp.q};
    SignedMeasure m = measure_build(p, n_nodes, trunc);
    drop_zero_atoms(m);
    return m;
}

SupportSet support_points(double t, const BoundaryParams& bp, TruncationSpec trunc) {
    SignedMeasure m = marginal_measure(t, bp, 8, trunc);
    SupportSet s;
    s.y1_star = 1.0;
    for (const Atom& a : m.atoms) {
        s.atom_positions.push_back(a.position);
        if (a.generator == 'a' && a.level == 0)
            s.y0_a = a.position;
        else if (a.generator == 'c' && a.level == 0)
            s.y0_c = a.position;
        else
            s.y1_star = std::max(s.y1_star, a.position);
    }
    return s;
}

namespace {

// g_{k} evaluated on the support of the time-t_k marginal: values on the
// shared quadrature grid plus one value per atom (keyed by position).
struct LevelValues {
    std::vector<double> at_nodes;
    std::vector<std::pair<double, double>> at_atoms; // (position, value)

    double lookup_atom(double pos) const {
        for (const auto& [p, v] : at_atoms)
            if (std::abs(p - pos) <= kPosTol)
                return v;
        throw XOutsideSupport("pin_integral: kernel atom not matched in the next level support");
    }
};

} // namespace

double pin_integral(const std::vector<double>& ts, const BoundaryParams& bp, int n_nodes,
                    TruncationSpec trunc) {
    int n = static_cast<int>(ts.size());
    for (int i = 1; i < n; ++i)
        if (ts[i] < ts[i - 1])
            throw InadmissiblePair("pin_integral: ts must be ascending");

    std::vector<SignedMeasure> marg(n);
    for (int i = 0; i < n; ++i)
        marg[i] = marginal_measure(ts[i], bp, n_nodes, trunc);
    for (int i = 0; i + 1 < n; ++i)
        if (ts[i] != ts[i + 1])
            require_admissible(bp, ts[i + 1], ts[i]);

    auto factor = [&](int k, double x) { return 1.0 + ts[k] + 2.0 * std::sqrt(ts[k]) * x; };

    // g_n is the bare factor
    LevelValues next;
    next.at_nodes.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        next.at_nodes[i] = factor(n - 1, marg[n - 1].node_x[i]);
    for (const Atom& a : marg[n - 1].atoms)
        next.at_atoms.push_back({a.position, factor(n - 1, a.position)});

    for (int k = n - 2; k >= 0; --k) {
        LevelValues cur;
        auto g_k = [&](double x) {
            if (ts[k] == ts[k + 1]) {
                // delta kernel: supports coincide, reuse the value at x
                if (std::abs(x) < 1.0) {
                    // x is a shared quadrature node
                    auto it = std::lower_bound(marg[k + 1].node_x.begin(),
                                               marg[k + 1].node_x.end(), x - 1e-14);
                    return factor(k, x) *
                           next.at_nodes[it - marg[k + 1].node_x.begin()];
                }
                return factor(k, x) * next.lookup_atom(x);
            }
            SignedMeasure ker = transition_measure(ts[k], ts[k + 1], x, bp, n_nodes, trunc);
            KahanSum s;
            for (const Atom& a : ker.atoms)
                s.add(a.mass * next.lookup_atom(a.position));
            for (int i = 0; i < n_nodes; ++i)
                s.add(ker.node_w[i] * ker.node_f[i] * next.at_nodes[i]);
            return factor(k, x) * s.value();
        };
        cur.at_nodes.resize(n_nodes);
        for (int i = 0; i < n_nodes; ++i)
            cur.at_nodes[i] = g_k(marg[k].node_x[i]);
        for (const Atom& a : marg[k].atoms)
            cur.at_atoms.push_back({a.position, g_k(a.position)});
        next = std::move(cur);
    }

    KahanSum s;
    for (const Atom& a : marg[0].atoms)
        s.add(a.mass * next.lookup_atom(a.position));
    for (int i = 0; i < n_nodes; ++i)
        s.add(marg[0].node_w[i] * marg[0].node_f[i] * next.at_nodes[i]);
    return s.value();
}

double projection_check(int m, double s, double t, double x, const BoundaryParams& bp,
                        int n_nodes, TruncationSpec trunc) {
    SignedMeasure ker = transition_measure(s, t, x, bp, n_nodes, trunc);
    double lhs = integrate(ker, [&](double y) { return proj_poly_eval(m, y, t, bp); });
    return std::abs(lhs - proj_poly_eval(m, x, s, bp));
}

} // namespace asep
