#include "asep/awmeasure.hpp"
#include "asep/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace asep {

namespace {

// (z;q)_infty with an exact zero whenever z sits on the {q^{-l}} grid (within
// tol); bare floating-point products would leave ~1e-16 residue there, which
// matters because these zeros kill provably-massless atoms.
Complex qpoch_inf_snapped(Complex z, QReal q, TruncationSpec trunc, double tol) {
    if (on_inv_qgrid(z, q.value(), tol))
        return 0.0;
    return qpoch_inf(z, q, trunc);
}

bool is_real(Complex z) { return std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z)); }

// Atoms generated by parameter e (the others are f[0..2]); mass formulas are
// the ones stated with e in the first slot.
void append_atoms(std::vector<Atom>& out, Complex ec, const Complex f[3], char label,
                  const AWParams& p, TruncationSpec trunc, double tol) {
    if (!is_real(ec))
        return;
    double e = ec.real();
    if (std::abs(e) < 1.0 - tol)
        return;
    QReal q = p.q;
    double qv = q.value();

    Complex num0 = qpoch_inf_snapped(1.0 / (ec * ec), q, trunc, tol) *
                   qpoch_inf_snapped(f[0] * f[1], q, trunc, tol) *
                   qpoch_inf_snapped(f[0] * f[2], q, trunc, tol) *
                   qpoch_inf_snapped(f[1] * f[2], q, trunc, tol);
    Complex den0 = qpoch_inf(f[0] / ec, q, trunc) * qpoch_inf(f[1] / ec, q, trunc) *
                   qpoch_inf(f[2] / ec, q, trunc) * qpoch_inf(p.abcd(), q, trunc);
    double p0 = realize(num0 / den0);

    double e2 = e * e;
    for (int j = 0;; ++j) {
        double eqj = e * std::pow(qv, j);
        if (std::abs(eqj) < 1.0 - tol)
            break;
        double pos = 0.5 * (eqj + 1.0 / eqj);
        double mass;
        if (std::abs(std::abs(eqj) - 1.0) <= tol) {
            mass = 0.0; // atom lands on +-1
        } else if (j == 0) {
            mass = p0;
        } else {
            double q2j = std::pow(qv, 2 * j);
            Complex num = qpoch_finite(e2, q, j) * qpoch_finite(ec * f[0], q, j) *
                          qpoch_finite(ec * f[1], q, j) * qpoch_finite(ec * f[2], q, j);
            Complex den = qpoch_finite(Complex(qv), q, j) * (1.0 - e2) * std::pow(e, j);
            for (int l = 1; l <= j; ++l) {
                double ql = std::pow(qv, l);
                den *= (f[0] - ql * ec) * (f[1] - ql * ec) * (f[2] - ql * ec);
            }
            mass = p0 * std::pow(qv, j) * (1.0 - e2 * q2j) * realize(num / den);
        }
        out.push_back({pos, mass, label, j});
        if (qv == 0.0)
            break;
    }
}

} // namespace

RegionReport region_check(const AWParams& p, double tol) {
    RegionReport rep;
    double q = p.q.value();
    auto violate = [&](bool tilde_only, const std::string& msg) {
        if (tilde_only) {
            rep.in_omega_tilde = false;
        } else {
            rep.in_omega = false;
            rep.in_omega_tilde = false;
        }
        rep.violations.push_back(msg);
    };

    const Complex ps[4] = {p.a, p.b, p.c, p.d};
    const char* names = "abcd";

    // (1) squares and pairwise products off the {q^{-l}} grid (Omega-tilde only)
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (on_inv_qgrid(ps[i] * ps[j], q, tol))
                violate(true, std::string("(1) ") + names[i] + names[j] + " on q^{-l} grid");

    // (2) abcd off the grid
    if (on_inv_qgrid(p.abcd(), q, tol))
        violate(false, "(2) abcd on q^{-l} grid");

    // (3) ratios of large real parameters off the q^Z grid
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j || !is_real(ps[i]) || !is_real(ps[j]))
                continue;
            if (std::abs(ps[i]) < 1.0 - tol || std::abs(ps[j]) < 1.0 - tol)
                continue;
            double ratio = ps[i].real() / ps[j].real();
            if (on_qgrid_z(ratio, q, tol))
                violate(false,
                        std::string("(3) ") + names[i] + "/" + names[j] + " on q^Z grid");
        }

    // (4) realness pattern and ab < 1, cd < 1
    if (!is_real(p.a) || !is_real(p.b))
        violate(false, "(4) a or b not real");
    bool cd_conj = std::abs(p.c - std::conj(p.d)) <= 1e-12 * (1.0 + std::abs(p.c));
    if (!(is_real(p.c) && is_real(p.d)) && !cd_conj)
        violate(false, "(4) c,d neither real nor a conjugate pair");
    Complex ab = p.a * p.b, cd = p.c * p.d;
    if (!is_real(ab) || ab.real() >= 1.0 - tol)
        violate(false, "(4) ab >= 1");
    if (!is_real(cd) || cd.real() >= 1.0 - tol)
        violate(false, "(4) cd >= 1");

    return rep;
}

std::vector<Atom> atoms(const AWParams& p, TruncationSpec trunc, double tol) {
    RegionReport rep = region_check(p, tol);
    if (!rep.in_omega) {
        std::string msg = "atoms: parameters outside Omega:";
        for (const auto& v : rep.violations)
            msg += " " + v;
        throw OutsideOmega(msg);
    }
    std::vector<Atom> out;
    Complex fa[3] = {p.b, p.c, p.d};
    Complex fb[3] = {p.a, p.c, p.d};
    Complex fc[3] = {p.a, p.b, p.d};
    Complex fd[3] = {p.a, p.b, p.c};
    append_atoms(out, p.a, fa, 'a', p, trunc, tol);
    append_atoms(out, p.b, fb, 'b', p, trunc, tol);
    append_atoms(out, p.c, fc, 'c', p, trunc, tol);
    append_atoms(out, p.d, fd, 'd', p, trunc, tol);
    std::sort(out.begin(), out.end(),
              [](const Atom& l, const Atom& r) { return l.position > r.position; });
    return out;
}

double density_at(double x, const AWParams& p, TruncationSpec trunc, double tol) {
    if (!(std::abs(x) < 1.0))
        throw DomainError("density_at: |x| >= 1");
    QReal q = p.q;
    double qv = q.value();
    Complex pre_num = qpoch_inf(Complex(qv), q, trunc) *
                      qpoch_inf_snapped(p.a * p.b, q, trunc, tol) *
                      qpoch_inf_snapped(p.a * p.c, q, trunc, tol) *
                      qpoch_inf_snapped(p.a * p.d, q, trunc, tol) *
                      qpoch_inf_snapped(p.b * p.c, q, trunc, tol) *
                      qpoch_inf_snapped(p.b * p.d, q, trunc, tol) *
                      qpoch_inf_snapped(p.c * p.d, q, trunc, tol);
    Complex pre_den = qpoch_inf(p.abcd(), q, trunc);

    double theta = std::acos(x);
    Complex eip(std::cos(theta), std::sin(theta));
    Complex e2ip = eip * eip;
    // |(e^{2i theta})_inf|^2 = 4 (1-x^2) |(q e^{2i theta})_inf|^2, which cancels
    // the 1/sqrt(1-x^2) in the raw formula into an explicit sqrt(1-x^2) factor.
    Complex top = qpoch_inf(qv * e2ip, q, trunc);
    Complex bot = qpoch_inf(p.a * eip, q, trunc) * qpoch_inf(p.b * eip, q, trunc) *
                  qpoch_inf(p.c * eip, q, trunc) * qpoch_inf(p.d * eip, q, trunc);
    double ratio2 = std::norm(top) / std::norm(bot);
    return 2.0 / M_PI * std::sqrt(1.0 - x * x) * realize(pre_num / pre_den) * ratio2;
}

SignedMeasure measure_build(const AWParams& p, int n_nodes, TruncationSpec trunc, double tol) {
    SignedMeasure m;
    m.params = p;
    m.atoms = atoms(p, trunc, tol);

    auto [gx, gw] = gauss_legendre(n_nodes);
    m.node_x.resize(n_nodes);
    m.node_w.resize(n_nodes);
    m.node_f.resize(n_nodes);
    // theta in (0,pi) mapped from GL nodes on (-1,1); x = cos(theta) descends as
    // theta grows, so fill back-to-front to keep node_x ascending.
    for (int i = 0; i < n_nodes; ++i) {
        double theta = 0.5 * M_PI * (1.0 + gx[i]);
        int k = n_nodes - 1 - i;
        m.node_x[k] = std::cos(theta);
        m.node_w[k] = std::sin(theta) * 0.5 * M_PI * gw[i];
        m.node_f[k] = density_at(m.node_x[k], p, trunc, tol);
    }

    KahanSum mass, tv;
    for (const Atom& a : m.atoms) {
        mass.add(a.mass);
        tv.add(std::abs(a.mass));
    }
    for (int i = 0; i < n_nodes; ++i) {
        mass.add(m.node_w[i] * m.node_f[i]);
        tv.add(m.node_w[i] * std::abs(m.node_f[i]));
    }
    m.total_mass = mass.value();
    m.total_variation = tv.value();
    return m;
}

double integrate(const SignedMeasure& m, const std::function<double(double)>& f) {
    KahanSum s;
    for (const Atom& a : m.atoms)
        s.add(a.mass * f(a.position));
    for (size_t i = 0; i < m.node_x.size(); ++i)
        s.add(m.node_w[i] * m.node_f[i] * f(m.node_x[i]));
    return s.value();
}

Eigen::MatrixXd orthogonality_matrix(const AWParams& p, int M, int n_nodes,
                                     TruncationSpec trunc) {
    SignedMeasure m = measure_build(p, n_nodes, trunc);
    size_t npts = m.atoms.size() + m.node_x.size();
    Eigen::MatrixXd W(npts, M); // polynomial values at support points
    Eigen::VectorXd wt(npts);
    size_t row = 0;
    auto fill = [&](double x, double weight) {
        auto vals = aw_eval_all(M - 1, x, p);
        for (int j = 0; j < M; ++j)
            W(row, j) = realize(vals[j]);
        wt(row) = weight;
        ++row;
    };
    for (const Atom& a : m.atoms)
        fill(a.position, a.mass);
    for (size_t i = 0; i < m.node_x.size(); ++i)
        fill(m.node_x[i], m.node_w[i] * m.node_f[i]);

    Eigen::MatrixXd G(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            KahanSum s;
            for (size_t k = 0; k < npts; ++k)
                s.add(wt(k) * W(k, i) * W(k, j));
            G(i, j) = s.value();
        }
    return G;
}

double orthogonality_diagonal(const AWParams& p, int m) {
    if (m == 0)
        return 1.0; // the q^{m-1} abcd factors cancel
    QReal q = p.q;
    double qv = q.value();
    Complex e4 = p.abcd();
    Complex num = (1.0 - std::pow(qv, m - 1) * e4) * qpoch_finite(Complex(qv), q, m) *
                  qpoch_finite(p.a * p.b, q, m) * qpoch_finite(p.a * p.c, q, m) *
                  qpoch_finite(p.a * p.d, q, m) * qpoch_finite(p.b * p.c, q, m) *
                  qpoch_finite(p.b * p.d, q, m) * qpoch_finite(p.c * p.d, q, m);
    Complex den = (1.0 - std::pow(qv, 2 * m - 1) * e4) * qpoch_finite(e4, q, m);
    return realize(num / den);
}

double total_variation(const SignedMeasure& m) { return m.total_variation; }

} // namespace asep
