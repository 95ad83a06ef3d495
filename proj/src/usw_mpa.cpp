#include "asep/usw_mpa.hpp"

#include <algorithm>
#include <cmath>

namespace asep {

USWCoeffs usw_coeffs(int m, const BoundaryParams& bp) {
    double A = bp.A, B = bp.B, C = bp.C, D = bp.D, q = bp.q.value();
    double e4 = A * B * C * D;
    if (on_inv_qgrid(e4, q, kTolGrid))
        throw SingularABCD("usw_coeffs: ABCD on the q^{-l} grid");
    double sq = std::sqrt(1.0 - q);
    USWCoeffs c{};
    if (m == 0) {
        c.beta = 1.0 / (sq * (1.0 - e4));
        c.alpha = -A * B * c.beta;
        c.eps = 0.0;
        c.phi = 0.0;
        c.gamma = A / sq + B * c.beta * (1.0 - A * C) * (1.0 - A * D);
        c.delta = (C + D - C * D * (A + B)) / (sq * (1.0 - e4));
        return c;
    }
    double qm = std::pow(q, m), qm1 = std::pow(q, m - 1);
    double q2m = qm * qm, q2m1 = qm * qm1, q2m2 = qm1 * qm1;
    double d2m = 1.0 - e4 * q2m, d2m1 = 1.0 - e4 * q2m1, d2m2 = 1.0 - e4 * q2m2;

    c.beta = (1.0 - e4 * qm1) / (sq * d2m * d2m1);
    c.alpha = -A * B * qm * c.beta;
    c.eps = (1.0 - qm) * (1.0 - A * C * qm1) * (1.0 - A * D * qm1) * (1.0 - B * C * qm1) *
            (1.0 - B * D * qm1) / (sq * d2m2 * d2m1);
    c.phi = -C * D * qm1 * c.eps;
    // eps with its (1-ACq^{m-1})(1-ADq^{m-1}) factors cancelled; keeps gamma and
    // delta finite when those factors vanish and removes every division by A.
    double Em = (1.0 - qm) * (1.0 - B * C * qm1) * (1.0 - B * D * qm1) / (sq * d2m2 * d2m1);
    c.gamma = A / sq + B * qm * c.beta * (1.0 - A * C * qm) * (1.0 - A * D * qm) - A * Em;
    double num_d = (C + D) * qm + B * C * D * qm1 - B * C * D * (q2m1 + q2m) - A * C * D * q2m -
                   e4 * (C + D) * q2m1 + A * A * B * C * C * D * D * qm * q2m1 +
                   A * B * B * C * C * D * D * q2m * q2m1;
    c.delta = num_d / (sq * d2m * d2m1) + A * C * D * qm1 * Em;
    return c;
}

TridiagOperator::TridiagOperator(int dim, const BoundaryParams& bp) : dim_(dim), q_(bp.q.value()) {
    co_.reserve(dim + 1);
    for (int m = 0; m <= dim; ++m)
        co_.push_back(usw_coeffs(m, bp));
}

void TridiagOperator::apply_EtD_row(std::vector<double>& v, double t) const {
    std::vector<double> out(dim_, 0.0);
    double diag = (1.0 + t) / (1.0 - q_);
    double sq = std::sqrt(1.0 - q_);
    for (int j = 0; j < dim_; ++j) {
        double acc = diag * v[j];
        double tri = v[j] * (co_[j].delta + t * co_[j].gamma);
        if (j > 0)
            tri += v[j - 1] * (co_[j].phi + t * co_[j].eps);
        if (j + 1 < dim_)
            tri += v[j + 1] * (co_[j].beta + t * co_[j].alpha);
        out[j] = acc + tri / sq;
    }
    v.swap(out);
}

void TridiagOperator::apply_D_row(std::vector<double>& v) const {
    std::vector<double> out(dim_, 0.0);
    double inv = 1.0 / (1.0 - q_);
    double sq = std::sqrt(1.0 - q_);
    for (int j = 0; j < dim_; ++j) {
        double tri = v[j] * co_[j].gamma;
        if (j > 0)
            tri += v[j - 1] * co_[j].eps;
        if (j + 1 < dim_)
            tri += v[j + 1] * co_[j].alpha;
        out[j] = inv * v[j] + tri / sq;
    }
    v.swap(out);
}

void TridiagOperator::apply_EtD_col(std::vector<double>& u, double t) const {
    std::vector<double> out(dim_, 0.0);
    double diag = (1.0 + t) / (1.0 - q_);
    double sq = std::sqrt(1.0 - q_);
    for (int i = 0; i < dim_; ++i) {
        double tri = u[i] * (co_[i].delta + t * co_[i].gamma);
        if (i > 0)
            tri += u[i - 1] * (co_[i - 1].beta + t * co_[i - 1].alpha);
        if (i + 1 < dim_)
            tri += u[i + 1] * (co_[i + 1].phi + t * co_[i + 1].eps);
        out[i] = diag * u[i] + tri / sq;
    }
    u.swap(out);
}

void TridiagOperator::apply_D_col(std::vector<double>& u) const {
    std::vector<double> out(dim_, 0.0);
    double inv = 1.0 / (1.0 - q_);
    double sq = std::sqrt(1.0 - q_);
    for (int i = 0; i < dim_; ++i) {
        double tri = u[i] * co_[i].gamma;
        if (i > 0)
            tri += u[i - 1] * co_[i - 1].alpha;
        if (i + 1 < dim_)
            tri += u[i + 1] * co_[i + 1].eps;
        out[i] = inv * u[i] + tri / sq;
    }
    u.swap(out);
}

double TridiagOperator::renormalize(std::vector<double>& v) {
    double mx = 0.0;
    for (double x : v)
        mx = std::max(mx, std::abs(x));
    if (mx == 0.0)
        return 0.0;
    for (double& x : v)
        x /= mx;
    return std::log(mx);
}

LogScaled pi_n(const std::vector<double>& ts, const BoundaryParams& bp) {
    int n = static_cast<int>(ts.size());
    TridiagOperator op(n + 2, bp);
    std::vector<double> v(n + 2, 0.0);
    v[0] = 1.0;
    double log_acc = 0.0;
    for (double t : ts) {
        op.apply_EtD_row(v, t);
        log_acc += TridiagOperator::renormalize(v);
    }
    LogScaled r = LogScaled::from(v[0]);
    if (r.sign != 0)
        r.log_abs += log_acc + n * std::log(1.0 - bp.q.value());
    return r;
}

LogScaled partition(int n, const BoundaryParams& bp) {
    return pi_n(std::vector<double>(n, 1.0), bp);
}

double gen_fn(const std::vector<double>& ts, const BoundaryParams& bp) {
    int n = static_cast<int>(ts.size());
    return pi_n(ts, bp).ratio(partition(n, bp));
}

namespace {

struct ScaledVec {
    std::vector<double> v;
    double log_scale = 0.0;
};

// prefix[k] = <W| G^k, k = 0..n (normalized, log carried separately)
std::vector<ScaledVec> prefix_rows(int n, const TridiagOperator& op) {
    std::vector<ScaledVec> out(n + 1);
    out[0].v.assign(op.dim(), 0.0);
    out[0].v[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        out[k] = out[k - 1];
        op.apply_EtD_row(out[k].v, 1.0);
        out[k].log_scale += TridiagOperator::renormalize(out[k].v);
    }
    return out;
}

std::vector<ScaledVec> suffix_cols(int n, const TridiagOperator& op) {
    std::vector<ScaledVec> out(n + 1);
    out[0].v.assign(op.dim(), 0.0);
    out[0].v[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        out[k] = out[k - 1];
        op.apply_EtD_col(out[k].v, 1.0);
        out[k].log_scale += TridiagOperator::renormalize(out[k].v);
    }
    return out;
}

LogScaled dot(const ScaledVec& a, const ScaledVec& b) {
    double s = 0.0;
    size_t m = std::min(a.v.size(), b.v.size());
    for (size_t i = 0; i < m; ++i)
        s += a.v[i] * b.v[i];
    LogScaled r = LogScaled::from(s);
    if (r.sign != 0)
        r.log_abs += a.log_scale + b.log_scale;
    return r;
}

} // namespace

std::vector<double> one_point_all(int n, const BoundaryParams& bp) {
    TridiagOperator op(n + 3, bp);
    auto pre = prefix_rows(n, op);
    auto suf = suffix_cols(n, op);
    LogScaled zn = dot(pre[n], suf[0]);
    std::vector<double> out(n);
    for (int i = 1; i <= n; ++i) {
        ScaledVec w = pre[i - 1];
        op.apply_D_row(w.v);
        w.log_scale += TridiagOperator::renormalize(w.v);
        out[i - 1] = dot(w, suf[n - i]).ratio(zn);
    }
    return out;
}

double one_point(int n, int i, const BoundaryParams& bp) { return one_point_all(n, bp)[i - 1]; }

std::vector<std::vector<double>> two_point_all(int n, const BoundaryParams& bp) {
    TridiagOperator op(n + 4, bp);
    auto pre = prefix_rows(n, op);
    auto suf = suffix_cols(n, op);
    LogScaled zn = dot(pre[n], suf[0]);
    // Du[k] = D G^k |V>
    std::vector<ScaledVec> du(n);
    for (int k = 0; k < n; ++k) {
        du[k] = suf[k];
        op.apply_D_col(du[k].v);
        du[k].log_scale += TridiagOperator::renormalize(du[k].v);
    }
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (int i = 1; i < n; ++i) {
        ScaledVec w = pre[i - 1];
        op.apply_D_row(w.v);
        w.log_scale += TridiagOperator::renormalize(w.v);
        // sweep w through G, reading off <W| G^{i-1} D G^{j-i-1} D G^{n-j} |V>
        for (int j = i + 1; j <= n; ++j) {
            out[i - 1][j - 1] = dot(w, du[n - j]).ratio(zn);
            if (j < n) {
                op.apply_EtD_row(w.v, 1.0);
                w.log_scale += TridiagOperator::renormalize(w.v);
            }
        }
    }
    return out;
}

double two_point(int n, int i, int j, const BoundaryParams& bp) {
    TridiagOperator op(n + 4, bp);
    auto pre = prefix_rows(n, op);
    auto suf = suffix_cols(n, op);
    LogScaled zn = dot(pre[n], suf[0]);
    ScaledVec w = pre[i - 1];
    op.apply_D_row(w.v);
    w.log_scale += TridiagOperator::renormalize(w.v);
    for (int k = 0; k < j - i - 1; ++k) {
        op.apply_EtD_row(w.v, 1.0);
        w.log_scale += TridiagOperator::renormalize(w.v);
    }
    ScaledVec tail = suf[n - j];
    op.apply_D_col(tail.v);
    tail.log_scale += TridiagOperator::renormalize(tail.v);
    return dot(w, tail).ratio(zn);
}

double height_variance(int n, double x, const BoundaryParams& bp) {
    int k = static_cast<int>(std::floor(n * x));
    if (k <= 0)
        return 0.0;
    auto one = one_point_all(n, bp);
    auto two = two_point_all(n, bp);
    double mean = 0.0, second = 0.0;
    for (int i = 1; i <= k; ++i) {
        mean += one[i - 1];
        second += one[i - 1]; // E[tau_i^2] = E[tau_i]
        for (int j = i + 1; j <= k; ++j)
            second += 2.0 * two[i - 1][j - 1];
    }
    return second - mean * mean;
}

} // namespace asep
