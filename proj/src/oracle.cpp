#include "asep/oracle.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <vector>

namespace asep {

Generator build_generator(int n, const ASEPRates& r) {
    if (n < 1 || n > kMaxSites)
        throw SizeCap("build_generator: n out of [1," + std::to_string(kMaxSites) + "]");
    int N = 1 << n;
    double q = r.q.value();
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> diag(N, 0.0);
    auto add = [&](int from, int to, double rate) {
        if (rate == 0.0)
            return;
        trip.push_back({from, to, rate});
        diag[from] -= rate;
    };
    for (int s = 0; s < N; ++s) {
        bool first = s & 1;
        bool last = (s >> (n - 1)) & 1;
        // left boundary: enter alpha, exit gamma
        if (!first)
            add(s, s | 1, r.alpha);
        else
            add(s, s & ~1, r.gamma);
        // right boundary: exit beta, enter delta
        if (last)
            add(s, s & ~(1 << (n - 1)), r.beta);
        else
            add(s, s | (1 << (n - 1)), r.delta);
        // bulk: right hop rate 1, left hop rate q
        for (int i = 0; i + 1 < n; ++i) {
            bool occ = (s >> i) & 1;
            bool nxt = (s >> (i + 1)) & 1;
            int swapped = s ^ (1 << i) ^ (1 << (i + 1));
            if (occ && !nxt)
                add(s, swapped, 1.0);
            else if (!occ && nxt)
                add(s, swapped, q);
        }
    }
    for (int s = 0; s < N; ++s)
        trip.push_back({s, s, diag[s]});
    Generator g{n, Eigen::SparseMatrix<double>(N, N)};
    g.Q.setFromTriplets(trip.begin(), trip.end());
    return g;
}

StationaryDistribution stationary(int n, const ASEPRates& r) {
    Generator g = build_generator(n, r);
    int N = 1 << n;
    // Solve mu Q = 0, sum mu = 1: transpose to Q^T mu^T = 0 and replace the
    // last balance row with the normalization row.
    Eigen::VectorXd mu;
    if (N <= 1024) {
        Eigen::MatrixXd M = Eigen::MatrixXd(g.Q).transpose();
        M.row(N - 1).setOnes();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
        rhs(N - 1) = 1.0;
        mu = M.partialPivLu().solve(rhs);
    } else {
        Eigen::SparseMatrix<double> M = Eigen::SparseMatrix<double>(g.Q.transpose());
        for (int c = 0; c < N; ++c)
            M.coeffRef(N - 1, c) = 1.0;
        M.makeCompressed();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
        rhs(N - 1) = 1.0;
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(M);
        if (lu.info() != Eigen::Success)
            throw SolveFailure("stationary: sparse factorization failed");
        mu = lu.solve(rhs);
    }
    double residual = (Eigen::RowVectorXd(mu.transpose()) * g.Q).cwiseAbs().maxCoeff();
    if (residual > 1e-10)
        throw SolveFailure("stationary: residual " + std::to_string(residual));
    return {n, mu, residual};
}

double oracle_gen_fn(int n, const ASEPRates& r, const std::vector<double>& ts) {
    StationaryDistribution d = stationary(n, r);
    int N = 1 << n;
    double out = 0.0;
    for (int s = 0; s < N; ++s) {
        double w = d.probs(s);
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1)
                w *= ts[i];
        out += w;
    }
    return out;
}

HeightMoments height_moments(int n, const ASEPRates& r, const std::vector<double>& xs) {
    StationaryDistribution d = stationary(n, r);
    int N = 1 << n;
    int k = static_cast<int>(xs.size());
    std::vector<int> cut(k);
    for (int j = 0; j < k; ++j)
        cut[j] = static_cast<int>(std::floor(n * xs[j]));
    HeightMoments hm;
    hm.mean.assign(k, 0.0);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(k, k);
    for (int s = 0; s < N; ++s) {
        std::vector<double> h(k, 0.0);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < cut[j]; ++i)
                h[j] += (s >> i) & 1;
        double w = d.probs(s);
        for (int a = 0; a < k; ++a) {
            hm.mean[a] += w * h[a];
            for (int b = 0; b < k; ++b)
                second(a, b) += w * h[a] * h[b];
        }
    }
    hm.cov = second;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            hm.cov(a, b) -= hm.mean[a] * hm.mean[b];
    return hm;
}

} // namespace asep
