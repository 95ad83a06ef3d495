#pragma once

#include "asep/asepmap.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace asep {

struct SizeCap : Error {
    using Error::Error;
};
struct SolveFailure : Error {
    using Error::Error;
};

// Markov generator over {0,1}^n; state encoding is little-endian in the site
// index: bit (i-1) of the state word is the occupation of site i.
struct Generator {
    int n;
    Eigen::SparseMatrix<double> Q; // row = from-state, row sums 0
};

struct StationaryDistribution {
    int n;
    Eigen::VectorXd probs; // length 2^n, sums to 1
    double residual;       // || probs^T Q ||_inf
};

inline constexpr int kMaxSites = 14;

Generator build_generator(int n, const ASEPRates& r);

StationaryDistribution stationary(int n, const ASEPRates& r);

// E[ prod_i ts[i]^{tau_i} ] under the exact stationary distribution
double oracle_gen_fn(int n, const ASEPRates& r, const std::vector<double>& ts);

// means and covariance of h_n(x_k) = sum_{i <= floor(n x_k)} tau_i
struct HeightMoments {
    std::vector<double> mean;
    Eigen::MatrixXd cov;
};
HeightMoments height_moments(int n, const ASEPRates& r, const std::vector<double>& xs);

} // namespace asep
