#pragma once

#include "asep/awpoly.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace asep {

struct OutsideOmega : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};

struct RegionReport {
    bool in_omega = true;
    bool in_omega_tilde = true;
    std::vector<std::string> violations;
};

struct Atom {
    double position;
    double mass;
    char generator; // 'a', 'b', 'c' or 'd'
    int level;      // j in position = (e q^j + (e q^j)^{-1})/2
};

// Mixed measure: signed atoms outside (-1,1) plus a continuous density on
// (-1,1) sampled on a fixed quadrature grid. Immutable after construction.
struct SignedMeasure {
    AWParams params;
    std::vector<Atom> atoms;      // sorted by position descending
    std::vector<double> node_x;   // ascending in (-1,1)
    std::vector<double> node_w;   // quadrature weights (sin-theta substitution)
    std::vector<double> node_f;   // cached density values
    double total_mass = 0.0;
    double total_variation = 0.0;
};

RegionReport region_check(const AWParams& p, double tol_grid = kTolGrid);

std::vector<Atom> atoms(const AWParams& p, TruncationSpec trunc = {}, double tol_grid = kTolGrid);

double density_at(double x, const AWParams& p, TruncationSpec trunc = {},
                  double tol_grid = kTolGrid);

SignedMeasure measure_build(const AWParams& p, int n_nodes = 200, TruncationSpec trunc = {},
                            double tol_grid = kTolGrid);

// Atom terms first (position descending), then nodes ascending, compensated
// summation throughout — fixed order so results are reproducible.
double integrate(const SignedMeasure& m, const std::function<double(double)>& f);

Eigen::MatrixXd orthogonality_matrix(const AWParams& p, int M, int n_nodes = 200,
                                     TruncationSpec trunc = {});

// Closed form for the diagonal of the orthogonality matrix.
double orthogonality_diagonal(const AWParams& p, int m);

double total_variation(const SignedMeasure& m);

} // namespace asep
