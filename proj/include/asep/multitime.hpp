#pragma once

#include "asep/awmeasure.hpp"

#include <optional>

namespace asep {

struct InadmissibleTime : Error {
    using Error::Error;
};
struct InadmissiblePair : Error {
    using Error::Error;
};
struct XOutsideSupport : Error {
    using Error::Error;
};

// Support of the time-t marginal: [-1,1] plus the atom positions, with the
// markers that drive the large-n analysis (largest atom from each boundary
// parameter and the largest of everything else).
struct SupportSet {
    std::vector<double> atom_positions;
    bool has_continuum = true;
    std::optional<double> y0_a; // largest atom generated by A*sqrt(t)
    std::optional<double> y0_c; // largest atom generated by C/sqrt(t)
    double y1_star = 1.0;       // max(1, remaining atom positions)
};

// nu(dx; A sqrt(t), B sqrt(t), C/sqrt(t), D/sqrt(t))
SignedMeasure marginal_measure(double t, const BoundaryParams& bp, int n_nodes = 200,
                               TruncationSpec trunc = {});

// nu(dy; A sqrt(t), B sqrt(t), sqrt(s/t)(x + sqrt(x^2-1)), sqrt(s/t)(x - sqrt(x^2-1)));
// the point mass at x when s == t. Zero-mass atoms are dropped so that every
// remaining atom lies in the support of the time-t marginal.
SignedMeasure transition_measure(double s, double t, double x, const BoundaryParams& bp,
                                 int n_nodes = 200, TruncationSpec trunc = {});

SupportSet support_points(double t, const BoundaryParams& bp, TruncationSpec trunc = {});

// integral of prod_i (1 + t_i + 2 sqrt(t_i) x_i) against the multi-time
// measure pi_{t_1..t_n}, by backward induction with the level-(k+1) integrand
// memoized on the shared quadrature grid and the marginal's atom positions.
double pin_integral(const std::vector<double>& ts, const BoundaryParams& bp, int n_nodes = 400,
                    TruncationSpec trunc = {});

// | int p_m(y;t) P_{s,t}(x,dy) - p_m(x;s) |
double projection_check(int m, double s, double t, double x, const BoundaryParams& bp,
                        int n_nodes = 200, TruncationSpec trunc = {});

} // namespace asep
