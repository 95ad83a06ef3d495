#pragma once

#include "asep/usw_mpa.hpp"

#include <utility>
#include <vector>

namespace asep {

struct WrongPhase : Error {
    using Error::Error;
};
struct GridHit : Error {
    using Error::Error;
};
struct InvalidGrid : Error {
    using Error::Error;
};

// Evaluation grid 0 < x_1 < ... < x_d = 1 with positive weights c_k; the tail
// sums s_k = c_k + ... + c_d drive the Laplace arguments. The s_k != 2 s_{k+1}
// requirement comes with the total-variation bound behind the limits.
struct LaplaceGrid {
    std::vector<double> xs;
    std::vector<double> cs;

    std::vector<double> tail_sums() const;
    void validate() const; // throws InvalidGrid
};

// leading constant of Z_n in the high-density phase
double frak_p0(const BoundaryParams& bp);

// leading constant of Z_n / n on the coexistence line
double frak_c0(const BoundaryParams& bp);

// Z_n ~ p0 (1+A)^{2n} A^{-n} (HD; LD via the particle-hole swap) or
// Z_n ~ c0 (A-1)/(A+1) n (1+A)^{2n} A^{-n} (coexistence line)
LogScaled zn_prediction(int n, const BoundaryParams& bp);

// limiting density at macroscopic position x in [0,1]
double density_profile_prediction(double x, const BoundaryParams& bp);

// limit of the HD height-fluctuation Laplace transform: Brownian with
// variance rate A/(1+A)^2
double hd_laplace_limit(const LaplaceGrid& g, double A);

// limit of the coexistence-line height Laplace transform (closed form)
double cl_laplace_limit(const LaplaceGrid& g, double A);
// the same limit by 1D quadrature over the uniform mixing variable
double cl_laplace_limit_quad(const LaplaceGrid& g, double A);

// exact finite-n Laplace transforms evaluated through the matrix product
double hd_laplace_empirical(int n, const LaplaceGrid& g, const BoundaryParams& bp);
double cl_laplace_empirical(int n, const LaplaceGrid& g, const BoundaryParams& bp);

// the per-site factors appearing in the dominant-atom expansions
std::pair<double, double> phi_psi(double s, double y, double A);

} // namespace asep
