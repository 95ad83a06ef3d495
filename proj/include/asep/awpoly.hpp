#pragma once

#include "asep/qcore.hpp"
#include "asep/asepmap.hpp"

#include <vector>

namespace asep {

struct RecurrenceDenominatorZero : Error {
    using Error::Error;
};
struct NormalizerZero : Error {
    using Error::Error;
};
struct RequiresNonzeroA : Error {
    using Error::Error;
};

// Parameter quadruple (a,b,c,d) of the w_m family. c and d may form a complex
// conjugate pair; a and b are real in every use of this library.
struct AWParams {
    Complex a, b, c, d;
    QReal q;

    Complex abcd() const { return a * b * c * d; }
};

struct RecurrenceCoeffs {
    Complex A, B, C; // in  A_m w_{m+1} + B_m w_m + C_m w_{m-1} = 2x w_m
};

RecurrenceCoeffs recurrence_coeffs(int m, const AWParams& p);

// w_0..w_m at x, by forward recurrence.
std::vector<Complex> aw_eval_all(int m, Complex x, const AWParams& p);
Complex aw_eval(int m, Complex x, const AWParams& p);

// Normalized family  \bar w_m = w_m / (ab;q)_m.
Complex aw_norm_eval(int m, Complex x, const AWParams& p);

// Time-scaled polynomial  p_m(x;t) = t^{m/2} \bar w_m(x; A sqrt(t), B sqrt(t),
// C/sqrt(t), D/sqrt(t)).
double proj_poly_eval(int m, double x, double t, const BoundaryParams& bp);

// Expansion of \bar w_m(.; a,b,ct,dt) in the family \bar w_r(.; a,b,c,d):
// returns coefficients r = 0..m. Requires a != 0.
std::vector<Complex> connection_coeffs(int m, const AWParams& p, Complex ct, Complex dt,
                                       TruncationSpec trunc = {});

// Same coefficients obtained by sampling both families at m+1 points and
// solving the resulting linear system; used as a cross-check of the
// hypergeometric route.
std::vector<Complex> connection_coeffs_solve(int m, const AWParams& p, Complex ct, Complex dt);

} // namespace asep
