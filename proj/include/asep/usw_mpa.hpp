#pragma once

#include "asep/asepmap.hpp"

#include <cmath>
#include <vector>

namespace asep {

struct SingularABCD : Error {
    using Error::Error;
};

struct USWCoeffs {
    double alpha, beta, gamma, delta, eps, phi;
};

// Level-m coefficients of the tridiagonal representation. All six are written
// in forms with every 1/A cancelled algebraically, so A = 0 works directly.
USWCoeffs usw_coeffs(int m, const BoundaryParams& bp);

// (sign, log|value|) scalar; products like Z_n ~ ((1+A)^2/A)^n overflow a
// double well before n = 200.
struct LogScaled {
    int sign = 0;
    double log_abs = 0.0;

    static LogScaled from(double v) {
        if (v == 0.0)
            return {0, 0.0};
        return {v > 0 ? 1 : -1, std::log(std::abs(v))};
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    LogScaled operator*(const LogScaled& o) const {
        if (sign == 0 || o.sign == 0)
            return {0, 0.0};
        return {sign * o.sign, log_abs + o.log_abs};
    }
    // this / o as a plain double
    double ratio(const LogScaled& o) const {
        if (sign == 0)
            return 0.0;
        return sign * o.sign * std::exp(log_abs - o.log_abs);
    }
};

// Truncated E/D pair with the sweep primitives. Truncation to dim rows is
// exact for products of up to dim-2 factors applied to <W| = (1,0,...).
class TridiagOperator {
  public:
    TridiagOperator(int dim, const BoundaryParams& bp);

    int dim() const { return dim_; }
    const USWCoeffs& level(int m) const { return co_[m]; }
    double qv() const { return q_; }

    // v <- v (E + t D), row vector sweep
    void apply_EtD_row(std::vector<double>& v, double t) const;
    // v <- v D
    void apply_D_row(std::vector<double>& v) const;
    // u <- (E + t D) u, column vector sweep
    void apply_EtD_col(std::vector<double>& u, double t) const;
    // u <- D u
    void apply_D_col(std::vector<double>& u) const;

    // divides by the max-abs entry and returns its log
    static double renormalize(std::vector<double>& v);

  private:
    int dim_;
    double q_;
    std::vector<USWCoeffs> co_;
};

// Pi_n(t_1,...,t_n) = (1-q)^n <W| prod (E + t_i D) |V>
LogScaled pi_n(const std::vector<double>& ts, const BoundaryParams& bp);

// Z_n = Pi_n(1,...,1)
LogScaled partition(int n, const BoundaryParams& bp);

// Pi_n(ts) / Z_n
double gen_fn(const std::vector<double>& ts, const BoundaryParams& bp);

// E[tau_i], sites 1-based
double one_point(int n, int i, const BoundaryParams& bp);
std::vector<double> one_point_all(int n, const BoundaryParams& bp);

// E[tau_i tau_j], i < j
double two_point(int n, int i, int j, const BoundaryParams& bp);
// full upper-triangular table, entry (i-1, j-1)
std::vector<std::vector<double>> two_point_all(int n, const BoundaryParams& bp);

// Var(sum_{i <= floor(n x)} tau_i) from the correlation sweeps
double height_variance(int n, double x, const BoundaryParams& bp);

} // namespace asep
