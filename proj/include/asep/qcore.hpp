#pragma once

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace asep {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TruncationBudgetExceeded : public Error {
public:
    using Error::Error;
};

class DenominatorPole : public Error {
public:
    using Error::Error;
};

class NonTerminatingDivergent : public Error {
public:
    using Error::Error;
};

/// Modulus of asymmetry, constrained to [0,1).
class QReal {
public:
    QReal() : q_(0.0) {}
    explicit QReal(double q) : q_(q) {
        if (!(q >= 0.0 && q < 1.0))
            throw std::invalid_argument("QReal: q must lie in [0,1), got " + std::to_string(q));
    }
    double value() const { return q_; }

private:
    double q_;
};

/// Absolute tail tolerance and term cap for infinite q-products and series.
struct TruncationSpec {
    double eps = 1e-15;
    int max_terms = 10000;
};

inline constexpr int kInfinity = -1;

/// (z;q)_n = prod_{j=0}^{n-1} (1 - z q^j); n = 0 gives 1.
Complex qpoch_finite(Complex z, QReal q, int n);

/// (z;q)_inf truncated at the first j with |z| q^j < trunc.eps.
Complex qpoch_inf(Complex z, QReal q, TruncationSpec trunc = {});

/// (z_1,...,z_k;q)_n; n = kInfinity means the infinite product.
Complex qpoch_multi(std::span<const Complex> zs, QReal q, int n, TruncationSpec trunc = {});

/// Terminating (or convergent) 4phi3 basic hypergeometric series at argument z.
Complex phi43(const std::array<Complex, 4>& num, const std::array<Complex, 3>& den, QReal q,
              Complex z, TruncationSpec trunc = {});

/// Asserts the imaginary part is negligible and returns the real part.
double realize(Complex v);

/// True when z is within relative tolerance tol of {q^{-l} : l in N_0}.
bool on_inv_qgrid(Complex z, double q, double tol);

/// True when v is within relative tolerance tol of {q^l : l in Z} (v real > 0 required to hit).
bool on_qgrid_z(Complex v, double q, double tol);

} // namespace asep
