#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asep/qcore.hpp"

namespace asep {

class SingularCase : public Error {
public:
    using Error::Error;
};

class InversionFailure : public Error {
public:
    using Error::Error;
};

inline constexpr double kTolGrid = 1e-9;

/// Open-ASEP jump rates: alpha/gamma act at site 1, delta/beta at site n.
struct ASEPRates {
    double alpha, beta, gamma, delta;
    QReal q;
};

/// Boundary parameterization (A,B,C,D,q); A,C >= 0 and B,D in (-1,0].
struct BoundaryParams {
    double A, B, C, D;
    QReal q;

    double abcd() const { return A * B * C * D; }
    /// Singular matrix-ansatz cases have ABCD on the q^{-l} grid.
    bool is_singular(double tol_grid = kTolGrid) const {
        return on_inv_qgrid(abcd(), q.value(), tol_grid);
    }
};

enum class Region { Fan, Shock, Boundary };
enum class PhaseKind { MaxCurrent, HighDensity, LowDensity, CoexistenceLine, PhaseBoundary };

struct Phase {
    Region region;
    PhaseKind phase;
};

std::string to_string(Region r);
std::string to_string(PhaseKind p);

/// kappa_{+/-}(x,y) = (1-q-x+y +/- sqrt((1-q-x+y)^2+4xy)) / (2x).
double kappa(double x, double y, QReal q, int sign);

BoundaryParams rates_to_abcd(const ASEPRates& r, double tol_grid = kTolGrid);
ASEPRates abcd_to_rates(const BoundaryParams& bp);

Phase classify_phase(const BoundaryParams& bp, double tol_grid = kTolGrid);

struct AdmissibleTimeReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Checks that t (and optionally the pair s/t) keeps the time-scaled
/// parameter tuple inside the measure-existence interval.
AdmissibleTimeReport admissible_time(const BoundaryParams& bp, double t,
                                     std::optional<double> s_opt = std::nullopt,
                                     double tol_grid = kTolGrid);

/// Swap (A,B) <-> (C,D); callers mapping observables must also reverse
/// site indices and complement occupations.
BoundaryParams particle_hole(const BoundaryParams& bp);

} // namespace asep
