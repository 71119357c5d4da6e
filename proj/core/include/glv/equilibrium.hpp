#pragma once

#include "glv/model.hpp"

namespace glv {

/// Interior equilibria of the reduced system.  In log coordinates
/// z = (ln x, ln y) the equilibrium conditions are the linear system
///
///   C z = (ln(k2/k1), ln(k3/k4)),   C = ((a1, b1), (a3, b3)),
///
/// so there is a unique positive equilibrium exactly when det C != 0:
///
///   x* = (k2/k1)^(b3/detC) * (k3/k4)^(-b1/detC)
///   y* = (k2/k1)^(-a3/detC) * (k3/k4)^(a1/detC)
///
/// When det C == 0 (compared exactly) the solution set is an affine line in
/// log space if the right-hand side lies in the image of C, and empty
/// otherwise.
struct EquilibriumResult {
    enum class Kind { Unique, InfiniteSet, Empty };
    Kind kind = Kind::Empty;

    /// For Unique: the equilibrium.  For InfiniteSet: one point on the set.
    double x = 0.0, y = 0.0;
    double log_x = 0.0, log_y = 0.0;

    /// For InfiniteSet: direction of the equilibrium line in log coordinates.
    double kernel_u = 0.0, kernel_v = 0.0;

    /// |det C| < 1e-9 * ||C||_inf^2: the closed form is still exact algebra,
    /// but the solution is ill-conditioned in the rates.
    bool near_singular = false;
};

/// All arithmetic is carried out on logarithms, so rate ratios and exponents
/// near the extremes of the admissible range cannot overflow intermediates.
EquilibriumResult solve_equilibrium(const ReducedSystem& sys);

/// max of the two relative field residuals at (x, y):
///   |k1 x^a1 y^b1 - k2| / k2   and   |k3 - k4 x^a3 y^b3| / k3.
double equilibrium_residual(const ReducedSystem& sys, double x, double y);

} // namespace glv
