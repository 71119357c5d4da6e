#pragma once

#include <array>
#include <cmath>

namespace glv {

/// Planar power-law system on the open positive quadrant:
///
///   x' = k1 x^alpha1 y^beta1 - k2 x^alpha2 y^beta2
///   y' = k3 x^alpha2 y^beta2 - k4 x^alpha3 y^beta3
///
/// The middle monomial x^alpha2 y^beta2 is shared between the loss term of x
/// and the gain term of y (mass flows through it), which is what makes the
/// whole family reducible by a single orbital rescaling.
struct GlvSystem {
    double alpha1 = 0.0, beta1 = 0.0;
    double alpha2 = 0.0, beta2 = 0.0;
    double alpha3 = 0.0, beta3 = 0.0;
    double k1 = 1.0, k2 = 1.0, k3 = 1.0, k4 = 1.0;
};

/// Reduced form obtained by dividing the field by x^alpha2 y^beta2 (a positive
/// factor on the open quadrant, so orbits are unchanged, only speed):
///
///   x' = k1 x^a1 y^b1 - k2
///   y' = k3 - k4 x^a3 y^b3
///
///`det_c` caches a1*b3 - b1*a3, the determinant of the exponent matrix
/// C = ((a1, b1), (a3, b3)); its sign controls the entire phase portrait and
/// is always compared exactly, never against a tolerance.
struct ReducedSystem {
    double a1 = 0.0, b1 = 0.0;
    double a3 = 0.0, b3 = 0.0;
    double k1 = 1.0, k2 = 1.0, k3 = 1.0, k4 = 1.0;
    double det_c = 0.0;
};

/// Alternative reduction that divides by x^alpha3 y^beta1 instead:
///
///   x' = k1 x^p_hat - k2 x^p y^q
///   y' = k3 x^p y^q - k4 y^q_hat
struct DancsoForm {
    double p_hat = 0.0, q_hat = 0.0;
    double p = 0.0, q = 0.0;
    double k1 = 1.0, k2 = 1.0, k3 = 1.0, k4 = 1.0;
};

/// x^a y^b for x, y > 0, evaluated as exp(a ln x + b ln y).  Combining both
/// exponents in one exp keeps intermediate magnitudes bounded by the affine
/// form's value, which matters when |a ln x| alone would overflow.
inline double pow_xy(double x, double y, double a, double b) {
    return std::exp(a * std::log(x) + b * std::log(y));
}

/// Same monomial with the state already in log coordinates (u, v) = (ln x, ln y).
inline double pow_uv(double u, double v, double a, double b) {
    return std::exp(a * u + b * v);
}

ReducedSystem reduce(const GlvSystem& sys);
DancsoForm to_dancso(const GlvSystem& sys);

/// Field value (x', y') at a strictly positive state.
std::array<double, 2> eval_field(const GlvSystem& sys, double x, double y);
std::array<double, 2> eval_field(const ReducedSystem& sys, double x, double y);

/// Construct a ReducedSystem directly from reduced exponents and rates.
ReducedSystem make_reduced(double a1, double b1, double a3, double b3,
                           double k1 = 1.0, double k2 = 1.0,
                           double k3 = 1.0, double k4 = 1.0);

/// The two-exponent family x' = x^alpha - x y^beta, y' = x y^beta - y (all
/// rates 1 unless overridden): full exponent tuple (alpha, 0, 1, beta, 0, 1).
GlvSystem alpha_beta_system(double alpha, double beta,
                            double k1 = 1.0, double k2 = 1.0,
                            double k3 = 1.0, double k4 = 1.0);

} // namespace glv
