#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "glv/model.hpp"

namespace glv {

struct SimConfig {
    double t_max = 100.0;
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    /// Log-metric radius around the equilibrium that counts as "arrived".
    double convergence_radius = 1e-8;
    /// Consecutive accepted steps inside the radius (with no outward trend)
    /// required before declaring convergence.
    int convergence_trend_steps = 10;
    /// ln(1e-6): a coordinate below ~1e-6 counts as an axis approach ...
    double boundary_log_threshold = std::log(1e-6);
    /// ... and above ~1e6 as a blow-up.
    double blowup_log_threshold = std::log(1e6);
    double h_init = 0.0; // 0: choose from the field magnitude
    /// Smallest accepted step before StiffFailure.  0 leaves only an
    /// underflow guard (~1e-250): elapsed time is summed in compensated
    /// form, so the arbitrarily small steps a deep axis-excursion demands
    /// still register, and max_steps bounds genuine stiffness instead.
    double h_min = 0.0;
    long max_steps = 50'000'000;
    bool record_samples = true;
};

enum class Terminal {
    Converged,       // reached the equilibrium's convergence radius, inward
    PeriodicOrbit,   // detected a closed orbit via Poincare returns
    BoundaryApproach,// x or y fell below the boundary threshold
    BlowUp,          // x or y exceeded the blow-up threshold
    HorizonReached,  // integrated to t_max without another event
    StiffFailure,    // step size underflow or step budget exhausted
};

struct Trajectory {
    std::vector<double> t, x, y; // accepted steps (present iff record_samples)
    Terminal terminal = Terminal::HorizonReached;
    double t_end = 0.0, x_end = 0.0, y_end = 0.0;
    long n_steps = 0, n_rejected = 0;

    bool has_equilibrium = false;
    double eq_x = 0.0, eq_y = 0.0;

    int boundary_axis = -1; // 0: x -> 0, 1: y -> 0 (BoundaryApproach)
    int blowup_axis = -1;   // 0: x, 1: y (BlowUp)

    double period = 0.0;      // PeriodicOrbit: last return time
    double period_prev = 0.0; // previous return time (stability gauge)
    double amplitude = 0.0;   // max log-distance from equilibrium, last loop
};

/// Integrates the system from (x0, y0) > 0 with an embedded 5(4) pair in
/// logarithmic coordinates (u, v) = (ln x, ln y), so iterates stay positive
/// by construction.  Terminal events are monitored on every accepted step;
/// Poincare returns are detected on the ray y = y*, x > x*, crossings
/// refined by cubic Hermite interpolation, and a periodic orbit is declared
/// after three same-direction crossings whose consecutive x-intercepts agree
/// to 1e-6 in ln x -- and to 1% of the intercept's own distance from the
/// equilibrium, so a slowly contracting spiral passing through the absolute
/// band is not mistaken for a cycle -- while the state stays outside 10x the
/// convergence radius.
Trajectory integrate(const ReducedSystem& sys, double x0, double y0,
                     const SimConfig& cfg = {});
Trajectory integrate(const GlvSystem& sys, double x0, double y0,
                     const SimConfig& cfg = {});

struct ConservationReport {
    double q0 = 0.0;        // value at the first sample
    double max_drift = 0.0; // max |q - q0| / max(1, |q0|) over the samples
};

/// Drift of a claimed conserved quantity along a recorded trajectory.
ConservationReport conserve_check(const Trajectory& traj,
                                  const std::function<double(double, double)>& q);

} // namespace glv
