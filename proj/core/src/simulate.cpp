#include "glv/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "glv/equilibrium.hpp"
#include "glv/errors.hpp"

namespace glv {
namespace {

// Right-hand side in (u, v) = (ln x, ln y): each component is a difference of
// two exponentials of affine forms, which covers both the reduced and the
// full system and keeps iterates positive by construction.
struct LogField {
    double c1, e1u, e1v, c2, e2u, e2v; // u' = c1 e^(..) - c2 e^(..)
    double c3, e3u, e3v, c4, e4u, e4v; // v' = c3 e^(..) - c4 e^(..)

    void operator()(double u, double v, double& du, double& dv) const {
        du = c1 * std::exp(e1u * u + e1v * v) - c2 * std::exp(e2u * u + e2v * v);
        dv = c3 * std::exp(e3u * u + e3v * v) - c4 * std::exp(e4u * u + e4v * v);
    }
};

LogField log_field(const ReducedSystem& s) {
    return {s.k1, s.a1 - 1.0, s.b1, s.k2, -1.0, 0.0,
            s.k3, 0.0,        -1.0, s.k4, s.a3, s.b3 - 1.0};
}

LogField log_field(const GlvSystem& s) {
    return {s.k1, s.alpha1 - 1.0, s.beta1,       s.k2, s.alpha2 - 1.0, s.beta2,
            s.k3, s.alpha2,       s.beta2 - 1.0, s.k4, s.alpha3,       s.beta3 - 1.0};
}

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

double hermite(double p0, double m0, double p1, double m1, double th) {
    double t2 = th * th, t3 = t2 * th;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + th) * m0 +
           (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
}

struct RayHits { // Poincare section y = y*, x > x*, one crossing direction
    std::vector<double> t, u, amp;
    double acc_max = 0.0; // max log-distance from eq since the last hit
};

Trajectory integrate_impl(const LogField& fld, const EquilibriumResult* eq,
                          double x0, double y0, const SimConfig& cfg) {
    if (!(x0 > 0.0) || !(y0 > 0.0) || !std::isfinite(x0) || !std::isfinite(y0))
        throw ValidationError("integrate: initial state must be positive and finite");
    if (!(cfg.t_max > 0.0) || !(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw ValidationError("integrate: t_max and tolerances must be positive");

    Trajectory out;
    // Time is summed in compensated form (t, tc): deep axis-excursions pass
    // through log-space rates ~e^40 and demand steps far below ulp(t), and
    // the compensation keeps those sub-ulp increments from being lost.
    double u = std::log(x0), v = std::log(y0), t = 0.0, tc = 0.0;
    bool has_eq = eq != nullptr && eq->kind == EquilibriumResult::Kind::Unique;
    double ue = 0.0, ve = 0.0;
    if (has_eq) {
        ue = eq->log_x;
        ve = eq->log_y;
        out.has_equilibrium = true;
        out.eq_x = eq->x;
        out.eq_y = eq->y;
    }
    auto dist = [&](double uu, double vv) { return std::hypot(uu - ue, vv - ve); };

    long stride = 1, since_push = 0;
    auto push_sample = [&](double tt, double uu, double vv) {
        if (!cfg.record_samples) return;
        // Steps inside a fast excursion can be smaller than ulp(t); the
        // states they visit are simultaneous at double resolution, so all
        // but the first are dropped and t stays strictly increasing.
        if (!out.t.empty() && tt <= out.t.back()) return;
        if (++since_push < stride) return;
        since_push = 0;
        out.t.push_back(tt);
        out.x.push_back(std::exp(uu));
        out.y.push_back(std::exp(vv));
        if (out.t.size() >= 4'000'000) { // halve the sampling density
            size_t w = 0;
            for (size_t r = 0; r < out.t.size(); r += 2, ++w) {
                out.t[w] = out.t[r];
                out.x[w] = out.x[r];
                out.y[w] = out.y[r];
            }
            out.t.resize(w);
            out.x.resize(w);
            out.y.resize(w);
            stride *= 2;
        }
    };
    since_push = stride; // always record the initial state
    push_sample(t, u, v);

    auto finish = [&](Terminal term) {
        out.terminal = term;
        out.t_end = t;
        out.x_end = std::exp(u);
        out.y_end = std::exp(v);
        return out;
    };

    // Events may already hold at t = 0.
    if (u < cfg.boundary_log_threshold || v < cfg.boundary_log_threshold) {
        out.boundary_axis = u < cfg.boundary_log_threshold ? 0 : 1;
        return finish(Terminal::BoundaryApproach);
    }
    if (u > cfg.blowup_log_threshold || v > cfg.blowup_log_threshold) {
        out.blowup_axis = u > cfg.blowup_log_threshold ? 0 : 1;
        return finish(Terminal::BlowUp);
    }
    if (has_eq && dist(u, v) < cfg.convergence_radius)
        return finish(Terminal::Converged);

    double k1u, k1v;
    fld(u, v, k1u, k1v);
    double h = cfg.h_init;
    if (h <= 0.0) {
        double fn = std::hypot(k1u, k1v);
        h = std::min({0.01 * (1.0 + std::hypot(u, v)) / (1e-12 + fn), 1.0,
                      cfg.t_max});
    }

    std::vector<double> window; // consecutive in-radius distances
    RayHits hits[2];            // [0]: upward crossings, [1]: downward

    while (true) {
        if (out.n_steps + out.n_rejected >= cfg.max_steps)
            return finish(Terminal::StiffFailure);
        // The step budget, not a time-resolution floor, bounds genuine
        // stiffness: compensated time can absorb any step the error
        // controller asks for, so only outright underflow is fatal.
        double h_floor = cfg.h_min > 0.0 ? cfg.h_min : 1e-250;
        if (h < h_floor) return finish(Terminal::StiffFailure);
        bool last = false;
        if (t + h >= cfg.t_max) {
            h = cfg.t_max - t;
            last = true;
        }

        double k2u, k2v, k3u, k3v, k4u, k4v, k5u, k5v, k6u, k6v, k7u, k7v;
        fld(u + h * A21 * k1u, v + h * A21 * k1v, k2u, k2v);
        fld(u + h * (A31 * k1u + A32 * k2u), v + h * (A31 * k1v + A32 * k2v), k3u, k3v);
        fld(u + h * (A41 * k1u + A42 * k2u + A43 * k3u),
            v + h * (A41 * k1v + A42 * k2v + A43 * k3v), k4u, k4v);
        fld(u + h * (A51 * k1u + A52 * k2u + A53 * k3u + A54 * k4u),
            v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v), k5u, k5v);
        fld(u + h * (A61 * k1u + A62 * k2u + A63 * k3u + A64 * k4u + A65 * k5u),
            v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v),
            k6u, k6v);
        double un = u + h * (B1 * k1u + B3 * k3u + B4 * k4u + B5 * k5u + B6 * k6u);
        double vn = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v);
        fld(un, vn, k7u, k7v);
        double eu = h * (E1 * k1u + E3 * k3u + E4 * k4u + E5 * k5u + E6 * k6u + E7 * k7u);
        double ev = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v);
        double scu = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(u), std::fabs(un));
        double scv = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(v), std::fabs(vn));
        double err = std::sqrt(0.5 * ((eu / scu) * (eu / scu) + (ev / scv) * (ev / scv)));

        if (!std::isfinite(err) || err > 1.0) { // reject
            ++out.n_rejected;
            h *= std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.25;
            continue;
        }

        // Poincare section: v crosses ve with u beyond ue.
        if (has_eq && v != ve && ((v - ve) * (vn - ve) < 0.0 || vn == ve)) {
            double th = 0.5, lo = 0.0, hi = 1.0;
            int s0 = v - ve < 0.0 ? -1 : 1;
            for (int it = 0; it < 60; ++it) {
                th = 0.5 * (lo + hi);
                double hv = hermite(v, h * k1v, vn, h * k7v, th) - ve;
                ((hv < 0.0 ? -1 : 1) == s0 ? lo : hi) = th;
            }
            double uc = hermite(u, h * k1u, un, h * k7u, th);
            if (uc > ue) {
                int dir = s0 < 0 ? 0 : 1; // from below: upward crossing
                auto& ray = hits[dir];
                ray.t.push_back(t + th * h);
                ray.u.push_back(uc);
                ray.amp.push_back(std::max(ray.acc_max, std::fabs(uc - ue)));
                ray.acc_max = 0.0;
                size_t n = ray.u.size();
                // Closure must be small both absolutely and relative to the
                // section amplitude: a slowly contracting spiral shrinks by a
                // fixed fraction per loop, so its consecutive intercepts pass
                // through any absolute band on their way in, while a genuine
                // cycle returns within integrator noise of its own radius.
                double gap = std::fabs(ray.u[n - 1] - ray.u[n - 2]);
                if (n >= 3 && gap < 1e-6 && gap < 1e-2 * std::fabs(uc - ue) &&
                    std::fabs(uc - ue) > 10.0 * cfg.convergence_radius) {
                    t = ray.t[n - 1];
                    u = uc;
                    v = ve;
                    push_sample(t, u, v);
                    out.period = ray.t[n - 1] - ray.t[n - 2];
                    out.period_prev = ray.t[n - 2] - ray.t[n - 3];
                    out.amplitude = ray.amp[n - 1];
                    return finish(Terminal::PeriodicOrbit);
                }
            }
        }

        double hy = h - tc; // compensated t += h
        double ts = t + hy;
        tc = (ts - t) - hy;
        t = ts;
        u = un;
        v = vn;
        k1u = k7u; // FSAL
        k1v = k7v;
        ++out.n_steps;
        push_sample(t, u, v);

        if (u < cfg.boundary_log_threshold || v < cfg.boundary_log_threshold) {
            out.boundary_axis = u < cfg.boundary_log_threshold ? 0 : 1;
            return finish(Terminal::BoundaryApproach);
        }
        if (u > cfg.blowup_log_threshold || v > cfg.blowup_log_threshold) {
            out.blowup_axis = u > cfg.blowup_log_threshold ? 0 : 1;
            return finish(Terminal::BlowUp);
        }
        if (has_eq) {
            double d = dist(u, v);
            hits[0].acc_max = std::max(hits[0].acc_max, d);
            hits[1].acc_max = std::max(hits[1].acc_max, d);
            if (d < cfg.convergence_radius) {
                window.push_back(d);
                if (window.size() > static_cast<size_t>(cfg.convergence_trend_steps))
                    window.erase(window.begin());
                if (window.size() == static_cast<size_t>(cfg.convergence_trend_steps) &&
                    window.back() <= window.front())
                    return finish(Terminal::Converged);
            } else {
                window.clear();
            }
        }
        if (last) return finish(Terminal::HorizonReached);

        double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
    }
}

} // namespace

Trajectory integrate(const ReducedSystem& sys, double x0, double y0,
                     const SimConfig& cfg) {
    auto eq = solve_equilibrium(sys);
    return integrate_impl(log_field(sys), &eq, x0, y0, cfg);
}

Trajectory integrate(const GlvSystem& sys, double x0, double y0,
                     const SimConfig& cfg) {
    auto eq = solve_equilibrium(reduce(sys)); // same interior equilibria
    return integrate_impl(log_field(sys), &eq, x0, y0, cfg);
}

ConservationReport conserve_check(const Trajectory& traj,
                                  const std::function<double(double, double)>& q) {
    ConservationReport rep;
    if (traj.t.empty()) return rep;
    rep.q0 = q(traj.x[0], traj.y[0]);
    double scale = std::max(1.0, std::fabs(rep.q0));
    for (size_t i = 1; i < traj.t.size(); ++i)
        rep.max_drift = std::max(rep.max_drift,
                                 std::fabs(q(traj.x[i], traj.y[i]) - rep.q0) / scale);
    return rep;
}

} // namespace glv
