#include "glv/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace glv {

EquilibriumResult solve_equilibrium(const ReducedSystem& sys) {
    const double r1 = std::log(sys.k2 / sys.k1);
    const double r2 = std::log(sys.k3 / sys.k4);

    EquilibriumResult res;

    if (sys.det_c != 0.0) {
        res.kind = EquilibriumResult::Kind::Unique;
        res.log_x = (sys.b3 * r1 - sys.b1 * r2) / sys.det_c;
        res.log_y = (sys.a1 * r2 - sys.a3 * r1) / sys.det_c;
        res.x = std::exp(res.log_x);
        res.y = std::exp(res.log_y);
        const double norm_inf = std::max(std::abs(sys.a1) + std::abs(sys.b1),
                                         std::abs(sys.a3) + std::abs(sys.b3));
        res.near_singular = std::abs(sys.det_c) < 1e-9 * norm_inf * norm_inf;
        return res;
    }

    // det C == 0: rows of C are parallel.  The log-linear system is solvable
    // iff (r1, r2) lies in the (at most one-dimensional) column space of C.
    const double col1 = std::hypot(sys.a1, sys.a3);
    const double col2 = std::hypot(sys.b1, sys.b3);
    const double rhs_scale = std::max({1.0, std::abs(r1), std::abs(r2)});

    if (col1 == 0.0 && col2 == 0.0) {
        // C is the zero matrix: every positive point is an equilibrium iff
        // both rate ratios are 1.
        if (std::abs(r1) <= 1e-10 * rhs_scale && std::abs(r2) <= 1e-10 * rhs_scale) {
            res.kind = EquilibriumResult::Kind::InfiniteSet;
            res.x = res.y = 1.0;
            res.log_x = res.log_y = 0.0;
            res.kernel_u = 1.0;
            res.kernel_v = 0.0; // two-dimensional set; one direction reported
        } else {
            res.kind = EquilibriumResult::Kind::Empty;
        }
        return res;
    }

    // Project (r1, r2) onto the dominant column; the leftover is the distance
    // from the right-hand side to the image of C.
    double cu, cv;
    if (col1 >= col2) {
        cu = sys.a1;
        cv = sys.a3;
    } else {
        cu = sys.b1;
        cv = sys.b3;
    }
    const double t = (cu * r1 + cv * r2) / (cu * cu + cv * cv);
    const double res_u = r1 - t * cu;
    const double res_v = r2 - t * cv;
    if (std::hypot(res_u, res_v) > 1e-10 * rhs_scale) {
        res.kind = EquilibriumResult::Kind::Empty;
        return res;
    }

    res.kind = EquilibriumResult::Kind::InfiniteSet;
    // Particular solution from the dominant row, kernel from the same row.
    const double row1 = std::abs(sys.a1) + std::abs(sys.b1);
    const double row3 = std::abs(sys.a3) + std::abs(sys.b3);
    double ra, rb, rr;
    if (row1 >= row3) {
        ra = sys.a1;
        rb = sys.b1;
        rr = r1;
    } else {
        ra = sys.a3;
        rb = sys.b3;
        rr = r2;
    }
    const double s = rr / (ra * ra + rb * rb);
    res.log_x = s * ra;
    res.log_y = s * rb;
    res.x = std::exp(res.log_x);
    res.y = std::exp(res.log_y);
    const double kn = std::hypot(rb, ra);
    res.kernel_u = -rb / kn;
    res.kernel_v = ra / kn;
    return res;
}

double equilibrium_residual(const ReducedSystem& sys, double x, double y) {
    const double u = std::log(x), v = std::log(y);
    const double m1 = std::exp(sys.a1 * u + sys.b1 * v);
    const double m3 = std::exp(sys.a3 * u + sys.b3 * v);
    const double rx = std::abs(sys.k1 * m1 - sys.k2) / sys.k2;
    const double ry = std::abs(sys.k3 - sys.k4 * m3) / sys.k3;
    return std::max(rx, ry);
}

} // namespace glv
