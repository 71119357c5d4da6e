#include "glv/model.hpp"

namespace glv {

ReducedSystem reduce(const GlvSystem& sys) {
    ReducedSystem red;
    red.a1 = sys.alpha1 - sys.alpha2;
    red.b1 = sys.beta1 - sys.beta2;
    red.a3 = sys.alpha3 - sys.alpha2;
    red.b3 = sys.beta3 - sys.beta2;
    red.k1 = sys.k1;
    red.k2 = sys.k2;
    red.k3 = sys.k3;
    red.k4 = sys.k4;
    red.det_c = red.a1 * red.b3 - red.b1 * red.a3;
    return red;
}

DancsoForm to_dancso(const GlvSystem& sys) {
    DancsoForm d;
    d.p_hat = sys.alpha1 - sys.alpha3;
    d.q_hat = sys.beta3 - sys.beta1;
    d.p = sys.alpha2 - sys.alpha3;
    d.q = sys.beta2 - sys.beta1;
    d.k1 = sys.k1;
    d.k2 = sys.k2;
    d.k3 = sys.k3;
    d.k4 = sys.k4;
    return d;
}

std::array<double, 2> eval_field(const GlvSystem& sys, double x, double y) {
    const double m1 = pow_xy(x, y, sys.alpha1, sys.beta1);
    const double m2 = pow_xy(x, y, sys.alpha2, sys.beta2);
    const double m3 = pow_xy(x, y, sys.alpha3, sys.beta3);
    return {sys.k1 * m1 - sys.k2 * m2, sys.k3 * m2 - sys.k4 * m3};
}

std::array<double, 2> eval_field(const ReducedSystem& sys, double x, double y) {
    const double m1 = pow_xy(x, y, sys.a1, sys.b1);
    const double m3 = pow_xy(x, y, sys.a3, sys.b3);
    return {sys.k1 * m1 - sys.k2, sys.k3 - sys.k4 * m3};
}

ReducedSystem make_reduced(double a1, double b1, double a3, double b3,
                           double k1, double k2, double k3, double k4) {
    ReducedSystem red;
    red.a1 = a1;
    red.b1 = b1;
    red.a3 = a3;
    red.b3 = b3;
    red.k1 = k1;
    red.k2 = k2;
    red.k3 = k3;
    red.k4 = k4;
    red.det_c = a1 * b3 - b1 * a3;
    return red;
}

GlvSystem alpha_beta_system(double alpha, double beta,
                            double k1, double k2, double k3, double k4) {
    GlvSystem sys;
    sys.alpha1 = alpha;
    sys.beta1 = 0.0;
    sys.alpha2 = 1.0;
    sys.beta2 = beta;
    sys.alpha3 = 0.0;
    sys.beta3 = 1.0;
    sys.k1 = k1;
    sys.k2 = k2;
    sys.k3 = k3;
    sys.k4 = k4;
    return sys;
}

} // namespace glv
