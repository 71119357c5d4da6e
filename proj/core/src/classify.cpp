#include "glv/classify.hpp"

#include <cmath>

#include "glv/equilibrium.hpp"
#include "glv/errors.hpp"
#include "glv/focal.hpp"
#include "glv/local_stability.hpp"

namespace glv {
namespace {

void note(StabilityVerdict& v, std::string text) { v.notes.push_back(std::move(text)); }

// The three exponent-sign patterns that make the equilibrium globally
// attracting for every positive rate tuple (det C < 0 assumed).
bool global_pattern(const ReducedSystem& s) {
    if (s.a1 < 0.0 && s.b3 > 0.0) return true;
    if (s.a1 < 0.0 && s.b3 == 0.0 && s.a3 < 0.0 && s.b1 <= -1.0) return true;
    if (s.a1 == 0.0 && s.b3 > 0.0 && s.a3 <= -1.0 && s.b1 < 0.0) return true;
    return false;
}

// Semi-stable edges where the basin boundary is an explicit curve.
bool boundary_curve_pattern(const ReducedSystem& s) {
    if (s.a1 < 0.0 && s.b3 == 0.0 && s.a3 < 0.0 && -1.0 < s.b1 && s.b1 < 0.0)
        return true;
    if (s.a1 == 0.0 && s.b3 > 0.0 && s.b1 < 0.0 && -1.0 < s.a3 && s.a3 < 0.0)
        return true;
    return false;
}

// Detects x' = x^alpha - x y^beta, y' = x y^beta - y up to the rescalings
// that global stability survives.  The exponent pattern a3 == -1,
// b3 == 1 + b1 brings the system to X' = A (X^alpha - X Y^beta),
// Y' = X Y^beta - Y after moving the equilibrium to (1,1) and normalizing
// time; the leftover modulus A = k2 y*^beta / k4 must itself be 1 for the
// unit-family certificate to apply.
bool is_alpha_beta(const ReducedSystem& s, const EquilibriumResult& eq,
                   double& alpha, double& beta) {
    if (s.a3 != -1.0 || s.b3 != 1.0 + s.b1) return false;
    alpha = s.a1 + 1.0;
    beta = -s.b1;
    double a_mod = s.k2 * std::exp(beta * eq.log_y) / s.k4;
    return std::fabs(a_mod - 1.0) <= 1e-9;
}

void decide_global_fixed_k(const ReducedSystem& sys, const EquilibriumResult& eq,
                           StabilityVerdict& v) {
    if (v.local == LocalLabel::Unstable) {
        v.global = GlobalLabel::NotGAS;
        note(v, "not globally stable: the equilibrium is not even locally stable");
        return;
    }
    if (v.local == LocalLabel::Center) {
        v.global = GlobalLabel::NotGAS;
        note(v, "not globally stable: the equilibrium is surrounded by closed orbits");
        return;
    }

    if (global_pattern(sys)) {
        v.global = GlobalLabel::GAS;
        v.certificates.push_back(dulac_generic(sys));
        note(v, "globally stable: density x^-p y^-q gives negative divergence "
                "(no cycles) and the boundary repels");
        if (sys.b3 == 0.0 || sys.a1 == 0.0) {
            v.certificates.push_back(lyapunov_derivative_sign(sys));
            note(v, "energy-like function V is monotone along the flow on this edge");
        }
        return;
    }

    double alpha, beta;
    if (is_alpha_beta(sys, eq, alpha, beta) && 1.0 < alpha && alpha <= 1.5 &&
        alpha - 1.0 <= beta && beta <= 2.0 - alpha) {
        v.global = GlobalLabel::GAS;
        v.certificates.push_back(dulac_triangle(alpha, beta));
        note(v, "globally stable: triangle-family density certificate (orbit "
                "rescaling maps the rates to 1)");
        return;
    }

    InvariantPattern pat;
    if (match_invariant_pattern(sys, pat)) {
        try {
            v.certificates.push_back(invariant_set(sys, pat));
            v.global = GlobalLabel::NotGAS;
            note(v, std::string("not globally stable: forward-invariant region ") +
                        to_string(pat) + " never reaches the equilibrium");
            return;
        } catch (const NumericalError&) {
            note(v, "trap-region search exhausted its doubling budget; "
                    "global verdict left undetermined");
        }
    }

    if (boundary_curve_pattern(sys)) {
        v.certificates.push_back(boundary_curve(sys));
        v.global = GlobalLabel::NotGAS;
        note(v, "not globally stable: an explicit watershed orbit bounds the basin");
        return;
    }

    v.global = GlobalLabel::Undetermined;
    note(v, "no global certificate matched this exponent pattern");
}

StabilityVerdict classify_fixed_k(const ReducedSystem& sys) {
    StabilityVerdict v;
    v.scope = RateScope::FixedK;
    if (sys.det_c == 0.0) {
        v.zip = true;
        note(v, "det C == 0: equilibria form a continuum or are absent; "
                "reported without classification");
        return v;
    }

    auto eq = solve_equilibrium(sys);
    auto jac = jacobian(sys, eq.x, eq.y);
    switch (linear_verdict(jac)) {
    case LinearVerdict::AsymptoticallyStable:
        v.local = LocalLabel::AS;
        break;
    case LinearVerdict::Unstable:
        v.local = LocalLabel::Unstable;
        break;
    case LinearVerdict::Inconclusive: {
        auto focal = hopf_verdict(sys);
        switch (focal.criticality) {
        case Criticality::Supercritical:
            v.local = LocalLabel::AS;
            note(v, "linear center, but the first focal value is negative: "
                    "nonlinearly stable focus");
            break;
        case Criticality::Subcritical:
            v.local = LocalLabel::Unstable;
            note(v, "linear center, but the first focal value is positive: "
                    "nonlinearly unstable focus");
            break;
        case Criticality::Degenerate:
            if (sys.a1 == 0.0 && sys.b3 == 0.0) {
                v.local = LocalLabel::Center;
                v.certificates.push_back(first_integral(sys, eq.x, eq.y));
                note(v, "conserved quantity V: every neighbouring orbit is closed");
            } else {
                v.local = LocalLabel::DegenerateHopf;
                note(v, "first focal value vanishes; higher-order analysis "
                        "not attempted");
            }
            break;
        }
        break;
    }
    }

    if (v.local == LocalLabel::DegenerateHopf) {
        v.global = GlobalLabel::Undetermined;
        note(v, "global verdict undetermined at a degenerate Hopf point");
    } else {
        decide_global_fixed_k(sys, eq, v);
    }
    return v;
}

StabilityVerdict classify_all_k(const ReducedSystem& sys, RateScope scope) {
    StabilityVerdict v;
    v.scope = scope;
    if (scope == RateScope::AllKStoichiometric)
        note(v, "cycle-induced rates (n k12, n k23, k23, k31) reach every "
                "positive tuple, so this scope coincides with all-rates");
    if (sys.det_c == 0.0) {
        v.zip = true;
        note(v, "det C == 0 for every rate choice; reported without classification");
        return v;
    }

    if (sys.det_c > 0.0) {
        v.local = LocalLabel::Unstable;
        v.global = GlobalLabel::NotGAS;
        note(v, "det C > 0: the equilibrium is a saddle for every rate choice");
        return v;
    }

    // det C < 0.  tr J has the sign of a1 k2/x* - b3 k3/y*, and the rates
    // sweep that ratio over (0, inf).
    if (sys.a1 == 0.0 && sys.b3 == 0.0) {
        v.local = LocalLabel::Center;
        v.global = GlobalLabel::NotGAS;
        auto eq = solve_equilibrium(sys);
        v.certificates.push_back(first_integral(sys, eq.x, eq.y));
        note(v, "zero trace and a conserved quantity for every rate choice: "
                "a global center");
        return v;
    }
    if (sys.a1 <= 0.0 && sys.b3 >= 0.0) {
        v.local = LocalLabel::AS;
        note(v, "a1 <= 0 <= b3 (not both zero): tr J < 0 for every rate choice");
    } else if (sys.a1 >= 0.0 && sys.b3 <= 0.0) {
        v.local = LocalLabel::Unstable;
        v.global = GlobalLabel::NotGAS;
        note(v, "a1 >= 0 >= b3 (not both zero): tr J > 0 for every rate choice");
        return v;
    } else {
        v.local = LocalLabel::Inconclusive;
        note(v, "a1 and b3 share a sign: the trace changes sign across rate "
                "space, so local stability depends on the rates");
    }

    if (global_pattern(sys)) {
        v.global = GlobalLabel::GAS;
        v.certificates.push_back(dulac_generic(sys));
        note(v, "globally stable for every rate choice: the divergence "
                "certificate's term signs do not involve the rates");
        return v;
    }

    InvariantPattern pat;
    if (match_invariant_pattern(sys, pat)) {
        v.global = GlobalLabel::NotGAS;
        note(v, std::string("not globally stable for any rate choice: pattern ") +
                    to_string(pat) +
                    " admits a trap region for every rate tuple "
                    "(instance certificate built for the given rates)");
        try {
            v.certificates.push_back(invariant_set(sys, pat));
        } catch (const NumericalError&) {
            note(v, "instance trap-region search failed; the pattern argument "
                    "stands, the numeric witness is missing");
        }
        return v;
    }
    if (boundary_curve_pattern(sys)) {
        v.global = GlobalLabel::NotGAS;
        v.certificates.push_back(boundary_curve(sys));
        note(v, "not globally stable for any rate choice: the watershed curve "
                "exists for every rate tuple");
        return v;
    }

    v.global = GlobalLabel::Undetermined;
    note(v, "global behaviour varies with the rates or is outside the "
            "certificate families");
    return v;
}

} // namespace

StabilityVerdict classify_system(const ReducedSystem& sys, RateScope scope) {
    if (scope == RateScope::FixedK) return classify_fixed_k(sys);
    return classify_all_k(sys, scope);
}

// ───────────────────────── (alpha, beta) family ─────────────────────────────

AlphaBetaPoint classify_alpha_beta(double alpha, double beta) {
    AlphaBetaPoint p;
    p.alpha = alpha;
    p.beta = beta;
    p.det_j = alpha * beta - alpha + 1.0;
    p.trace_j = alpha + beta - 2.0;
    p.d1 = beta * (1.0 - alpha) * (1.0 - beta);

    // Grid parameters arrive rounded to binary doubles, so boundary tests get
    // a tolerance at rounding scale instead of exact comparisons.
    double tol = 1e-13 * (1.0 + std::fabs(alpha) + std::fabs(beta));
    if (std::fabs(p.det_j) <= tol) {
        p.region = RegionLabel::Zip;
        return p;
    }
    if (std::fabs(alpha - 1.0) <= tol && std::fabs(beta - 1.0) <= tol) {
        p.local = LocalLabel::Center;
        p.global = GlobalLabel::NotGAS;
        p.region = RegionLabel::Center;
        return p;
    }
    if (p.det_j < 0.0 || p.trace_j > tol) {
        p.local = LocalLabel::Unstable;
        p.global = GlobalLabel::NotGAS;
        p.region = RegionLabel::Unstable;
        return p;
    }
    if (std::fabs(p.trace_j) <= tol) { // Hopf line: sign of (alpha-1)^2 (alpha-2)
        double d1_line = (alpha - 1.0) * (alpha - 1.0) * (alpha - 2.0);
        if (d1_line > 0.0) {
            p.local = LocalLabel::Unstable;
            p.global = GlobalLabel::NotGAS;
            p.region = RegionLabel::Unstable;
            return p;
        }
        p.local = LocalLabel::AS; // supercritical: nonlinearly stable focus
    } else {
        p.local = LocalLabel::AS;
    }

    bool gas_square = alpha <= 1.0 + tol && beta <= 1.0 + tol;
    bool gas_triangle = alpha >= 1.0 - tol && alpha <= 1.5 + tol &&
                        beta >= alpha - 1.0 - tol && beta <= 2.0 - alpha + tol;
    if (gas_square || gas_triangle) {
        p.global = GlobalLabel::GAS;
        p.region = RegionLabel::GAS;
    } else {
        p.global = GlobalLabel::NotGAS; // the stability region is exact (iff)
        p.region = RegionLabel::ASNotGAS;
    }
    return p;
}

std::vector<AlphaBetaPoint> region_diagram(double alpha_min, double alpha_max,
                                           double beta_min, double beta_max,
                                           double step) {
    if (!(step > 0.0) || !(alpha_min <= alpha_max) || !(beta_min <= beta_max))
        throw ValidationError("region_diagram: empty range or nonpositive step");

    // Emit exact ratios (n0 + i)/den when the step is a unit fraction and the
    // bounds are multiples of it; half-integer parameters then land exactly
    // on the stability boundaries.
    auto ticks = [&](double lo, double hi) {
        std::vector<double> out;
        long n = std::lround((hi - lo) / step);
        if (std::fabs((hi - lo) / step - static_cast<double>(n)) > 1e-9)
            n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
        double den = 1.0 / step;
        bool exact = std::fabs(den - std::round(den)) <= 1e-9 &&
                     std::fabs(lo * den - std::round(lo * den)) <= 1e-9;
        for (long i = 0; i <= n; ++i) {
            if (exact)
                out.push_back((std::round(lo * den) + static_cast<double>(i)) /
                              std::round(den));
            else
                out.push_back(lo + static_cast<double>(i) * step);
        }
        return out;
    };

    std::vector<AlphaBetaPoint> out;
    auto alphas = ticks(alpha_min, alpha_max);
    auto betas = ticks(beta_min, beta_max);
    out.reserve(alphas.size() * betas.size());
    for (double a : alphas)
        for (double b : betas) out.push_back(classify_alpha_beta(a, b));
    return out;
}

// ───────────────────────────── label strings ────────────────────────────────

const char* to_string(LocalLabel label) {
    switch (label) {
    case LocalLabel::AS: return "AS";
    case LocalLabel::Unstable: return "unstable";
    case LocalLabel::Center: return "center";
    case LocalLabel::DegenerateHopf: return "degenerate-Hopf";
    default: return "inconclusive";
    }
}

const char* to_string(GlobalLabel label) {
    switch (label) {
    case GlobalLabel::GAS: return "GAS";
    case GlobalLabel::NotGAS: return "not-GAS";
    default: return "undetermined";
    }
}

const char* to_string(RegionLabel label) {
    switch (label) {
    case RegionLabel::GAS: return "GAS";
    case RegionLabel::ASNotGAS: return "AS-not-GAS";
    case RegionLabel::Unstable: return "unstable";
    case RegionLabel::Center: return "center";
    case RegionLabel::Zip: return "zip";
    default: return "undetermined";
    }
}

const char* to_string(RateScope scope) {
    switch (scope) {
    case RateScope::FixedK: return "fixed-k";
    case RateScope::AllK: return "all-k";
    default: return "all-k-stoichiometric";
    }
}

const char* to_string(InvariantPattern pattern) {
    switch (pattern) {
    case InvariantPattern::L1: return "L1";
    case InvariantPattern::L2: return "L2";
    case InvariantPattern::L3: return "L3";
    default: return "L4";
    }
}

const char* to_string(BoundaryCase kind) {
    switch (kind) {
    case BoundaryCase::B3ZeroGeneric: return "b3-zero";
    case BoundaryCase::B3ZeroLog: return "b3-zero-log";
    case BoundaryCase::A1ZeroGeneric: return "a1-zero";
    case BoundaryCase::A1ZeroLog1: return "a1-zero-log1";
    default: return "a1-zero-log2";
    }
}

} // namespace glv
