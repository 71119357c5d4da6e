#include "glv/json_io.hpp"

#include <json.hpp>

#include "glv/errors.hpp"

namespace glv {
namespace {

using json = nlohmann::ordered_json;

json grid_json(const GridReport& rep) {
    return {{"log_half_width", rep.log_half_width},
            {"samples_per_axis", rep.samples_per_axis},
            {"worst_value", rep.worst_value},
            {"worst_u", rep.worst_u},
            {"worst_v", rep.worst_v},
            {"pass", rep.pass}};
}

json reduced_json(const ReducedSystem& sys) {
    return {{"a1", sys.a1}, {"b1", sys.b1}, {"a3", sys.a3}, {"b3", sys.b3},
            {"k1", sys.k1}, {"k2", sys.k2}, {"k3", sys.k3}, {"k4", sys.k4},
            {"det_c", sys.det_c}};
}

json samples_json(const std::vector<BoundarySample>& samples) {
    json arr = json::array();
    for (const auto& s : samples)
        arr.push_back({{"x", s.x}, {"y", s.y}, {"margin", s.margin}});
    return arr;
}

json cert_json(const CertificateRecord& cert) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, DulacCertificate>) {
                json j{{"kind", "dulac"},
                       {"p", c.p},
                       {"q", c.q},
                       {"sign", to_string(c.sign)},
                       {"triangle", c.triangle},
                       {"locus", to_string(c.locus)},
                       {"verification", grid_json(c.verification)}};
                if (c.triangle) j["sup_value"] = c.sup_value;
                return j;
            } else if constexpr (std::is_same_v<T, FirstIntegralV>) {
                return {{"kind", "first-integral"},
                        {"x_star", c.x_star},
                        {"y_star", c.y_star},
                        {"a3", c.a3},
                        {"b1", c.b1},
                        {"k2", c.k2},
                        {"k3", c.k3}};
            } else if constexpr (std::is_same_v<T, LyapunovDerivativeReport>) {
                return {{"kind", "lyapunov-derivative"},
                        {"sign", to_string(c.sign)},
                        {"x_star", c.x_star},
                        {"y_star", c.y_star},
                        {"verification", grid_json(c.verification)}};
            } else if constexpr (std::is_same_v<T, InvariantSetCertificate>) {
                return {{"kind", "invariant-set"},
                        {"pattern", to_string(c.pattern)},
                        {"gamma", c.gamma},
                        {"x0", c.x0},
                        {"doublings_used", c.doublings_used},
                        {"curve_samples", samples_json(c.curve_samples)},
                        {"edge_samples", samples_json(c.edge_samples)}};
            } else {
                static_assert(std::is_same_v<T, BoundaryCurve>);
                return {{"kind", "boundary-curve"},
                        {"case", to_string(c.kind)},
                        {"x_star", c.x_star},
                        {"y_star", c.y_star},
                        {"parameterized_by_x", c.parameterized_by_x()},
                        {"system", reduced_json(c.sys)}};
            }
        },
        cert);
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ValidationError(std::string("missing or non-numeric field: ") + key);
    return j[key].get<double>();
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON");
    return j;
}

} // namespace

std::string to_json(const GlvSystem& sys, int indent) {
    json j{{"alpha1", sys.alpha1}, {"beta1", sys.beta1},
           {"alpha2", sys.alpha2}, {"beta2", sys.beta2},
           {"alpha3", sys.alpha3}, {"beta3", sys.beta3},
           {"k1", sys.k1},         {"k2", sys.k2},
           {"k3", sys.k3},         {"k4", sys.k4}};
    return j.dump(indent);
}

std::string to_json(const ReducedSystem& sys, int indent) {
    return reduced_json(sys).dump(indent);
}

std::string to_json(const DancsoForm& form, int indent) {
    json j{{"p_hat", form.p_hat}, {"q_hat", form.q_hat}, {"p", form.p},
           {"q", form.q},         {"k1", form.k1},       {"k2", form.k2},
           {"k3", form.k3},       {"k4", form.k4}};
    return j.dump(indent);
}

std::string to_json(const EquilibriumResult& eq, int indent) {
    json j{{"kind", to_string(eq.kind)}};
    if (eq.kind != EquilibriumResult::Kind::Empty) {
        j["x"] = eq.x;
        j["y"] = eq.y;
        j["log_x"] = eq.log_x;
        j["log_y"] = eq.log_y;
    }
    if (eq.kind == EquilibriumResult::Kind::InfiniteSet)
        j["kernel"] = json::array({eq.kernel_u, eq.kernel_v});
    j["near_singular"] = eq.near_singular;
    return j.dump(indent);
}

std::string to_json(const JacobianReport& jac, int indent) {
    json j{{"j11", jac.j11},
           {"j12", jac.j12},
           {"j21", jac.j21},
           {"j22", jac.j22},
           {"trace", jac.trace},
           {"det", jac.det},
           {"discriminant", jac.discriminant},
           {"prefactor", jac.prefactor},
           {"x", jac.x},
           {"y", jac.y},
           {"trace_zero_threshold", jac.trace_zero_threshold},
           {"eigen_class", to_string(jac.eigen_class)},
           {"linear_verdict", [&] {
                switch (linear_verdict(jac)) {
                case LinearVerdict::AsymptoticallyStable: return "AS";
                case LinearVerdict::Unstable: return "unstable";
                default: return "inconclusive";
                }
            }()}};
    return j.dump(indent);
}

std::string to_json(const FocalReport& focal, int indent) {
    json j{{"d1", focal.d1},
           {"D1", focal.D1},
           {"K", focal.K},
           {"x_star", focal.x_star},
           {"y_star", focal.y_star},
           {"degenerate_threshold", focal.degenerate_threshold},
           {"criticality", to_string(focal.criticality)}};
    return j.dump(indent);
}

std::string to_json(const StabilityVerdict& verdict, int indent) {
    json certs = json::array();
    for (const auto& c : verdict.certificates) certs.push_back(cert_json(c));
    json j{{"scope", to_string(verdict.scope)},
           {"zip", verdict.zip},
           {"local", to_string(verdict.local)},
           {"global", to_string(verdict.global)},
           {"certificates", certs},
           {"notes", verdict.notes}};
    return j.dump(indent);
}

std::string to_json(const AlphaBetaPoint& point, int indent) {
    json j{{"alpha", point.alpha},
           {"beta", point.beta},
           {"det_j", point.det_j},
           {"trace_j", point.trace_j},
           {"d1", point.d1},
           {"local", to_string(point.local)},
           {"global", to_string(point.global)},
           {"region", to_string(point.region)}};
    return j.dump(indent);
}

std::string to_json(const CertificateRecord& cert, int indent) {
    return cert_json(cert).dump(indent);
}

std::string to_json(const Trajectory& traj, int indent) {
    json j{{"terminal", to_string(traj.terminal)},
           {"t_end", traj.t_end},
           {"x_end", traj.x_end},
           {"y_end", traj.y_end},
           {"n_steps", traj.n_steps},
           {"n_rejected", traj.n_rejected},
           {"samples_recorded", traj.t.size()},
           {"has_equilibrium", traj.has_equilibrium}};
    if (traj.has_equilibrium) {
        j["eq_x"] = traj.eq_x;
        j["eq_y"] = traj.eq_y;
    }
    if (traj.terminal == Terminal::BoundaryApproach)
        j["boundary_axis"] = traj.boundary_axis == 0 ? "x" : "y";
    if (traj.terminal == Terminal::BlowUp)
        j["blowup_axis"] = traj.blowup_axis == 0 ? "x" : "y";
    if (traj.terminal == Terminal::PeriodicOrbit) {
        j["period"] = traj.period;
        j["period_prev"] = traj.period_prev;
        j["amplitude"] = traj.amplitude;
    }
    return j.dump(indent);
}

GlvSystem system_from_json(const std::string& text) {
    json j = parse(text);
    GlvSystem sys;
    sys.alpha1 = require_number(j, "alpha1");
    sys.beta1 = require_number(j, "beta1");
    sys.alpha2 = require_number(j, "alpha2");
    sys.beta2 = require_number(j, "beta2");
    sys.alpha3 = require_number(j, "alpha3");
    sys.beta3 = require_number(j, "beta3");
    sys.k1 = require_number(j, "k1");
    sys.k2 = require_number(j, "k2");
    sys.k3 = require_number(j, "k3");
    sys.k4 = require_number(j, "k4");
    if (!(sys.k1 > 0 && sys.k2 > 0 && sys.k3 > 0 && sys.k4 > 0))
        throw ValidationError("rates must be positive");
    return sys;
}

ReducedSystem reduced_from_json(const std::string& text) {
    json j = parse(text);
    auto sys = make_reduced(require_number(j, "a1"), require_number(j, "b1"),
                            require_number(j, "a3"), require_number(j, "b3"),
                            require_number(j, "k1"), require_number(j, "k2"),
                            require_number(j, "k3"), require_number(j, "k4"));
    if (!(sys.k1 > 0 && sys.k2 > 0 && sys.k3 > 0 && sys.k4 > 0))
        throw ValidationError("rates must be positive");
    return sys;
}

const char* to_string(EquilibriumResult::Kind kind) {
    switch (kind) {
    case EquilibriumResult::Kind::Unique: return "unique";
    case EquilibriumResult::Kind::InfiniteSet: return "infinite-set";
    default: return "empty";
    }
}

const char* to_string(EigenClass eigen) {
    switch (eigen) {
    case EigenClass::StableNode: return "stable-node";
    case EigenClass::StableFocus: return "stable-focus";
    case EigenClass::LinearCenter: return "linear-center";
    case EigenClass::UnstableFocus: return "unstable-focus";
    case EigenClass::UnstableNode: return "unstable-node";
    default: return "saddle";
    }
}

const char* to_string(LinearVerdict verdict) {
    switch (verdict) {
    case LinearVerdict::AsymptoticallyStable: return "AS";
    case LinearVerdict::Unstable: return "unstable";
    default: return "inconclusive";
    }
}

const char* to_string(Criticality crit) {
    switch (crit) {
    case Criticality::Supercritical: return "supercritical";
    case Criticality::Subcritical: return "subcritical";
    default: return "degenerate";
    }
}

const char* to_string(Terminal terminal) {
    switch (terminal) {
    case Terminal::Converged: return "converged";
    case Terminal::PeriodicOrbit: return "periodic-orbit";
    case Terminal::BoundaryApproach: return "boundary-approach";
    case Terminal::BlowUp: return "blow-up";
    case Terminal::HorizonReached: return "horizon-reached";
    default: return "stiff-failure";
    }
}

const char* to_string(DulacSign sign) {
    return sign == DulacSign::NegativeEverywhere ? "negative-everywhere"
                                                 : "non-positive-off-diagonal";
}

const char* to_string(DulacLocus locus) {
    switch (locus) {
    case DulacLocus::Point: return "point";
    case DulacLocus::Diagonal: return "diagonal";
    default: return "none";
    }
}

const char* to_string(DerivativeSign sign) {
    return sign == DerivativeSign::NonPositive ? "non-positive" : "non-negative";
}

} // namespace glv
