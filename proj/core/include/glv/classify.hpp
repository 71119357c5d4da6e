#pragma once

#include <string>
#include <variant>
#include <vector>

#include "glv/certificates.hpp"
#include "glv/model.hpp"

namespace glv {

enum class LocalLabel { AS, Unstable, Center, DegenerateHopf, Inconclusive };
enum class GlobalLabel { GAS, NotGAS, Undetermined };

/// FixedK judges the system as given.  AllK quantifies over every positive
/// rate tuple (k1..k4) with the exponents held fixed: a label is emitted only
/// when it holds for all of them, otherwise Inconclusive/Undetermined with
/// notes.  AllKStoichiometric restricts the rates to those a three-species
/// cycle induces; since (n k12, n k23, k23, k31) reaches every positive
/// tuple, the verdict coincides with AllK.
enum class RateScope { FixedK, AllK, AllKStoichiometric };

using CertificateRecord =
    std::variant<DulacCertificate, FirstIntegralV, LyapunovDerivativeReport,
                 InvariantSetCertificate, BoundaryCurve>;

struct StabilityVerdict {
    LocalLabel local = LocalLabel::Inconclusive;
    GlobalLabel global = GlobalLabel::Undetermined;
    RateScope scope = RateScope::FixedK;
    bool zip = false; // det C == 0: reported but not classified
    std::vector<CertificateRecord> certificates;
    std::vector<std::string> notes;
};

/// Orchestrates equilibrium, Jacobian, focal value and certificates into one
/// verdict.  Never throws on zip systems (they come back flagged instead);
/// the certificate searches that can fail leave a note rather than escaping.
StabilityVerdict classify_system(const ReducedSystem& sys,
                                 RateScope scope = RateScope::FixedK);

/// Collapsed label for parameter-plane diagrams.
enum class RegionLabel { GAS, ASNotGAS, Unstable, Center, Zip, Undetermined };

/// Closed-form classification of the two-exponent family
/// x' = x^alpha - x y^beta, y' = x y^beta - y at its equilibrium (1, 1):
/// det J = alpha beta - alpha + 1, tr J = alpha + beta - 2, and on the Hopf
/// line the focal expression is (alpha-1)^2 (alpha-2).  Global stability
/// holds exactly on {alpha <= 1, beta <= 1} minus (1,1) plus the triangle
/// {1 < alpha <= 3/2, alpha-1 <= beta <= 2-alpha}.  Boundary comparisons use
/// a 1e-13-scale tolerance so grid parameters rounded to binary doubles land
/// on the stability boundaries they name.
struct AlphaBetaPoint {
    double alpha = 0.0, beta = 0.0;
    double det_j = 0.0, trace_j = 0.0, d1 = 0.0;
    LocalLabel local = LocalLabel::Inconclusive;
    GlobalLabel global = GlobalLabel::Undetermined;
    RegionLabel region = RegionLabel::Undetermined;
};

AlphaBetaPoint classify_alpha_beta(double alpha, double beta);

/// Rectangular sweep of classify_alpha_beta, alpha varying slowest.  When
/// 1/step is an integer and the bounds are multiples of step, grid values are
/// generated as integer ratios so that half-integer parameters are exact.
std::vector<AlphaBetaPoint> region_diagram(double alpha_min, double alpha_max,
                                           double beta_min, double beta_max,
                                           double step);

const char* to_string(LocalLabel label);
const char* to_string(GlobalLabel label);
const char* to_string(RegionLabel label);
const char* to_string(RateScope scope);
const char* to_string(InvariantPattern pattern);
const char* to_string(BoundaryCase kind);

} // namespace glv
