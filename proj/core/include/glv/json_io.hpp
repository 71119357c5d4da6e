#pragma once

#include <string>

#include "glv/certificates.hpp"
#include "glv/classify.hpp"
#include "glv/equilibrium.hpp"
#include "glv/focal.hpp"
#include "glv/local_stability.hpp"
#include "glv/model.hpp"
#include "glv/simulate.hpp"

namespace glv {

/// JSON serialization for every report type.  Numbers are emitted with
/// shortest-round-trip formatting, so equal inputs produce byte-identical
/// output and doubles survive a parse unchanged.

std::string to_json(const GlvSystem& sys, int indent = 2);
std::string to_json(const ReducedSystem& sys, int indent = 2);
std::string to_json(const DancsoForm& form, int indent = 2);
std::string to_json(const EquilibriumResult& eq, int indent = 2);
std::string to_json(const JacobianReport& jac, int indent = 2);
std::string to_json(const FocalReport& focal, int indent = 2);
std::string to_json(const StabilityVerdict& verdict, int indent = 2);
std::string to_json(const AlphaBetaPoint& point, int indent = 2);
std::string to_json(const CertificateRecord& cert, int indent = 2);
/// Terminal summary only; trajectory samples go to CSV, not JSON.
std::string to_json(const Trajectory& traj, int indent = 2);

/// Parse a system back from its to_json form (ValidationError on malformed
/// input or missing fields).  Round-trips are bit-exact.
GlvSystem system_from_json(const std::string& text);
ReducedSystem reduced_from_json(const std::string& text);

const char* to_string(EquilibriumResult::Kind kind);
const char* to_string(EigenClass eigen);
const char* to_string(LinearVerdict verdict);
const char* to_string(Criticality crit);
const char* to_string(Terminal terminal);
const char* to_string(DulacSign sign);
const char* to_string(DulacLocus locus);
const char* to_string(DerivativeSign sign);

} // namespace glv
